//! Property tests against the brute-force oracles in `common`.

mod common;

use common::{breakable, covers, monochromatic, naive_thick, naive_witness, subsets};
use proptest::prelude::*;
use thicket::breakers::{break_with_fallback, kuratowski_break, SubsetFamily};
use thicket::core_lemma::{assemble_tau, FamilyEnumeration};
use thicket::grid::{is_thick, lift_by_cofinality, restrict, BlockMap, CellSet, GridColoring, ThickSpec};
use thicket::ramsey::{ramsey_extract, PairColoring};

fn cell_set(rows: usize, cols: usize, bits: u32) -> CellSet {
    CellSet::from_fn(rows, cols, |r, c| bits >> (r * cols + c) & 1 == 1).unwrap()
}

fn grid_and_bits() -> impl Strategy<Value = (usize, usize, u32)> {
    (1usize..=5, 1usize..=5, any::<u32>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn thickness_matches_naive((rows, cols, bits) in grid_and_bits(), mu in 0usize..=4, nu in 0usize..=4) {
        let set = cell_set(rows, cols, bits);
        let got = is_thick(&set, ThickSpec::new(mu, nu));
        let want = naive_witness(rows, cols, mu, nu, |r, c| set.contains(r, c));
        prop_assert_eq!(got.witness().map(|w| (w.rows.clone(), w.cols.clone())), want);
    }

    #[test]
    fn thick_iff_complement_has_no_full_rectangle((rows, cols, bits) in grid_and_bits(), mu in 1usize..=3, nu in 1usize..=3) {
        let set = cell_set(rows, cols, bits);
        let comp = set.complement();
        let full_rect_in_complement = subsets(rows, mu).iter().any(|m| {
            subsets(cols, nu).iter().any(|n| m.iter().all(|&r| n.iter().all(|&c| comp.contains(r, c))))
        });
        prop_assert_eq!(is_thick(&set, ThickSpec::new(mu, nu)).is_thick(), !full_rect_in_complement);
    }

    #[test]
    fn monotone_under_superset_and_parameters(
        (rows, cols, bits) in grid_and_bits(),
        extra in any::<u32>(),
        mu in 1usize..=3, nu in 1usize..=3, dmu in 0usize..=2, dnu in 0usize..=2,
    ) {
        let set = cell_set(rows, cols, bits);
        let bigger = cell_set(rows, cols, bits | extra);
        if is_thick(&set, ThickSpec::new(mu, nu)).is_thick() {
            prop_assert!(is_thick(&bigger, ThickSpec::new(mu + dmu, nu + dnu)).is_thick());
        }
    }

    #[test]
    fn monotone_under_restriction((rows, cols, bits) in grid_and_bits(), rmask in any::<u8>(), cmask in any::<u8>(), mu in 1usize..=3, nu in 1usize..=3) {
        let set = cell_set(rows, cols, bits);
        let sub_rows: Vec<usize> = (0..rows).filter(|r| rmask >> r & 1 == 1).collect();
        let sub_cols: Vec<usize> = (0..cols).filter(|c| cmask >> c & 1 == 1).collect();
        let sub = restrict(&set, &sub_rows, &sub_cols).unwrap();
        for (i, &r) in sub_rows.iter().enumerate() {
            for (j, &c) in sub_cols.iter().enumerate() {
                prop_assert_eq!(sub.contains(i, j), set.contains(r, c));
            }
        }
        if is_thick(&set, ThickSpec::new(mu, nu)).is_thick() {
            prop_assert!(is_thick(&sub, ThickSpec::new(mu, nu)).is_thick());
        }
    }

    #[test]
    fn lift_keeps_thickness(
        m in 1usize..=4, c in 1usize..=3, p in 1usize..=3,
        classes in prop::collection::vec(0usize..3, 12),
        assign in prop::collection::vec(0usize..3, 1..=6),
    ) {
        let assign: Vec<usize> = assign.iter().map(|b| b % c).collect();
        prop_assume!((0..c).all(|b| assign.contains(&b)));
        let l = assign.len();
        let source = GridColoring::from_fn(m, c, p, |r, j| classes[r * 3 + j] % p).unwrap();
        let blocks: Vec<Vec<usize>> = (0..c).map(|b| (0..l).filter(|&j| assign[j] == b).collect()).collect();
        let map = BlockMap::new(l, blocks).unwrap();
        let lifted = lift_by_cofinality(&source, &map).unwrap();
        for a in 0..m {
            for j in 0..l {
                prop_assert_eq!(lifted.get(a, j), source.get(a, assign[j]));
            }
        }
        for k in 0..p {
            let src = |r: usize, j: usize| source.get(r, j) == Some(k);
            let dst = |r: usize, j: usize| lifted.get(r, j) == Some(k);
            for mu in 1..=m {
                if naive_thick(m, c, mu, c, src) {
                    prop_assert!(naive_thick(m, l, mu, l, dst));
                }
                for nu in 1..=c {
                    if naive_thick(m, c, mu, nu, src) {
                        prop_assert!(naive_thick(m, l, mu, map.graded_width(nu), dst));
                    }
                }
            }
        }
    }

    #[test]
    fn kuratowski_covers_when_members_are_large(
        n in 1usize..=5, t in 1usize..=5, seed in any::<u64>(),
    ) {
        prop_assume!(t <= n);
        let size = n * n.max(t);
        let universe = 64;
        let sets: Vec<Vec<usize>> = (0..n as u64)
            .map(|i| {
                let mut s: Vec<usize> = (0..universe).collect();
                s.sort_by_key(|&x| thicket::seed::mix64(seed ^ (i << 32) ^ x as u64));
                s.truncate(size);
                s.sort_unstable();
                s
            })
            .collect();
        let fam = SubsetFamily::new(universe, sets.clone()).unwrap();
        let f = kuratowski_break(&fam, t).unwrap();
        for s in &sets {
            prop_assert!(covers(f.values(), s, t));
        }
    }

    #[test]
    fn fallback_breaker_is_complete(
        universe in 1usize..=6, depth in 1usize..=3,
        masks in prop::collection::vec(1u8..64, 1..=5),
    ) {
        let sets: Vec<Vec<usize>> = masks
            .iter()
            .map(|m| (0..universe).filter(|x| m >> x & 1 == 1).collect::<Vec<_>>())
            .filter(|s| !s.is_empty())
            .collect();
        prop_assume!(!sets.is_empty());
        let fam = SubsetFamily::new(universe, sets.clone()).unwrap();
        let oracle = breakable(universe, &sets, depth, depth);
        match break_with_fallback(&fam, depth, depth, 1_000_000) {
            Ok(f) => {
                prop_assert!(oracle);
                for s in &sets {
                    prop_assert!(covers(f.values(), s, depth));
                }
            }
            Err(_) => prop_assert!(!oracle),
        }
    }

    #[test]
    fn ramsey_extraction_is_monochromatic_and_large(
        m in 2usize..=40, c in 1usize..=3, entries in prop::collection::vec(0usize..3, 40 * 40),
    ) {
        let color = |i: usize, j: usize| entries[i.min(j) * 40 + i.max(j)] % c;
        let f = PairColoring::new(m, c, color);
        let ex = ramsey_extract(&f).unwrap();
        prop_assert!(monochromatic(&ex.set, ex.color, color));
        // smallest t with c^t >= m, then ceil(t / c)
        let mut t: usize = 0;
        while c > 1 && c.pow(t as u32) < m {
            t += 1;
        }
        let bound = if c <= 1 { m } else { t.div_ceil(c) };
        prop_assert!(ex.set.len() >= bound.max(1));
        prop_assert!(ex.set.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tau_assembly_meets_every_member_on_late_columns(
        m in 4usize..=7, columns in 1usize..=4, tau in 1usize..=2, count in 1usize..=6, seed in any::<u64>(),
    ) {
        let mu = m - 1;
        let fam = FamilyEnumeration::sampled(m, mu, count.min(m), seed).unwrap();
        let (coloring, schedule) = assemble_tau(&fam, columns, tau, None).unwrap();
        for (gamma, member) in fam.members().iter().enumerate() {
            for beta in 0..columns {
                if schedule.thresholds[beta] <= gamma {
                    continue;
                }
                for class in 0..tau {
                    prop_assert!(member.iter().any(|&a| coloring.get(a, beta) == Some(class)),
                        "class {} misses member {} in column {}", class, gamma, beta);
                }
            }
        }
    }
}

#[test]
fn checkerboard_witness_matches_naive() {
    let set = CellSet::from_fn(4, 4, |r, c| (r + c) % 2 == 0).unwrap();
    let w = is_thick(&set, ThickSpec::new(2, 2));
    let naive = naive_witness(4, 4, 2, 2, |r, c| set.contains(r, c)).unwrap();
    assert_eq!(naive, (vec![0, 2], vec![1, 3]));
    let w = w.witness().unwrap();
    assert_eq!((w.rows.clone(), w.cols.clone()), naive);
}

#[test]
fn uniform_blocks_graded_bound_exhaustive() {
    // every 2-coloring of [3] x [2] lifted through uniform blocks of size s
    for bits in 0u32..1 << 6 {
        let source = GridColoring::from_fn(3, 2, 2, |r, c| (bits >> (r * 2 + c) & 1) as usize).unwrap();
        for s in 1..=3 {
            let map = BlockMap::uniform(2, s).unwrap();
            let lifted = lift_by_cofinality(&source, &map).unwrap();
            for k in 0..2 {
                for mu in 1..=3 {
                    for nu in 1..=2 {
                        let src = naive_thick(3, 2, mu, nu, |r, c| source.get(r, c) == Some(k));
                        let dst = naive_thick(3, 2 * s, mu, s * (nu - 1) + 1, |r, c| lifted.get(r, c) == Some(k));
                        assert!(!src || dst, "bits={bits} s={s} k={k} mu={mu} nu={nu}");
                    }
                }
            }
        }
    }
}
