//! Brute-force oracles shared by the integration tests and the acceptance
//! harness. Nothing here calls into the library's algorithms.

#![allow(dead_code)]

/// All `k`-subsets of `0..n`, each ascending, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Least `(M, N)` with `|M| = mu`, `|N| = nu` and no cell of `M x N` in the
/// set, scanning `M` then `N` lexicographically. `None` when thick.
pub fn naive_witness(
    rows: usize,
    cols: usize,
    mu: usize,
    nu: usize,
    has: impl Fn(usize, usize) -> bool,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let col_sets = subsets(cols, nu);
    for m in subsets(rows, mu) {
        for n in &col_sets {
            if !m.iter().any(|&r| n.iter().any(|&c| has(r, c))) {
                return Some((m, n.clone()));
            }
        }
    }
    None
}

pub fn naive_thick(rows: usize, cols: usize, mu: usize, nu: usize, has: impl Fn(usize, usize) -> bool) -> bool {
    naive_witness(rows, cols, mu, nu, has).is_none()
}

/// Every class of `cells` (row-major, side `m`) meets every `mu x nu` rectangle.
pub fn all_classes_thick(cells: &[usize], m: usize, mu: usize, nu: usize, p: usize) -> bool {
    let rows = subsets(m, mu);
    let cols = subsets(m, nu);
    for rs in &rows {
        for cs in &cols {
            let mut seen = vec![false; p];
            for &r in rs {
                for &c in cs {
                    seen[cells[r * m + c]] = true;
                }
            }
            if seen.contains(&false) {
                return false;
            }
        }
    }
    true
}

/// Walks all `p^(m*m)` colorings of `[m] x [m]`; returns one whose classes
/// are all `(mu, nu)`-thick, if any.
pub fn naive_partition(m: usize, mu: usize, nu: usize, p: usize) -> Option<Vec<usize>> {
    let n = m * m;
    let mut cells = vec![0usize; n];
    loop {
        if all_classes_thick(&cells, m, mu, nu, p) {
            return Some(cells);
        }
        let mut i = 0;
        while i < n && cells[i] == p - 1 {
            cells[i] = 0;
            i += 1;
        }
        if i == n {
            return None;
        }
        cells[i] += 1;
    }
}

/// Exact minimum size of a `(mu, nu)`-thick subset of `[m] x [m]`.
pub fn min_thick_brute(m: usize, mu: usize, nu: usize) -> usize {
    let n = m * m;
    let thick = |s: u32| naive_thick(m, m, mu, nu, |r, c| s >> (r * m + c) & 1 == 1);
    (0u32..1 << n).filter(|&s| thick(s)).map(u32::count_ones).min().unwrap() as usize
}

/// Does `set` see every value `0..t` under `f`?
pub fn covers(f: &[usize], set: &[usize], t: usize) -> bool {
    (0..t).all(|v| set.iter().any(|&x| f[x] == v))
}

/// Is some function `0..universe -> 0..range` covering `0..depth` on every
/// member? Tries all `range^universe` functions.
pub fn breakable(universe: usize, sets: &[Vec<usize>], depth: usize, range: usize) -> bool {
    let mut f = vec![0usize; universe];
    loop {
        if sets.iter().all(|s| covers(&f, s, depth)) {
            return true;
        }
        let mut i = 0;
        while i < universe && f[i] == range - 1 {
            f[i] = 0;
            i += 1;
        }
        if i == universe {
            return false;
        }
        f[i] += 1;
    }
}

/// Every pair of `set` has color `color` under `f`.
pub fn monochromatic(set: &[usize], color: usize, f: impl Fn(usize, usize) -> usize) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &a)| set[i + 1..].iter().all(|&b| f(a, b) == color))
}
