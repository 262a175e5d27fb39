//! Density evidence for the rank classes of the plane and the order-type
//! classes of `Q^n`, over finite horizons.

use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::construction::{KAssignment, RankTable};
use super::enumeration::{line_index, line_point, unpair};
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::report::WitnessReport;
use crate::seed::substream;

/// An open box `(lo_0, hi_0) x ... x (lo_{n-1}, hi_{n-1})`; serializes as
/// the list of `[lo, hi]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Rational, Rational)>", into = "Vec<(Rational, Rational)>")]
pub struct RationalBox {
    sides: Vec<(Rational, Rational)>,
}

impl TryFrom<Vec<(Rational, Rational)>> for RationalBox {
    type Error = Error;
    fn try_from(sides: Vec<(Rational, Rational)>) -> Result<Self> {
        RationalBox::new(sides)
    }
}

impl From<RationalBox> for Vec<(Rational, Rational)> {
    fn from(b: RationalBox) -> Self {
        b.sides
    }
}

impl RationalBox {
    pub fn new(sides: Vec<(Rational, Rational)>) -> Result<Self> {
        if sides.is_empty() || sides.iter().any(|(lo, hi)| lo >= hi) {
            return Err(Error::InvalidParameter(
                "a box needs at least one side and lo < hi on every side".into(),
            ));
        }
        Ok(RationalBox { sides })
    }

    pub fn arity(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[(Rational, Rational)] {
        &self.sides
    }

    pub fn contains(&self, point: &[&Rational]) -> bool {
        point.len() == self.sides.len()
            && self
                .sides
                .iter()
                .zip(point)
                .all(|((lo, hi), x)| lo < *x && *x < hi)
    }
}

/// `count` boxes inside `(-3, 3)^arity` with sides on the grid of eighths,
/// each side between `1/2` and `3/2` long.
pub fn seeded_boxes(count: usize, arity: usize, seed: u64) -> Vec<RationalBox> {
    let mut rng = substream(seed, "boxes", arity as u64);
    (0..count)
        .map(|_| {
            let sides = (0..arity)
                .map(|_| {
                    let w: i64 = rng.gen_range(4..=12);
                    let lo: i64 = rng.gen_range(-24..=24 - w);
                    (
                        Rational::new(lo, 8).expect("nonzero"),
                        Rational::new(lo + w, 8).expect("nonzero"),
                    )
                })
                .collect();
            RationalBox::new(sides).expect("w > 0")
        })
        .collect()
}

/// Maps ranks to class ids; every class must be hit by infinitely many
/// ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassSelector {
    /// First coordinate of the inverse Cantor pairing of the rank.
    #[default]
    CantorFirst,
    /// Rank modulo `k`.
    Modulo(usize),
}

impl ClassSelector {
    pub fn class_of(&self, rank: usize) -> usize {
        match *self {
            ClassSelector::CantorFirst => unpair(rank as u64).0 as usize,
            ClassSelector::Modulo(k) => rank % k.max(1),
        }
    }

    /// Least rank mapped to `class`.
    pub fn first_rank_of(&self, class: usize) -> usize {
        (0..).find(|&r| self.class_of(r) == class).expect("infinite fibers")
    }
}

impl FromStr for ClassSelector {
    type Err = Error;
    /// `cantor` or `mod:<k>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "cantor" => Ok(ClassSelector::CantorFirst),
            Some(("mod", k)) => match k.parse() {
                Ok(k) if k > 0 => Ok(ClassSelector::Modulo(k)),
                _ => Err(Error::Parse(format!("selector `{s}`: expected mod:<k> with k >= 1"))),
            },
            _ => Err(Error::Parse(format!("unknown selector `{s}`"))),
        }
    }
}

/// Rank of a permutation of `0..n` in lexicographic order.
pub fn lehmer_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Inverse of [`lehmer_rank`].
pub fn permutation_of_rank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The permutation `f` with `alpha_{f(0)} < ... < alpha_{f(n-1)}`, by
/// [`lehmer_rank`], or `None` when two indices coincide.
pub fn order_type_of<T: Ord>(alpha: &[T]) -> Option<usize> {
    let mut f: Vec<usize> = (0..alpha.len()).collect();
    f.sort_by(|&a, &b| alpha[a].cmp(&alpha[b]));
    if f.windows(2).any(|w| alpha[w[0]] == alpha[w[1]]) {
        return None;
    }
    Some(lehmer_rank(&f))
}

/// Order-type class of a point of `Q^n` under the line enumeration.
pub fn order_type_class(point: &[Rational]) -> Option<usize> {
    let alpha: Vec<BigUint> = point.iter().map(line_index).collect();
    order_type_of(&alpha)
}

/// Minimal witnessing index of every (box, class) pair, or `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitTable {
    pub first: Vec<Vec<Option<usize>>>,
}

impl HitTable {
    fn new(boxes: usize, classes: usize) -> Self {
        HitTable {
            first: vec![vec![None; classes]; boxes],
        }
    }

    fn record(&mut self, b: usize, class: usize, n: usize) {
        if let Some(slot) = self.first[b].get_mut(class) {
            slot.get_or_insert(n);
        }
    }

    pub fn misses(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (b, row) in self.first.iter().enumerate() {
            for (k, hit) in row.iter().enumerate() {
                if hit.is_none() {
                    out.push((b, k));
                }
            }
        }
        out
    }

    fn into_report(self, mut report: WitnessReport) -> WitnessReport {
        for (b, k) in self.misses() {
            report.fail(
                "miss",
                format!("class {k} has no point in box {b}"),
                json!({ "box": b, "class": k }),
            );
        }
        report.artifact("firstHit", &self.first);
        report
    }
}

/// For each box and rank class `< classes`, the least `n < horizon` with
/// `p_n` in the box and `sel(rank(p_n))` equal to the class. Also records
/// the largest rank seen per box.
pub fn density_audit(
    ka: &KAssignment,
    rt: &RankTable,
    sel: ClassSelector,
    boxes: &[RationalBox],
    classes: usize,
    horizon: usize,
) -> Result<WitnessReport> {
    if horizon > ka.entries.len() || rt.rank.len() < horizon {
        return Err(Error::InvalidParameter(format!(
            "horizon {horizon} exceeds the construction ({} points)",
            ka.entries.len()
        )));
    }
    if let Some(b) = boxes.iter().find(|b| b.arity() != 2) {
        return Err(Error::ShapeMismatch(format!("box of arity {} in the plane", b.arity())));
    }
    let mut hits = HitTable::new(boxes.len(), classes);
    let mut max_rank: Vec<Option<usize>> = vec![None; boxes.len()];
    for e in &ka.entries[..horizon] {
        let p = [&e.point.x, &e.point.y];
        let r = rt.rank[e.n];
        for (b, bx) in boxes.iter().enumerate() {
            if bx.contains(&p) {
                hits.record(b, sel.class_of(r), e.n);
                max_rank[b] = max_rank[b].max(Some(r));
            }
        }
    }
    let mut report = WitnessReport::new();
    report.artifact("mode", "ktree");
    report.artifact("selector", sel);
    report.artifact("classes", classes);
    report.artifact("horizon", horizon);
    report.artifact("maxRank", &max_rank);
    Ok(hits.into_report(report))
}

/// Largest rank inside each box among the first `n` points, for each `n` of
/// `schedule`.
pub fn max_rank_schedule(
    ka: &KAssignment,
    rt: &RankTable,
    boxes: &[RationalBox],
    schedule: &[usize],
) -> Vec<Vec<Option<usize>>> {
    schedule
        .iter()
        .map(|&h| {
            let h = h.min(ka.entries.len());
            boxes
                .iter()
                .map(|bx| {
                    ka.entries[..h]
                        .iter()
                        .filter(|e| bx.contains(&[&e.point.x, &e.point.y]))
                        .map(|e| rt.rank[e.n])
                        .max()
                })
                .collect()
        })
        .collect()
}

/// For each box `U_0 x ... x U_{n-1}` of `Q^arity` and each permutation
/// `f`, chooses line indices `alpha_{f(0)} < ... < alpha_{f(n-1)}` below
/// `horizon` with `q(alpha_{f(k)}) ∈ U_{f(k)}`, each as small as possible.
/// The recorded hit is `alpha_{f(n-1)}`, the least possible largest index
/// of a witness.
pub fn order_type_audit(arity: usize, boxes: &[RationalBox], horizon: usize) -> Result<WitnessReport> {
    if arity == 0 {
        return Err(Error::InvalidParameter("arity must be at least 1".into()));
    }
    if let Some(b) = boxes.iter().find(|b| b.arity() != arity) {
        return Err(Error::ShapeMismatch(format!(
            "box of arity {} for tuples of arity {arity}",
            b.arity()
        )));
    }
    let classes = factorial(arity);
    let line: Vec<Rational> = (0..horizon as u64).map(line_point).collect();
    let mut hits = HitTable::new(boxes.len(), classes);
    let mut witnesses: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; classes]; boxes.len()];
    for (b, bx) in boxes.iter().enumerate() {
        // ascending line indices inside each side
        let inside: Vec<Vec<usize>> = bx
            .sides()
            .iter()
            .map(|(lo, hi)| (0..horizon).filter(|&i| lo < &line[i] && &line[i] < hi).collect())
            .collect();
        for class in 0..classes {
            let f = permutation_of_rank(arity, class);
            let mut alpha = vec![0usize; arity];
            let mut floor = 0usize;
            let mut ok = true;
            for &side in &f {
                let list = &inside[side];
                match list.get(list.partition_point(|&i| i < floor)) {
                    Some(&i) => {
                        alpha[side] = i;
                        floor = i + 1;
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                debug_assert_eq!(order_type_of(&alpha), Some(class));
                hits.record(b, class, floor - 1);
                witnesses[b][class] = Some(alpha);
            }
        }
    }
    let mut report = WitnessReport::new();
    report.artifact("mode", "ordertype");
    report.artifact("arity", arity);
    report.artifact("classes", classes);
    report.artifact("horizon", horizon);
    report.artifact("witness", &witnesses);
    Ok(hits.into_report(report))
}
