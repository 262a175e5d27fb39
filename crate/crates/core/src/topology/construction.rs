//! Crowded linear sets `K(p_n)` over the enumerated plane, their pairwise
//! conditions, and the rank of each point.
//!
//! For every `m < n`:
//! 1. collinear `K(p_m)`, `K(p_n)` are disjoint;
//! 2. orthogonal ones have closures meeting in `{p_n}` or nowhere.
//!
//! `K(p_n)` lives on a fiber `L` through `p_n`, orthogonal to every earlier
//! `K` whose closure holds `p_n` (horizontal when there is none). Earlier
//! sets on `L` are cut out with their closures; an orthogonal earlier set
//! whose closure crosses `L` at `z != p_n` restricts `K(p_n)` to the open
//! interval around `p_n` of radius `|z - p_n| / 2`.

use std::collections::{BTreeSet, HashMap};
use std::ops::Bound as RangeBound;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::enumeration::grid_point;
use super::linear::{complement_of_closed, merge_closed, Axis, ClosedInterval, Interval, LinearOpenSet, Point};
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::report::WitnessReport;

/// A constraint `O_i(p_n)` imposed by an earlier set `K(p_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Constraint {
    /// `K(p_i)` lies on `L`; `L` minus its closure.
    SameFiber { from: usize },
    /// `K(p_i)` is orthogonal to `L` with closure crossing it at moving
    /// coordinate `crossing`.
    Window {
        from: usize,
        crossing: Rational,
        radius: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Provenance {
    pub fiber: Axis,
    /// Earlier sets whose closure holds `p_n`.
    pub closure_of: Vec<usize>,
    /// Every same-fiber constraint, and the tightest window. Windows are
    /// concentric at `p_n`, so the tightest one is their intersection.
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KEntry {
    pub n: usize,
    pub point: Point,
    pub set: LinearOpenSet,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KAssignment {
    pub horizon: usize,
    pub entries: Vec<KEntry>,
}

/// Intervals of all sets on each fiber, sorted by lower end, with owners.
#[derive(Default)]
struct FiberIndex {
    fibers: HashMap<(Axis, Rational), Vec<(Interval, usize)>>,
    /// Fixed coordinates of occupied fibers, per axis.
    coords: [BTreeSet<Rational>; 2],
}

fn slot(axis: Axis) -> usize {
    match axis {
        Axis::Horizontal => 0,
        Axis::Vertical => 1,
    }
}

impl FiberIndex {
    fn insert(&mut self, set: &LinearOpenSet, owner: usize) {
        let key = (set.axis(), set.line().clone());
        let list = self.fibers.entry(key).or_default();
        for iv in set.intervals() {
            let at = list.partition_point(|(i, _)| i.lo() < iv.lo());
            list.insert(at, (iv.clone(), owner));
        }
        self.coords[slot(set.axis())].insert(set.line().clone());
    }

    fn fiber(&self, axis: Axis, line: &Rational) -> &[(Interval, usize)] {
        self.fibers
            .get(&(axis, line.clone()))
            .map_or(&[], |v| v.as_slice())
    }

    /// Owners of sets on the fiber whose closure holds moving coordinate `c`.
    fn closure_owners(&self, axis: Axis, line: &Rational, c: &Rational) -> Vec<usize> {
        let list = self.fiber(axis, line);
        let i = list.partition_point(|(iv, _)| iv.lo().le(c));
        let mut out: Vec<usize> = list[i.saturating_sub(2)..i]
            .iter()
            .filter(|(iv, _)| iv.closure_contains(c))
            .map(|&(_, o)| o)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Owner of the set on the fiber containing moving coordinate `c`.
    fn open_owner(&self, axis: Axis, line: &Rational, c: &Rational) -> Option<usize> {
        let list = self.fiber(axis, line);
        let i = list.partition_point(|(iv, _)| iv.lo().lt(c));
        (i > 0 && list[i - 1].0.contains(c)).then(|| list[i - 1].1)
    }

    /// Nearest fiber of `axis` (fixed coordinate `!= c`) whose sets' closure
    /// crosses the orthogonal fiber at `cross`, on each side of `c`.
    fn nearest_crossings(&self, axis: Axis, c: &Rational, cross: &Rational) -> Vec<(Rational, usize)> {
        let coords = &self.coords[slot(axis)];
        let mut out = Vec::new();
        let below = coords.range((RangeBound::Unbounded, RangeBound::Excluded(c))).rev();
        let above = coords.range((RangeBound::Excluded(c), RangeBound::Unbounded));
        for side in [Box::new(below) as Box<dyn Iterator<Item = &Rational>>, Box::new(above)] {
            for a in side {
                if let Some(&o) = self.closure_owners(axis, a, cross).first() {
                    out.push((a.clone(), o));
                    break;
                }
            }
        }
        out
    }
}

/// Runs the construction for `p_0, ..., p_{horizon-1}`.
pub fn build_k_assignment(horizon: usize) -> Result<KAssignment> {
    if horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    let mut index = FiberIndex::default();
    let mut entries = Vec::with_capacity(horizon);
    for n in 0..horizon {
        let (x, y) = grid_point(n as u64);
        let p = Point::new(x, y);
        let in_h = index.closure_owners(Axis::Horizontal, &p.y, &p.x);
        let in_v = index.closure_owners(Axis::Vertical, &p.x, &p.y);
        if !in_h.is_empty() && !in_v.is_empty() {
            return Err(Error::InvariantBreach(format!(
                "p_{n} lies in the closures of orthogonal sets {in_h:?} and {in_v:?}"
            )));
        }
        let fiber = if in_h.is_empty() { Axis::Horizontal } else { Axis::Vertical };
        let mut closure_of = in_h;
        closure_of.extend(in_v);

        let line = fiber.line_of(&p).clone();
        let c = fiber.moving(&p).clone();
        let same = index.fiber(fiber, &line);
        let mut constraints: Vec<Constraint> = Vec::new();
        let mut owners: Vec<usize> = same.iter().map(|&(_, o)| o).collect();
        owners.sort_unstable();
        owners.dedup();
        for &from in &owners {
            constraints.push(Constraint::SameFiber { from });
        }
        let closed = merge_closed(
            same.iter()
                .map(|(iv, _)| ClosedInterval {
                    lo: iv.lo().clone(),
                    hi: iv.hi().clone(),
                })
                .collect(),
        );
        if closed.iter().any(|ci| ci.contains(&c)) {
            return Err(Error::InvariantBreach(format!(
                "p_{n} lies in the closure of a set on its own fiber"
            )));
        }
        let mut k = LinearOpenSet::new(fiber, line.clone(), complement_of_closed(&closed))?;

        let mut window: Option<(Rational, usize, Rational)> = None;
        for (a, from) in index.nearest_crossings(fiber.orthogonal(), &c, &line) {
            let radius = (&a - &c).abs().half();
            let better = match &window {
                None => true,
                Some((_, f, r)) => radius < *r || (radius == *r && from < *f),
            };
            if better {
                window = Some((a, from, radius));
            }
        }
        if let Some((crossing, from, radius)) = window {
            k = k.restrict(&Interval::around(&c, &radius)?);
            constraints.push(Constraint::Window {
                from,
                crossing,
                radius,
            });
        }
        if !k.contains(&p) {
            return Err(Error::InvariantBreach(format!("p_{n} is not in K(p_{n})")));
        }
        index.insert(&k, n);
        entries.push(KEntry {
            n,
            point: p,
            set: k,
            provenance: Provenance {
                fiber,
                closure_of,
                constraints,
            },
        });
    }
    Ok(KAssignment { horizon, entries })
}

/// Checks `p_n ∈ K(p_n)` and conditions (1) and (2) for every pair
/// `m < n`, directly on the stored sets. Stops at the first violation.
pub fn verify_k_conditions(ka: &KAssignment) -> WitnessReport {
    let mut report = WitnessReport::new();
    let e = &ka.entries;
    let mut pairs = 0u64;
    'outer: for n in 0..e.len() {
        if e[n].n != n || !e[n].set.contains(&e[n].point) {
            report.fail(
                "membership",
                format!("p_{n} is not in K(p_{n})"),
                json!({ "n": n }),
            );
            break;
        }
        for m in 0..n {
            pairs += 1;
            let (a, b) = (&e[m].set, &e[n].set);
            if a.axis() == b.axis() {
                if !a.is_disjoint(b) {
                    report.fail(
                        "condition-1",
                        format!("collinear K(p_{m}) and K(p_{n}) intersect"),
                        json!({ "m": m, "n": n }),
                    );
                    break 'outer;
                }
            } else {
                let z = a.crossing(b);
                if a.closure_contains(&z) && b.closure_contains(&z) && z != e[n].point {
                    report.fail(
                        "condition-2",
                        format!("closures of K(p_{m}) and K(p_{n}) meet off p_{n}"),
                        json!({ "m": m, "n": n, "at": z }),
                    );
                    break 'outer;
                }
            }
        }
    }
    report.stat("pairs", pairs);
    report.stat("horizon", ka.horizon);
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTable {
    pub horizon: usize,
    pub rank: Vec<usize>,
    pub predecessor: Vec<Option<usize>>,
}

impl RankTable {
    pub fn max_rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }
}

/// For each `n`, the unique `b != n` with `p_n ∈ K(p_b)`, and the length of
/// the chain of such predecessors.
pub fn rank_table(ka: &KAssignment) -> Result<RankTable> {
    let mut index = FiberIndex::default();
    for e in &ka.entries {
        index.insert(&e.set, e.n);
    }
    let mut rank = Vec::with_capacity(ka.entries.len());
    let mut predecessor = Vec::with_capacity(ka.entries.len());
    for e in &ka.entries {
        let p = &e.point;
        let found: Vec<usize> = [
            index.open_owner(Axis::Horizontal, &p.y, &p.x),
            index.open_owner(Axis::Vertical, &p.x, &p.y),
        ]
        .into_iter()
        .flatten()
        .filter(|&b| b != e.n)
        .collect();
        let pred = match found[..] {
            [] => None,
            [b] => Some(b),
            [first, second, ..] => {
                return Err(Error::UniquenessBreach {
                    point: e.n,
                    first,
                    second,
                })
            }
        };
        let r = match pred {
            None => 0,
            Some(b) if b < e.n => rank[b] + 1,
            Some(b) => {
                return Err(Error::InvariantBreach(format!(
                    "predecessor {b} of p_{} has a larger index",
                    e.n
                )))
            }
        };
        rank.push(r);
        predecessor.push(pred);
    }
    Ok(RankTable {
        horizon: ka.horizon,
        rank,
        predecessor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sets() {
        let ka = build_k_assignment(3).unwrap();
        let k0 = &ka.entries[0];
        assert_eq!(k0.point, Point::new(Rational::zero(), Rational::zero()));
        assert_eq!(k0.set, LinearOpenSet::full(Axis::Horizontal, Rational::zero()));
    }

    #[test]
    fn small_horizon_is_sound() {
        let ka = build_k_assignment(300).unwrap();
        let report = verify_k_conditions(&ka);
        assert!(report.pass(), "{:?}", report.first_violation());
        let rt = rank_table(&ka).unwrap();
        assert_eq!(rt.rank[0], 0);
        for (n, p) in rt.predecessor.iter().enumerate() {
            if let Some(b) = *p {
                assert!(b < n);
                assert_eq!(rt.rank[n], rt.rank[b] + 1);
                // the predecessor really contains the point, and nothing later does
                assert!(ka.entries[b].set.contains(&ka.entries[n].point));
            }
            for m in 0..n {
                assert!(!ka.entries[n].set.contains(&ka.entries[m].point));
            }
        }
    }

    #[test]
    fn single_point_is_vacuous() {
        assert!(verify_k_conditions(&build_k_assignment(1).unwrap()).pass());
        assert!(build_k_assignment(0).is_err());
    }
}
