//! Open subsets of a single fiber of `Q^2`, as finite unions of open
//! intervals, and their closures.

use serde::{Deserialize, Serialize};

use super::rational::{Bound, Rational};
use crate::error::{Error, Result};

/// Orientation of a fiber. A horizontal fiber `Q x {y}` is fixed by `y`
/// and moves along `x`; a vertical one the other way round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn orthogonal(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }

    /// The coordinate that stays fixed along a fiber of this axis.
    pub fn line_of(self, p: &Point) -> &Rational {
        match self {
            Axis::Horizontal => &p.y,
            Axis::Vertical => &p.x,
        }
    }

    /// The coordinate that moves along a fiber of this axis.
    pub fn moving(self, p: &Point) -> &Rational {
        match self {
            Axis::Horizontal => &p.x,
            Axis::Vertical => &p.y,
        }
    }

    /// The point with the given fixed and moving coordinates.
    pub fn point(self, line: &Rational, moving: &Rational) -> Point {
        match self {
            Axis::Horizontal => Point::new(moving.clone(), line.clone()),
            Axis::Vertical => Point::new(line.clone(), moving.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

/// A nonempty open interval `(lo, hi)`; serializes as `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Bound, Bound)", into = "(Bound, Bound)")]
pub struct Interval {
    lo: Bound,
    hi: Bound,
}

impl TryFrom<(Bound, Bound)> for Interval {
    type Error = Error;
    fn try_from((lo, hi): (Bound, Bound)) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for (Bound, Bound) {
    fn from(i: Interval) -> Self {
        (i.lo, i.hi)
    }
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Result<Self> {
        if lo >= hi || lo == Bound::PosInf || hi == Bound::NegInf {
            return Err(Error::InvalidParameter(format!("({lo}, {hi}) is empty")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn full() -> Self {
        Interval {
            lo: Bound::NegInf,
            hi: Bound::PosInf,
        }
    }

    /// `(center - radius, center + radius)`, `radius > 0`.
    pub fn around(center: &Rational, radius: &Rational) -> Result<Self> {
        Interval::new(
            Bound::Finite(center - radius),
            Bound::Finite(center + radius),
        )
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn contains(&self, c: &Rational) -> bool {
        self.lo.lt(c) && self.hi.gt(c)
    }

    pub fn closure_contains(&self, c: &Rational) -> bool {
        self.lo.le(c) && self.hi.ge(c)
    }

    /// Intersection, if nonempty.
    pub fn meet(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        Interval::new(lo, hi).ok()
    }
}

/// A closed interval `[lo, hi]` of `Q`; an infinite endpoint means the side
/// is unbounded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedInterval {
    pub lo: Bound,
    pub hi: Bound,
}

impl ClosedInterval {
    pub fn contains(&self, c: &Rational) -> bool {
        self.lo.le(c) && self.hi.ge(c)
    }
}

/// Sorts closed intervals and merges those that overlap or touch.
pub fn merge_closed(mut parts: Vec<ClosedInterval>) -> Vec<ClosedInterval> {
    parts.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    let mut out: Vec<ClosedInterval> = Vec::with_capacity(parts.len());
    for p in parts {
        match out.last_mut() {
            Some(last) if p.lo <= last.hi => {
                if p.hi > last.hi {
                    last.hi = p.hi;
                }
            }
            _ => out.push(p),
        }
    }
    out
}

/// Open intervals making up `Q` minus a merged, sorted list of closed
/// intervals.
pub fn complement_of_closed(closed: &[ClosedInterval]) -> Vec<Interval> {
    let mut out = Vec::with_capacity(closed.len() + 1);
    let mut lo = Bound::NegInf;
    for c in closed {
        if let Ok(i) = Interval::new(lo.clone(), c.lo.clone()) {
            out.push(i);
        }
        lo = c.hi.clone();
    }
    if let Ok(i) = Interval::new(lo, Bound::PosInf) {
        out.push(i);
    }
    out
}

/// `{ p on the fiber : moving(p) in some interval }`. Intervals are
/// nonempty, sorted and pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LinearFile", into = "LinearFile")]
pub struct LinearOpenSet {
    axis: Axis,
    line: Rational,
    intervals: Vec<Interval>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct LinearFile {
    axis: Axis,
    line_coord: Rational,
    intervals: Vec<Interval>,
}

impl TryFrom<LinearFile> for LinearOpenSet {
    type Error = Error;
    fn try_from(f: LinearFile) -> Result<Self> {
        LinearOpenSet::new(f.axis, f.line_coord, f.intervals)
    }
}

impl From<LinearOpenSet> for LinearFile {
    fn from(s: LinearOpenSet) -> Self {
        LinearFile {
            axis: s.axis,
            line_coord: s.line,
            intervals: s.intervals,
        }
    }
}

impl LinearOpenSet {
    pub fn new(axis: Axis, line: Rational, intervals: Vec<Interval>) -> Result<Self> {
        if intervals.windows(2).any(|w| w[0].hi > w[1].lo) {
            return Err(Error::InvalidParameter(
                "intervals of a linear set must be sorted and disjoint".into(),
            ));
        }
        Ok(LinearOpenSet {
            axis,
            line,
            intervals,
        })
    }

    /// The whole fiber.
    pub fn full(axis: Axis, line: Rational) -> Self {
        LinearOpenSet {
            axis,
            line,
            intervals: vec![Interval::full()],
        }
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn line(&self) -> &Rational {
        &self.line
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn on_line(&self, p: &Point) -> bool {
        self.axis.line_of(p) == &self.line
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.on_line(p) && self.contains_coord(self.axis.moving(p))
    }

    pub fn contains_coord(&self, c: &Rational) -> bool {
        let i = self.intervals.partition_point(|iv| iv.lo.lt(c));
        i > 0 && self.intervals[i - 1].contains(c)
    }

    /// Closure as merged closed intervals of the moving coordinate.
    pub fn closure(&self) -> Vec<ClosedInterval> {
        merge_closed(
            self.intervals
                .iter()
                .map(|i| ClosedInterval {
                    lo: i.lo.clone(),
                    hi: i.hi.clone(),
                })
                .collect(),
        )
    }

    pub fn closure_contains(&self, p: &Point) -> bool {
        self.on_line(p) && self.closure_contains_coord(self.axis.moving(p))
    }

    pub fn closure_contains_coord(&self, c: &Rational) -> bool {
        let i = self.intervals.partition_point(|iv| iv.lo.le(c));
        (i > 0 && self.intervals[i - 1].closure_contains(c))
            || (i > 1 && self.intervals[i - 2].closure_contains(c))
    }

    /// Points of `self` inside the open interval `window`.
    pub fn restrict(&self, window: &Interval) -> LinearOpenSet {
        LinearOpenSet {
            axis: self.axis,
            line: self.line.clone(),
            intervals: self.intervals.iter().filter_map(|i| i.meet(window)).collect(),
        }
    }

    /// Union of two sets on the same fiber.
    pub fn union(&self, other: &LinearOpenSet) -> Result<LinearOpenSet> {
        if self.axis != other.axis || self.line != other.line {
            return Err(Error::ShapeMismatch("union of sets on different fibers".into()));
        }
        let mut all: Vec<Interval> = self.intervals.iter().chain(&other.intervals).cloned().collect();
        all.sort();
        let mut out: Vec<Interval> = Vec::with_capacity(all.len());
        for i in all {
            match out.last_mut() {
                // open intervals merge only when they overlap
                Some(last) if i.lo < last.hi => {
                    if i.hi > last.hi {
                        last.hi = i.hi;
                    }
                }
                _ => out.push(i),
            }
        }
        LinearOpenSet::new(self.axis, self.line.clone(), out)
    }

    /// No point in common. Sets on different fibers of one axis are always
    /// disjoint; orthogonal sets share at most the crossing point.
    pub fn is_disjoint(&self, other: &LinearOpenSet) -> bool {
        if self.axis == other.axis {
            if self.line != other.line {
                return true;
            }
            let (a, b) = (&self.intervals, &other.intervals);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                if a[i].meet(&b[j]).is_some() {
                    return false;
                }
                if a[i].hi <= b[j].hi {
                    i += 1;
                } else {
                    j += 1;
                }
            }
            true
        } else {
            let z = self.crossing(other);
            !(self.contains(&z) && other.contains(&z))
        }
    }

    /// Where the fiber of `self` meets the orthogonal fiber of `other`.
    pub fn crossing(&self, other: &LinearOpenSet) -> Point {
        debug_assert_ne!(self.axis, other.axis);
        self.axis.point(&self.line, &other.line)
    }
}
