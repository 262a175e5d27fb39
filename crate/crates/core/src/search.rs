//! Complete search for partitions of `[m] x [m]` into `p` classes that are
//! each `(mu, nu)`-thick.
//!
//! Cells are assigned row-major with ascending class ids. Every rectangle
//! `M x N` keeps the number of classes it still misses and the number of its
//! undecided cells; a rectangle missing more classes than it has undecided
//! cells fails the branch. Globally, every class needs at least
//! [`min_thick_size`] cells, and a branch fails once the classes' combined
//! shortfall exceeds the undecided cells.
//!
//! Row, column and class-relabelling symmetries are broken by requiring rows
//! and columns in nondecreasing lexicographic order and classes to first
//! appear in increasing order. The lexicographically
//! least coloring of any orbit satisfies all three at once, so no orbit is
//! lost.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::combin::{bits_of, colex_masks};
use crate::error::{Error, Result};
use crate::grid::{is_thick, GridColoring, ThickSpec};
use crate::report::WitnessReport;

/// Largest supported grid side.
pub const MAX_SIDE: usize = 8;

/// Default node budget of a single [`solve`] call.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchProblem {
    pub m: usize,
    pub mu: usize,
    pub nu: usize,
    pub p: usize,
}

impl SearchProblem {
    pub fn new(m: usize, mu: usize, nu: usize, p: usize) -> Result<Self> {
        let prob = SearchProblem { m, mu, nu, p };
        prob.validate()?;
        Ok(prob)
    }

    pub fn validate(&self) -> Result<()> {
        let SearchProblem { m, mu, nu, p } = *self;
        if m == 0 || p == 0 || mu == 0 || nu == 0 || mu > m || nu > m {
            return Err(Error::InvalidParameter(format!(
                "need m >= 1, p >= 1 and 1 <= mu, nu <= m (got m={m}, mu={mu}, nu={nu}, p={p})"
            )));
        }
        if m > MAX_SIDE {
            return Err(Error::TooLarge { size: m, max: MAX_SIDE });
        }
        Ok(())
    }

    pub fn spec(&self) -> ThickSpec {
        ThickSpec::new(self.mu, self.nu)
    }
}

/// Lower bound on the size of a `(mu, nu)`-thick subset of `[m] x [m]`.
///
/// Any `mu` rows of a thick set `E` cover at least `s = m - nu + 1` columns
/// between them, otherwise `nu` uncovered columns give a missed rectangle.
/// So the `mu` sparsest rows hold at least `s` cells, the sparsest of them
/// at least `ceil(s / mu)` is exceeded by none of the others, and
/// `|E| >= s + (m - mu) * ceil(s / mu)`. The same holds with rows and
/// columns exchanged.
pub fn min_thick_size(m: usize, mu: usize, nu: usize) -> usize {
    let by_rows = |mu: usize, nu: usize| {
        let s = m + 1 - nu;
        s + (m - mu) * s.div_ceil(mu)
    };
    by_rows(mu, nu).max(by_rows(nu, mu))
}

/// Largest `p` not excluded by rectangle size or by [`min_thick_size`].
pub fn class_count_bound(m: usize, mu: usize, nu: usize) -> usize {
    (mu * nu).min(m * m / min_thick_size(m, mu, nu))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "SAT")]
    Sat,
    #[serde(rename = "UNSAT")]
    Unsat,
    #[serde(rename = "budget-exceeded")]
    BudgetExceeded,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Sat => "SAT",
            Status::Unsat => "UNSAT",
            Status::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Class assignments attempted.
    pub nodes: u64,
    /// Assignments refuted by propagation.
    pub prunes: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.prunes += other.prunes;
    }
}

/// Result of [`solve`]. The wall time is kept out of serialized reports so
/// that reruns are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub problem: SearchProblem,
    pub status: Status,
    pub certificate: Option<GridColoring>,
    pub stats: SearchStats,
    #[serde(skip)]
    pub wall: Duration,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Solver {
    m: usize,
    p: usize,
    budget: u64,
    rects_of: Vec<Vec<u32>>,
    cover: Vec<u16>,
    missing: Vec<u16>,
    undecided: Vec<u16>,
    values: Vec<usize>,
    col_tied: Vec<bool>,
    need: usize,
    have: Vec<usize>,
    shortfall: usize,
    stats: SearchStats,
}

impl Solver {
    fn new(prob: &SearchProblem, budget: u64) -> Self {
        let m = prob.m;
        let row_sets = colex_masks(m, prob.mu);
        let col_sets = colex_masks(m, prob.nu);
        let mut rects_of = vec![Vec::new(); m * m];
        let mut id = 0u32;
        for &rm in &row_sets {
            for &cm in &col_sets {
                for r in bits_of(rm) {
                    for c in bits_of(cm) {
                        rects_of[r * m + c].push(id);
                    }
                }
                id += 1;
            }
        }
        let rects = id as usize;
        Solver {
            m,
            p: prob.p,
            budget,
            rects_of,
            cover: vec![0; rects * prob.p],
            missing: vec![prob.p as u16; rects],
            undecided: vec![(prob.mu * prob.nu) as u16; rects],
            values: vec![0; m * m],
            col_tied: vec![true; m],
            need: min_thick_size(m, prob.mu, prob.nu),
            have: vec![0; prob.p],
            shortfall: min_thick_size(m, prob.mu, prob.nu) * prob.p,
            stats: SearchStats::default(),
        }
    }

    /// Assigns `v` to `cell`; false when some rectangle can no longer be
    /// completed. The assignment is applied either way.
    fn apply(&mut self, cell: usize, v: usize) -> bool {
        if self.have[v] < self.need {
            self.shortfall -= 1;
        }
        self.have[v] += 1;
        // cells after this one are still undecided
        let mut ok = self.shortfall <= self.m * self.m - cell - 1;
        for &r in &self.rects_of[cell] {
            let r = r as usize;
            self.undecided[r] -= 1;
            let c = &mut self.cover[r * self.p + v];
            if *c == 0 {
                self.missing[r] -= 1;
            }
            *c += 1;
            if self.missing[r] > self.undecided[r] {
                ok = false;
            }
        }
        ok
    }

    fn undo(&mut self, cell: usize, v: usize) {
        self.have[v] -= 1;
        if self.have[v] < self.need {
            self.shortfall += 1;
        }
        for &r in &self.rects_of[cell] {
            let r = r as usize;
            self.undecided[r] += 1;
            let c = &mut self.cover[r * self.p + v];
            *c -= 1;
            if *c == 0 {
                self.missing[r] += 1;
            }
        }
    }

    /// `used` is the number of classes already placed; `row_tied` says the
    /// current row equals the previous one so far.
    fn dfs(&mut self, cell: usize, used: usize, row_tied: bool) -> Step {
        let m = self.m;
        if cell == m * m {
            return Step::Found;
        }
        let (r, c) = (cell / m, cell % m);
        let row_tied = if c == 0 { r > 0 } else { row_tied };
        let above = if r > 0 { self.values[cell - m] } else { 0 };
        let left = if c > 0 { self.values[cell - 1] } else { 0 };
        let col_tied = c > 0 && self.col_tied[c];
        let lo = if row_tied { above } else { 0 }.max(if col_tied { left } else { 0 });
        let hi = (used + 1).min(self.p);
        for v in lo..hi {
            self.stats.nodes += 1;
            if self.stats.nodes > self.budget {
                return Step::OutOfBudget;
            }
            let ok = self.apply(cell, v);
            if !ok {
                self.stats.prunes += 1;
            } else {
                self.values[cell] = v;
                let saved = self.col_tied[c];
                if c > 0 {
                    self.col_tied[c] = saved && left == v;
                }
                let step = self.dfs(cell + 1, used.max(v + 1), row_tied && v == above);
                self.col_tied[c] = saved;
                match step {
                    Step::Exhausted => {}
                    other => {
                        if matches!(other, Step::OutOfBudget) {
                            self.undo(cell, v);
                        }
                        return other;
                    }
                }
            }
            self.undo(cell, v);
        }
        Step::Exhausted
    }
}

/// Decides whether `[m] x [m]` splits into `p` classes each
/// `(mu, nu)`-thick, within `budget` class assignments.
pub fn solve(prob: &SearchProblem, budget: u64) -> Result<SearchOutcome> {
    prob.validate()?;
    let start = Instant::now();
    let mut solver = Solver::new(prob, budget);
    let step = if prob.p > class_count_bound(prob.m, prob.mu, prob.nu) {
        Step::Exhausted
    } else {
        solver.dfs(0, 0, false)
    };
    let (status, certificate) = match step {
        Step::Found => {
            let m = prob.m;
            let values = &solver.values;
            let g = GridColoring::from_fn(m, m, prob.p, |r, c| values[r * m + c])?;
            let report = verify_certificate(&g, prob)?;
            if !report.pass() {
                return Err(Error::InvariantBreach(format!(
                    "search produced a certificate that fails verification: {:?}",
                    report.first_violation()
                )));
            }
            (Status::Sat, Some(g))
        }
        Step::Exhausted => (Status::Unsat, None),
        Step::OutOfBudget => (Status::BudgetExceeded, None),
    };
    Ok(SearchOutcome {
        problem: *prob,
        status,
        certificate,
        stats: solver.stats,
        wall: start.elapsed(),
    })
}

/// Checks that `coloring` is a total `m x m` coloring with at most `p`
/// classes, each `(mu, nu)`-thick. A failing class is reported with its
/// least failing rectangle.
pub fn verify_certificate(coloring: &GridColoring, prob: &SearchProblem) -> Result<WitnessReport> {
    let (rows, cols) = (coloring.rows().size(), coloring.cols().size());
    if rows != prob.m || cols != prob.m {
        return Err(Error::ShapeMismatch(format!(
            "certificate is {rows} x {cols}, problem needs {0} x {0}",
            prob.m
        )));
    }
    let mut report = WitnessReport::new();
    report.artifact("problem", prob);
    if coloring.class_count() > prob.p {
        report.fail(
            "class-count",
            format!("coloring has {} classes, at most {} allowed", coloring.class_count(), prob.p),
            json!({ "classCount": coloring.class_count(), "p": prob.p }),
        );
    }
    if let Some((row, col)) = coloring.first_unassigned() {
        report.fail(
            "partial",
            format!("cell ({row}, {col}) is unassigned"),
            json!({ "row": row, "col": col }),
        );
        return Ok(report);
    }
    for class in 0..coloring.class_count() {
        if let Some(w) = is_thick(&coloring.class_cells(class), prob.spec()).witness() {
            report.fail(
                "not-thick",
                format!("class {class} misses {:?} x {:?}", w.rows, w.cols),
                json!({ "class": class, "M": w.rows, "N": w.cols }),
            );
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Exact,
    /// Some probe ran out of budget; `t` is only a lower bound.
    Unknown,
}

/// One entry `T(m, mu, nu)` of the thick-number table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub m: usize,
    pub mu: usize,
    pub nu: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub status: CellStatus,
    /// Witness for `p = T`.
    pub certificate: GridColoring,
    pub stats: SearchStats,
}

/// Largest `p` for which `[m] x [m]` splits into `p` classes each
/// `(mu, nu)`-thick. Merging two thick classes leaves a thick class, so the
/// satisfiable `p` form an initial segment; `p = 2, 3, ...` is probed until
/// the first UNSAT or [`class_count_bound`].
pub fn thick_number(m: usize, mu: usize, nu: usize, budget: u64) -> Result<TableCell> {
    SearchProblem::new(m, mu, nu, 1)?;
    let mut t = 1;
    let mut certificate = GridColoring::from_fn(m, m, 1, |_, _| 0)?;
    let mut status = CellStatus::Exact;
    let mut stats = SearchStats::default();
    for p in 2..=class_count_bound(m, mu, nu) {
        let out = solve(&SearchProblem::new(m, mu, nu, p)?, budget)?;
        stats.merge(out.stats);
        match out.status {
            Status::Sat => {
                t = p;
                certificate = out.certificate.expect("SAT carries a certificate");
            }
            Status::Unsat => break,
            Status::BudgetExceeded => {
                status = CellStatus::Unknown;
                break;
            }
        }
    }
    Ok(TableCell {
        m,
        mu,
        nu,
        t,
        status,
        certificate,
        stats,
    })
}

/// `T(m, mu, nu)` for `1 <= m <= m_max` and `1 <= mu, nu <= min(m, mu_nu_max)`.
pub fn thick_number_table(m_max: usize, mu_nu_max: usize, budget: u64) -> Result<Vec<TableCell>> {
    let mut cells = Vec::new();
    for m in 1..=m_max {
        let top = m.min(mu_nu_max);
        for mu in 1..=top {
            for nu in 1..=top {
                cells.push(thick_number(m, mu, nu, budget)?);
            }
        }
    }
    Ok(cells)
}

/// Pairs of cells contradicting `T(m, mu', nu') >= T(m, mu, nu)` for
/// `mu' >= mu`, `nu' >= nu`. Only cells whose larger side is exact can
/// contradict; unknown cells are lower bounds.
pub fn table_monotonicity_violations(cells: &[TableCell]) -> Vec<(TableCell, TableCell)> {
    let mut out = Vec::new();
    for small in cells {
        for big in cells {
            if big.m == small.m
                && big.mu >= small.mu
                && big.nu >= small.nu
                && big.status == CellStatus::Exact
                && big.t < small.t
            {
                out.push((small.clone(), big.clone()));
            }
        }
    }
    out
}

/// CSV with columns `m,mu,nu,T,status`.
pub fn table_csv(cells: &[TableCell]) -> String {
    let mut s = String::from("m,mu,nu,T,status\n");
    for c in cells {
        let status = match c.status {
            CellStatus::Exact => "exact",
            CellStatus::Unknown => "unknown",
        };
        s.push_str(&format!("{},{},{},{},{}\n", c.m, c.mu, c.nu, c.t, status));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn status(m: usize, mu: usize, nu: usize, p: usize) -> Status {
        solve(&SearchProblem::new(m, mu, nu, p).unwrap(), DEFAULT_BUDGET).unwrap().status
    }

    #[test]
    fn small_cases() {
        assert_eq!(status(2, 1, 1, 2), Status::Unsat);
        assert_eq!(status(2, 2, 2, 2), Status::Sat);
        assert_eq!(status(1, 1, 1, 1), Status::Sat);
        assert_eq!(status(3, 3, 3, 9), Status::Sat);
        assert_eq!(status(3, 3, 3, 10), Status::Unsat);
    }

    #[test]
    fn budget_is_a_status() {
        let out = solve(&SearchProblem::new(4, 2, 3, 2).unwrap(), 3).unwrap();
        assert_eq!(out.status, Status::BudgetExceeded);
        assert_eq!(out.stats.nodes, 4);
    }

    #[test]
    fn size_bound_examples() {
        assert_eq!(min_thick_size(4, 1, 1), 16);
        assert_eq!(min_thick_size(4, 4, 4), 1);
        assert_eq!(min_thick_size(5, 2, 5), 4);
        assert_eq!(class_count_bound(5, 2, 5), 6);
    }

    #[test]
    fn malformed_problems() {
        assert!(SearchProblem::new(0, 1, 1, 1).is_err());
        assert!(SearchProblem::new(3, 4, 1, 1).is_err());
        assert!(SearchProblem::new(9, 1, 1, 1).is_err());
    }

    #[test]
    fn checkerboard_certificate_fails() {
        let g = GridColoring::from_fn(4, 4, 2, |r, c| (r + c) % 2).unwrap();
        let r = verify_certificate(&g, &SearchProblem::new(4, 2, 2, 2).unwrap()).unwrap();
        assert!(!r.pass());
        let v = r.first_violation().unwrap();
        assert_eq!(v.data["M"], json!([0, 2]));
        assert_eq!(v.data["N"], json!([1, 3]));
    }

    #[test]
    fn single_class_passes() {
        let g = GridColoring::from_fn(3, 3, 1, |_, _| 0).unwrap();
        for mu in 1..=3 {
            for nu in 1..=3 {
                let r = verify_certificate(&g, &SearchProblem::new(3, mu, nu, 1).unwrap()).unwrap();
                assert!(r.pass());
            }
        }
        let bad = verify_certificate(&g, &SearchProblem::new(4, 1, 1, 1).unwrap());
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn trivial_table_values() {
        for m in 1..=4 {
            assert_eq!(thick_number(m, 1, 1, DEFAULT_BUDGET).unwrap().t, 1);
            if m >= 2 {
                assert!(thick_number(m, m, m, DEFAULT_BUDGET).unwrap().t >= 2);
            }
        }
    }

    #[test]
    fn certificate_round_trips() {
        let out = solve(&SearchProblem::new(3, 2, 3, 3).unwrap(), DEFAULT_BUDGET).unwrap();
        let g = out.certificate.unwrap();
        assert_eq!(GridColoring::from_json(&g.to_json()).unwrap(), g);
    }
}
