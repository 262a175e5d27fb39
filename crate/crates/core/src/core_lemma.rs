//! Column-wise assembly of thick partitions.
//!
//! Members `A_0..A_{G-1}` of a family of `mu`-subsets of the rows are
//! listed once, and a nondecreasing threshold sequence `δ_0 <= ... <=
//! δ_{l-1} = G` assigns every column `β` the prefix `{A_γ : γ < δ_β}`. Each
//! column is colored by a function that breaks its prefix:
//!
//! * with `τ` classes, `f_β[A_γ] ⊇ {0..τ-1}` for `γ < δ_β`;
//! * with `l` classes, `f_β[A_γ] ⊇ {0..β-1}` for `γ < δ_β`.
//!
//! Cell `(α, β)` gets class `f_β(α)`. Class `ξ` then meets `A_γ x {β}` for
//! every column with `δ_β > γ` (and, with `l` classes, `β > ξ`).
//!
//! Breaking every `mu`-subset of `[m]` onto `τ` values forces each value to
//! occur at least `m - mu + 1` times, so `τ (m - mu + 1) <= m` is needed for
//! the last column; feasible demos keep `mu` close to `m`.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::breakers::{break_with_fallback, split_family, BreakingFunction, SplitBudget, SubsetFamily};
use crate::combin::{bits_of, colex_masks};
use crate::error::{Error, Result};
use crate::grid::{lift_by_cofinality, BlockMap, GridColoring, ThickSpec};
use crate::report::WitnessReport;
use crate::seed::{derive_seed, substream};

/// Node limit of the exact column search used when the greedy selection
/// exhausts.
pub const COLUMN_SEARCH_NODES: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationMode {
    AllSubsets,
    Sampled,
    Custom,
}

/// An indexed list of `mu`-subsets of `0..m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEnumeration {
    m: usize,
    mu: usize,
    members: Vec<Vec<usize>>,
    mode: EnumerationMode,
}

impl FamilyEnumeration {
    /// All `mu`-subsets of `0..m` in colexicographic order.
    pub fn all_subsets(m: usize, mu: usize) -> Result<Self> {
        if m >= 64 {
            return Err(Error::TooLarge { size: m, max: 63 });
        }
        Ok(FamilyEnumeration {
            m,
            mu,
            members: colex_masks(m, mu).into_iter().map(bits_of).collect(),
            mode: EnumerationMode::AllSubsets,
        })
    }

    /// `count` distinct random `mu`-subsets, listed in colexicographic order.
    pub fn sampled(m: usize, mu: usize, count: usize, seed: u64) -> Result<Self> {
        use rand::seq::SliceRandom;
        if m >= 64 {
            return Err(Error::TooLarge { size: m, max: 63 });
        }
        let mut all = colex_masks(m, mu);
        if count > all.len() {
            return Err(Error::InvalidParameter(format!(
                "cannot sample {count} of {} subsets",
                all.len()
            )));
        }
        let mut rng = substream(seed, "family-sample", 0);
        all.shuffle(&mut rng);
        let mut chosen: Vec<u64> = all.into_iter().take(count).collect();
        chosen.sort_unstable();
        Ok(FamilyEnumeration {
            m,
            mu,
            members: chosen.into_iter().map(bits_of).collect(),
            mode: EnumerationMode::Sampled,
        })
    }

    pub fn custom(m: usize, mu: usize, members: Vec<Vec<usize>>) -> Result<Self> {
        let mut members = members;
        for (i, s) in members.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.len() != mu {
                return Err(Error::InvalidParameter(format!(
                    "member {i} has {} elements, expected {mu}",
                    s.len()
                )));
            }
            if let Some(&x) = s.last() {
                if x >= m {
                    return Err(Error::IndexOutOfRange { index: x, size: m });
                }
            }
        }
        Ok(FamilyEnumeration {
            m,
            mu,
            members,
            mode: EnumerationMode::Custom,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn mode(&self) -> EnumerationMode {
        self.mode
    }

    pub fn prefix_family(&self, count: usize) -> SubsetFamily {
        SubsetFamily::new(self.m, self.members[..count.min(self.len())].to_vec())
            .expect("members validated")
    }
}

/// Which of the two assemblies produced a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "variant")]
pub enum Variant {
    /// `τ` classes; every column breaks its prefix onto `0..τ`.
    Tau { tau: usize },
    /// One class per column; column `β` breaks its prefix onto `0..β`.
    Lambda,
}

impl Variant {
    /// Values every column must cover.
    pub fn required(&self, column: usize) -> usize {
        match *self {
            Variant::Tau { tau } => tau,
            Variant::Lambda => column,
        }
    }

    pub fn class_count(&self, columns: usize) -> usize {
        match *self {
            Variant::Tau { tau } => tau,
            Variant::Lambda => columns,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakSchedule {
    pub variant: Variant,
    pub thresholds: Vec<usize>,
    pub per_column: Vec<BreakingFunction>,
}

impl BreakSchedule {
    pub fn col_count(&self) -> usize {
        self.thresholds.len()
    }
}

/// `δ_β = ceil((β + 1) G / l)`.
pub fn default_thresholds(members: usize, columns: usize) -> Vec<usize> {
    (0..columns)
        .map(|b| ((b + 1) * members).div_ceil(columns))
        .collect()
}

pub fn validate_thresholds(thresholds: &[usize], columns: usize, members: usize) -> Result<()> {
    if thresholds.len() != columns {
        return Err(Error::InvalidParameter(format!(
            "{} thresholds for {columns} columns",
            thresholds.len()
        )));
    }
    if thresholds.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter("thresholds must be nondecreasing".into()));
    }
    if thresholds.last().copied().unwrap_or(members) != members {
        return Err(Error::InvalidParameter(format!(
            "last threshold must equal the member count {members}"
        )));
    }
    Ok(())
}

fn resolve_thresholds(fam: &FamilyEnumeration, columns: usize, thresholds: Option<&[usize]>) -> Result<Vec<usize>> {
    if columns == 0 {
        return Err(Error::InvalidParameter("at least one column is required".into()));
    }
    let th = match thresholds {
        Some(t) => t.to_vec(),
        None => default_thresholds(fam.len(), columns),
    };
    validate_thresholds(&th, columns, fam.len())?;
    Ok(th)
}

fn with_column(e: Error, column: usize) -> Error {
    match e {
        Error::SelectionExhausted { member, round, .. } => Error::SelectionExhausted {
            member,
            round,
            column: Some(column),
        },
        Error::SplitterNotFound { round, .. } => Error::SplitterNotFound {
            round,
            column: Some(column),
        },
        e => e,
    }
}

/// Builds the coloring from per-column functions; `breaker(β, prefix)`
/// returns `f_β`.
fn assemble_with(
    fam: &FamilyEnumeration,
    thresholds: Vec<usize>,
    variant: Variant,
    mut breaker: impl FnMut(usize, &SubsetFamily) -> Result<BreakingFunction>,
) -> Result<(GridColoring, BreakSchedule)> {
    let l = thresholds.len();
    let classes = variant.class_count(l);
    let mut coloring = GridColoring::new(fam.m(), l, classes)?;
    let mut per_column = Vec::with_capacity(l);
    for (beta, &delta) in thresholds.iter().enumerate() {
        let f = breaker(beta, &fam.prefix_family(delta)).map_err(|e| with_column(e, beta))?;
        for alpha in 0..fam.m() {
            coloring.set(alpha, beta, Some(f.value(alpha)))?;
        }
        per_column.push(f);
    }
    Ok((
        coloring,
        BreakSchedule {
            variant,
            thresholds,
            per_column,
        },
    ))
}

/// Partition of `m x l` into at most `tau` classes, column `β` breaking the
/// prefix `{A_γ : γ < δ_β}` onto `0..tau`.
pub fn assemble_tau(
    fam: &FamilyEnumeration,
    columns: usize,
    tau: usize,
    thresholds: Option<&[usize]>,
) -> Result<(GridColoring, BreakSchedule)> {
    if tau == 0 || tau > fam.mu() {
        return Err(Error::InvalidParameter(format!(
            "tau = {tau} must lie in 1..={}",
            fam.mu()
        )));
    }
    let th = resolve_thresholds(fam, columns, thresholds)?;
    assemble_with(fam, th, Variant::Tau { tau }, |_, prefix| {
        break_with_fallback(prefix, tau, tau, COLUMN_SEARCH_NODES)
    })
}

/// Partition of `m x l` into at most `l` classes, column `β` breaking its
/// prefix onto `0..β`. Column `β` is infeasible once `β > mu`.
pub fn assemble_lambda(
    fam: &FamilyEnumeration,
    columns: usize,
    thresholds: Option<&[usize]>,
) -> Result<(GridColoring, BreakSchedule)> {
    let th = resolve_thresholds(fam, columns, thresholds)?;
    assemble_with(fam, th, Variant::Lambda, |beta, prefix| {
        break_with_fallback(prefix, beta, columns, COLUMN_SEARCH_NODES)
    })
}

/// [`assemble_tau`] with every column broken by the splitting recursion
/// into `tau` parts instead of the diagonal selection.
pub fn assemble_tau_by_splitting(
    fam: &FamilyEnumeration,
    columns: usize,
    tau: usize,
    thresholds: Option<&[usize]>,
    budget: &SplitBudget,
) -> Result<(GridColoring, BreakSchedule)> {
    if tau == 0 {
        return Err(Error::InvalidParameter("tau must be positive".into()));
    }
    let th = resolve_thresholds(fam, columns, thresholds)?;
    assemble_with(fam, th, Variant::Tau { tau }, |beta, prefix| {
        let b = SplitBudget {
            seed: derive_seed(budget.seed, "split-column", beta as u64),
            ..*budget
        };
        split_family(prefix, tau, &b).map(|(_, f)| f)
    })
}

/// Outcome of asking whether class `ξ` meets every listed member on the
/// columns that are obliged to serve it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassQuery {
    /// No column can serve the class (`ξ >= l - 1` with one class per
    /// column); nothing to check.
    Skipped,
    Met,
    Missed { member: usize },
}

/// Columns obliged to show class `class` on member `gamma`.
fn serving_columns(thresholds: &[usize], variant: Variant, gamma: usize, class: usize) -> Vec<usize> {
    (0..thresholds.len())
        .filter(|&b| thresholds[b] > gamma && (matches!(variant, Variant::Tau { .. }) || b > class))
        .collect()
}

pub fn class_meets_family(
    coloring: &GridColoring,
    fam: &FamilyEnumeration,
    schedule: &BreakSchedule,
    class: usize,
) -> ClassQuery {
    let l = schedule.col_count();
    if schedule.variant == Variant::Lambda && class + 1 >= l {
        return ClassQuery::Skipped;
    }
    for (gamma, member) in fam.members().iter().enumerate() {
        let cols = serving_columns(&schedule.thresholds, schedule.variant, gamma, class);
        let hit = cols
            .iter()
            .any(|&b| member.iter().any(|&a| coloring.get(a, b) == Some(class)));
        if !hit {
            return ClassQuery::Missed { member: gamma };
        }
    }
    ClassQuery::Met
}

/// Checks a coloring against its family and schedule:
///
/// 1. shape, totality and class range;
/// 2. the breaking contract of every column, read off the coloring itself,
///    and agreement of the coloring with the recorded `f_β`;
/// 3. family-relative thickness: every class meets `A_γ x C` where `C` are
///    the columns with `δ_β > γ` (with one class per column, additionally
///    `β > ξ`; classes `ξ >= l - 1` are skipped).
pub fn audit_assembly(
    coloring: &GridColoring,
    fam: &FamilyEnumeration,
    schedule: &BreakSchedule,
) -> WitnessReport {
    let mut report = WitnessReport::new();
    let l = schedule.col_count();
    let m = fam.m();
    report.stat("members", fam.len());
    report.stat("columns", l);
    report.stat("rows", m);

    if coloring.rows().size() != m || coloring.cols().size() != l {
        report.fail(
            "shape",
            format!(
                "coloring is {}x{}, expected {m}x{l}",
                coloring.rows().size(),
                coloring.cols().size()
            ),
            json!({"rows": coloring.rows().size(), "cols": coloring.cols().size()}),
        );
        return report;
    }
    let classes = schedule.variant.class_count(l);
    if coloring.class_count() > classes {
        report.fail(
            "class-count",
            format!("{} classes exceed the allowed {classes}", coloring.class_count()),
            json!({"classCount": coloring.class_count(), "allowed": classes}),
        );
    }
    if let Some((r, c)) = coloring.first_unassigned() {
        report.fail(
            "partial",
            format!("cell ({r}, {c}) is unassigned"),
            json!({"row": r, "col": c}),
        );
    }

    for beta in 0..l {
        let required = schedule.variant.required(beta);
        let delta = schedule.thresholds[beta];
        for (gamma, member) in fam.members().iter().enumerate().take(delta) {
            let present: Vec<bool> = {
                let mut p = vec![false; required];
                for &a in member {
                    if let Some(k) = coloring.get(a, beta) {
                        if k < required {
                            p[k] = true;
                        }
                    }
                }
                p
            };
            if let Some(missing) = present.iter().position(|&p| !p) {
                report.fail(
                    "breaking-contract",
                    format!("column {beta} misses value {missing} on member {gamma}"),
                    json!({"column": beta, "member": gamma, "missing": missing}),
                );
            }
        }
        if let Some(f) = schedule.per_column.get(beta) {
            if let Some(a) = (0..m).find(|&a| coloring.get(a, beta) != Some(f.value(a))) {
                report.fail(
                    "schedule-mismatch",
                    format!("cell ({a}, {beta}) disagrees with the recorded column function"),
                    json!({"row": a, "column": beta}),
                );
            }
        } else {
            report.fail(
                "schedule-mismatch",
                format!("no column function recorded for column {beta}"),
                json!({"column": beta}),
            );
        }
    }

    let mut skipped = Vec::new();
    for class in 0..classes {
        match class_meets_family(coloring, fam, schedule, class) {
            ClassQuery::Met => {}
            ClassQuery::Skipped => skipped.push(class),
            ClassQuery::Missed { member } => report.fail(
                "family-thickness",
                format!("class {class} misses member {member} on its serving columns"),
                json!({"class": class, "member": member}),
            ),
        }
    }
    report.stat("skippedClasses", skipped);
    report
}

/// Named end-to-end compositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    /// `m x m`, all `mu`-subsets, `tau` classes, each class `(mu, m)`-thick
    /// and hence full-thick.
    Square,
    /// The square on `l x l` restricted to its first `mu` rows: every class
    /// is full-thick on `mu x l`.
    Rectangle,
    /// A `m x c` assembly (one column per block) lifted through the block
    /// map; the lifted classes satisfy the graded thickness bound.
    CofinalLift,
    /// As `Square` but on `m x l`, every column broken by the splitting
    /// recursion.
    Unsplitting,
}

impl std::str::FromStr for Scenario {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(Scenario::Square),
            "rectangle" => Ok(Scenario::Rectangle),
            "cofinal-lift" => Ok(Scenario::CofinalLift),
            "unsplitting" => Ok(Scenario::Unsplitting),
            other => Err(Error::Parse(format!("unknown scenario `{other}`"))),
        }
    }
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Square => "square",
            Scenario::Rectangle => "rectangle",
            Scenario::CofinalLift => "cofinal-lift",
            Scenario::Unsplitting => "unsplitting",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioParams {
    pub m: usize,
    pub l: usize,
    pub mu: usize,
    pub tau: usize,
    /// Block sizes for the cofinal lift; their count is the source width.
    pub blocks: Vec<usize>,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        ScenarioParams {
            m: 4,
            l: 4,
            mu: 3,
            tau: 2,
            blocks: vec![3, 1],
        }
    }
}

fn check_classes(report: &mut WitnessReport, coloring: &GridColoring, spec: ThickSpec, label: &str) {
    for (k, t) in coloring.class_thickness(spec).into_iter().enumerate() {
        if let Some(w) = t.witness() {
            report.fail(
                "class-not-thick",
                format!("{label}: class {k} is not ({}, {})-thick", spec.mu, spec.nu),
                json!({"class": k, "mu": spec.mu, "nu": spec.nu, "witness": w}),
            );
        }
    }
}

/// Runs a scenario end to end and returns the final coloring with its
/// audit. Component errors are wrapped with the scenario name.
pub fn run_scenario(scenario: Scenario, params: &ScenarioParams, seed: u64) -> Result<(GridColoring, WitnessReport)> {
    run_scenario_inner(scenario, params, seed).map_err(|e| Error::Scenario {
        name: scenario.name().to_string(),
        source: Box::new(e),
    })
}

fn run_scenario_inner(scenario: Scenario, p: &ScenarioParams, seed: u64) -> Result<(GridColoring, WitnessReport)> {
    let mut report = WitnessReport::new();
    report.artifact("scenario", scenario.name());
    report.artifact("params", p);
    match scenario {
        Scenario::Square => {
            let fam = FamilyEnumeration::all_subsets(p.m, p.mu)?;
            let (coloring, schedule) = assemble_tau(&fam, p.m, p.tau, None)?;
            report.merge("assembly.", audit_assembly(&coloring, &fam, &schedule));
            check_classes(&mut report, &coloring, ThickSpec::new(p.mu, p.m), "square");
            check_classes(&mut report, &coloring, ThickSpec::new(p.m, p.m), "square, full");
            report.artifact("thresholds", &schedule.thresholds);
            Ok((coloring, report))
        }
        Scenario::Rectangle => {
            let fam = FamilyEnumeration::all_subsets(p.l, p.mu)?;
            let (square, schedule) = assemble_tau(&fam, p.l, p.tau, None)?;
            report.merge("assembly.", audit_assembly(&square, &fam, &schedule));
            let rows: Vec<usize> = (0..p.mu).collect();
            let cols: Vec<usize> = (0..p.l).collect();
            let rect = square.restrict(&rows, &cols)?;
            check_classes(&mut report, &rect, ThickSpec::new(p.mu, p.l), "rectangle, full");
            Ok((rect, report))
        }
        Scenario::CofinalLift => {
            let c = p.blocks.len();
            let blocks = BlockMap::from_sizes(&p.blocks)?;
            let fam = FamilyEnumeration::all_subsets(p.m, p.mu)?;
            let (source, schedule) = assemble_tau(&fam, c, p.tau, None)?;
            report.merge("source.", audit_assembly(&source, &fam, &schedule));
            let lifted = lift_by_cofinality(&source, &blocks)?;
            let mut graded = Vec::new();
            for nu in 1..=c {
                let spec = ThickSpec::new(p.mu, nu);
                let thick: Vec<bool> = source.class_thickness(spec).iter().map(|t| t.is_thick()).collect();
                let width = blocks.graded_width(nu);
                let lifted_spec = ThickSpec::new(p.mu, width);
                for (k, t) in lifted.class_thickness(lifted_spec).into_iter().enumerate() {
                    if thick[k] {
                        if let Some(w) = t.witness() {
                            report.fail(
                                "graded-lift",
                                format!("class {k}: ({}, {nu})-thick source lifts to a non-({}, {width})-thick class", p.mu, p.mu),
                                json!({"class": k, "nu": nu, "width": width, "witness": w}),
                            );
                        }
                    }
                }
                graded.push(json!({"nu": nu, "width": width, "sourceThick": thick}));
            }
            check_classes(&mut report, &lifted, ThickSpec::new(p.mu, blocks.target_cols()), "lift");
            report.artifact("graded", graded);
            report.artifact("source", source.to_file());
            Ok((lifted, report))
        }
        Scenario::Unsplitting => {
            let fam = FamilyEnumeration::all_subsets(p.m, p.mu)?;
            let budget = SplitBudget {
                seed: derive_seed(seed, "unsplitting", 0),
                ..SplitBudget::default()
            };
            let (coloring, schedule) = assemble_tau_by_splitting(&fam, p.l, p.tau, None, &budget)?;
            report.merge("assembly.", audit_assembly(&coloring, &fam, &schedule));
            check_classes(&mut report, &coloring, ThickSpec::new(p.mu, p.l), "unsplitting");
            Ok((coloring, report))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_default_and_validation() {
        assert_eq!(default_thresholds(8, 4), vec![2, 4, 6, 8]);
        assert_eq!(default_thresholds(1, 2), vec![1, 1]);
        assert_eq!(default_thresholds(5, 4), vec![2, 3, 4, 5]);
        assert!(validate_thresholds(&[2, 1, 4], 3, 4).is_err());
        assert!(validate_thresholds(&[1, 3], 2, 4).is_err());
        assert!(validate_thresholds(&[1], 2, 1).is_err());
        assert!(validate_thresholds(&[0, 4], 2, 4).is_ok());
    }

    #[test]
    fn all_subsets_is_colex() {
        let fam = FamilyEnumeration::all_subsets(4, 3).unwrap();
        assert_eq!(
            fam.members(),
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        assert_eq!(FamilyEnumeration::all_subsets(8, 7).unwrap().len(), 8);
        assert!(FamilyEnumeration::custom(4, 2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn tau_single_member_three_classes() {
        let fam = FamilyEnumeration::custom(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let (g, s) = assemble_tau(&fam, 2, 3, Some(&[1, 1])).unwrap();
        for b in 0..2 {
            assert_eq!(s.per_column[b].image(&[0, 1, 2]).len(), 3);
        }
        for xi in 0..3 {
            for b in 0..2 {
                assert!((0..3).any(|a| g.get(a, b) == Some(xi)));
            }
        }
        assert!(audit_assembly(&g, &fam, &s).pass());
    }

    #[test]
    fn tau_one_is_a_single_class() {
        let fam = FamilyEnumeration::all_subsets(5, 2).unwrap();
        let (g, s) = assemble_tau(&fam, 3, 1, None).unwrap();
        assert_eq!(g.class_sizes(), vec![15]);
        assert!(audit_assembly(&g, &fam, &s).pass());
    }

    #[test]
    fn tau_four_subsets_two_columns() {
        let fam = FamilyEnumeration::all_subsets(4, 3).unwrap();
        let (g, s) = assemble_tau(&fam, 2, 2, Some(&[2, 4])).unwrap();
        for (gamma, m) in fam.members().iter().enumerate() {
            assert_eq!(s.per_column[1].image(m).len(), 2);
            if gamma < 2 {
                assert_eq!(s.per_column[0].image(m).len(), 2);
            }
        }
        assert!(audit_assembly(&g, &fam, &s).pass());
    }

    #[test]
    fn tau_rejects_more_classes_than_member_size() {
        let fam = FamilyEnumeration::all_subsets(4, 2).unwrap();
        assert!(matches!(assemble_tau(&fam, 2, 3, None), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn lambda_examples() {
        let fam = FamilyEnumeration::all_subsets(3, 2).unwrap();
        let (g, _) = assemble_lambda(&fam, 1, None).unwrap();
        assert_eq!(g.class_sizes(), vec![3]);

        let fam = FamilyEnumeration::custom(4, 4, vec![vec![0, 1, 2, 3]]).unwrap();
        let (g, s) = assemble_lambda(&fam, 3, Some(&[1, 1, 1])).unwrap();
        let has = |class, col| (0..4).any(|a| g.get(a, col) == Some(class));
        assert!(has(0, 1) && has(0, 2) && has(1, 2));
        let report = audit_assembly(&g, &fam, &s);
        assert!(report.pass(), "{report:?}");
        assert_eq!(class_meets_family(&g, &fam, &s, 2), ClassQuery::Skipped);
    }

    #[test]
    fn lambda_too_many_columns_exhausts() {
        // depth 3 cannot fit in a 2-element member
        let fam = FamilyEnumeration::all_subsets(4, 2).unwrap();
        let err = assemble_lambda(&fam, 4, Some(&[6, 6, 6, 6])).unwrap_err();
        assert!(matches!(err, Error::SelectionExhausted { column: Some(c), .. } if c <= 3));
    }

    #[test]
    fn mutated_cell_breaks_contract() {
        let fam = FamilyEnumeration::custom(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let (mut g, s) = assemble_tau(&fam, 2, 3, Some(&[1, 1])).unwrap();
        let old = g.get(0, 0).unwrap();
        g.set(0, 0, Some((old + 1) % 3)).unwrap();
        let r = audit_assembly(&g, &fam, &s);
        let v = r.first_violation().unwrap();
        assert_eq!(v.kind, "breaking-contract");
        assert_eq!(v.data["column"], 0);
        assert_eq!(v.data["member"], 0);
    }

    #[test]
    fn scenarios_pass_on_feasible_parameters() {
        for sc in [Scenario::Square, Scenario::Rectangle, Scenario::CofinalLift] {
            let (_, r) = run_scenario(sc, &ScenarioParams::default(), 0).unwrap();
            assert!(r.pass(), "{sc:?}: {:?}", r.violations());
        }
        let p = ScenarioParams { m: 6, l: 3, mu: 5, tau: 2, ..Default::default() };
        let (_, r) = run_scenario(Scenario::Unsplitting, &p, 0).unwrap();
        assert!(r.pass(), "{:?}", r.violations());
    }

    #[test]
    fn cofinal_lift_yields_four_columns() {
        let (g, r) = run_scenario(Scenario::CofinalLift, &ScenarioParams::default(), 0).unwrap();
        assert_eq!((g.rows().size(), g.cols().size()), (4, 4));
        assert!(r.pass());
    }

    #[test]
    fn unsplitting_triangle_surfaces_splitter_error() {
        let p = ScenarioParams { m: 3, l: 2, mu: 2, tau: 2, ..Default::default() };
        let err = run_scenario(Scenario::Unsplitting, &p, 0).unwrap_err();
        assert!(matches!(err, Error::Scenario { ref name, .. } if name == "unsplitting"));
        assert!(matches!(err.root(), Error::SplitterNotFound { column: Some(0), round: 0 }));
    }
}
