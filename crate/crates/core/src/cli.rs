//! Command-line dispatcher.
//!
//! Every run writes one report (to `--out` or stdout) that embeds the
//! parsed configuration. Exit codes: 0 pass or SAT, 1 fail, UNSAT or an
//! operation error, 2 usage error, 3 budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::breakers::{
    kuratowski_break_traced, split_family, BreakingFunction, SelectionRule, SplitBudget, SubsetFamily,
};
use crate::core_lemma::{
    assemble_lambda, assemble_tau, audit_assembly, run_scenario, BreakSchedule, FamilyEnumeration, Scenario,
    ScenarioParams, Variant,
};
use crate::error::Error;
use crate::grid::{is_thick, lift_by_cofinality, BlockMap, GridColoring, ThickSpec};
use crate::ramsey::{anti_thick_witness, product_colors, ramsey_extract, GridOracle};
use crate::report::{to_canonical_json, WitnessReport};
use crate::search::{
    solve, table_csv, table_monotonicity_violations, thick_number_table, verify_certificate, CellStatus,
    SearchProblem, Status, DEFAULT_BUDGET,
};
use crate::topology::construction::{build_k_assignment, rank_table, verify_k_conditions};
use crate::topology::density::{
    density_audit, max_rank_schedule, order_type_audit, seeded_boxes, ClassSelector, RationalBox,
};

/// Boxes audited by `resolve --boxes default`.
pub const DEFAULT_BOX_COUNT: usize = 20;

#[derive(Debug, Parser, Serialize)]
#[command(name = "thicket", version, about = "Thick partitions, Ramsey extraction and rational resolvability")]
pub struct Cli {
    /// Master seed; every random choice derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Thickness queries on grid colorings.
    #[command(subcommand)]
    Thick(ThickCmd),
    /// Breaking functions for subset families.
    #[command(subcommand)]
    Break(BreakCmd),
    /// Column-wise assembly of thick partitions.
    #[command(subcommand)]
    Corelemma(CoreCmd),
    /// Monochromatic sets and anti-thickness witnesses.
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Exhaustive search for thick partitions of the square grid.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Density audit of the rank classes (or order-type classes) over Q.
    Resolve(ResolveArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThickCmd {
    /// Is every chosen class (mu, nu)-thick?
    Check {
        #[arg(long)]
        grid: PathBuf,
        /// Class to check; all classes when absent.
        #[arg(long)]
        class: Option<usize>,
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        nu: usize,
    },
    /// Restrict a coloring to chosen rows and columns.
    Restrict {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, value_delimiter = ',')]
        rows: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        cols: Vec<usize>,
        /// Also check every restricted class for (mu, nu)-thickness.
        #[arg(long, requires = "nu")]
        mu: Option<usize>,
        #[arg(long, requires = "mu")]
        nu: Option<usize>,
    },
    /// Lift a coloring through consecutive column blocks of given sizes.
    Lift {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<usize>,
        /// Check the graded bound for this row parameter.
        #[arg(long)]
        mu: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleArg {
    Fresh,
    ReuseCovered,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BreakCmd {
    /// Diagonal selection onto `0..range`.
    Kuratowski {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        range: usize,
        #[arg(long, value_enum, default_value_t = RuleArg::Fresh)]
        rule: RuleArg,
    },
    /// Iterated splitting into `parts` pieces.
    Split {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        parts: usize,
        #[arg(long, default_value_t = 1)]
        threshold: usize,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct AssemblyArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub mu: usize,
    /// Number of columns `l`.
    #[arg(long)]
    pub columns: usize,
    /// Class count; one class per column when absent.
    #[arg(long)]
    pub tau: Option<usize>,
    /// `all`, `sampled:<count>` or `file:<path>` (subset-family JSON).
    #[arg(long, default_value = "all")]
    pub family: String,
    /// Nondecreasing prefix lengths, the last equal to the family size.
    #[arg(long, value_delimiter = ',')]
    pub thresholds: Option<Vec<usize>>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoreCmd {
    /// Build and audit an assembly.
    Assemble(AssemblyArgs),
    /// Audit a stored coloring against the family and thresholds.
    Audit {
        #[arg(long)]
        grid: PathBuf,
        #[command(flatten)]
        params: AssemblyArgs,
    },
    /// Run a named end-to-end composition.
    Scenario {
        /// square, rectangle, cofinal-lift or unsplitting.
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        l: usize,
        #[arg(long, default_value_t = 3)]
        mu: usize,
        #[arg(long, default_value_t = 2)]
        tau: usize,
        #[arg(long, value_delimiter = ',', default_value = "3,1")]
        blocks: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RamseyCmd {
    /// Extract a monochromatic set from one triangle of an oracle.
    Extract {
        /// constant:<k>, order3, parity, random:<seed> or file:<path>.
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        colors: usize,
        #[arg(long, value_enum, default_value_t = Side::Upper)]
        side: Side,
    },
    /// Disjoint K, L whose product sees at most two colors.
    Witness {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchCmd {
    /// Decide whether [m] x [m] splits into p (mu, nu)-thick classes.
    Solve {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also write the certificate as a grid file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Thick numbers T(m, mu, nu) for all m up to m-max.
    Table {
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        mu_nu_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check a certificate.
    Verify {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        p: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Ktree,
    Ordertype,
}

#[derive(Debug, Args, Serialize)]
pub struct ResolveArgs {
    /// Horizon N.
    #[arg(long)]
    pub points: usize,
    #[arg(long, default_value_t = 4)]
    pub classes: usize,
    /// `default` for seeded boxes in (-3, 3)^n, or a JSON file of boxes.
    #[arg(long, default_value = "default")]
    pub boxes: String,
    #[arg(long, value_enum, default_value_t = Mode::Ktree)]
    pub mode: Mode,
    #[arg(long, default_value_t = 2)]
    pub arity: usize,
    /// `cantor` or `mod:<k>`.
    #[arg(long, default_value = "cantor")]
    pub selector: String,
    /// Horizons at which the per-box maximum rank is recorded.
    #[arg(long, value_delimiter = ',')]
    pub schedule: Option<Vec<usize>>,
    /// Also run the pairwise check of the construction (quadratic).
    #[arg(long)]
    pub verify: bool,
    /// Write the constructed sets as JSON.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Sat,
    Unsat,
    BudgetExceeded,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Sat => 0,
            Verdict::Fail | Verdict::Unsat | Verdict::Error => 1,
            Verdict::BudgetExceeded => 3,
        }
    }

    fn of(report: &WitnessReport) -> Self {
        if report.pass() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// A problem with the invocation itself: bad input files, unsupported
/// formats. Maps to exit code 2 and writes no report.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

/// What a run produced.
pub struct Output {
    pub verdict: Verdict,
    pub text: String,
}

#[derive(Serialize)]
struct Envelope<'a> {
    config: &'a Cli,
    status: Verdict,
    report: &'a WitnessReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
}

/// Body of a run before it is rendered.
struct Run {
    verdict: Verdict,
    report: WitnessReport,
    error: Option<Value>,
    csv: Option<String>,
}

impl Run {
    fn judged(report: WitnessReport) -> Self {
        Run {
            verdict: Verdict::of(&report),
            report,
            error: None,
            csv: None,
        }
    }

    fn failed(e: &Error) -> Self {
        let mut report = WitnessReport::new();
        report.push(e.into());
        Run {
            verdict: Verdict::Error,
            report,
            error: Some(json!({ "code": e.code(), "message": e.to_string() })),
            csv: None,
        }
    }
}

fn operation(result: Result<Run, Error>) -> Run {
    result.unwrap_or_else(|e| Run::failed(&e))
}

fn read(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

fn load_grid(path: &Path) -> Result<GridColoring, UsageError> {
    Ok(GridColoring::from_json(&read(path)?)?)
}

fn load_family(path: &Path) -> Result<SubsetFamily, UsageError> {
    Ok(SubsetFamily::from_json(&read(path)?)?)
}

fn write(path: &Path, text: &str) -> Result<(), UsageError> {
    fs::write(path, text).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

/// Runs one parsed invocation and renders its report.
pub fn run(cli: &Cli) -> Result<Output, UsageError> {
    let body = match &cli.command {
        Command::Thick(c) => thick(c)?,
        Command::Break(c) => breaker(c)?,
        Command::Corelemma(c) => core_lemma(c, cli.seed)?,
        Command::Ramsey(c) => ramsey(c)?,
        Command::Search(c) => search(c)?,
        Command::Resolve(a) => resolve(a, cli.seed)?,
    };
    let text = match cli.format {
        Format::Json => to_canonical_json(&Envelope {
            config: cli,
            status: body.verdict,
            report: &body.report,
            error: body.error,
        }),
        Format::Csv => {
            let Some(csv) = body.csv else {
                return Err(UsageError("this command has no CSV form; use --format json".into()));
            };
            let config = serde_json::to_string(cli).expect("config serializes");
            format!("# {config}\n{csv}")
        }
    };
    Ok(Output {
        verdict: body.verdict,
        text,
    })
}

/// Parses `args`, runs, writes the report and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => write(path, &out.text),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => out.verdict.exit_code(),
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn thickness_report(coloring: &GridColoring, classes: &[usize], spec: ThickSpec) -> WitnessReport {
    let mut report = WitnessReport::new();
    let mut verdicts = Vec::new();
    for &k in classes {
        let t = is_thick(&coloring.class_cells(k), spec);
        if let Some(w) = t.witness() {
            report.fail(
                "not-thick",
                format!("class {k} misses the rectangle {:?} x {:?}", w.rows, w.cols),
                json!({ "class": k, "M": w.rows, "N": w.cols }),
            );
        }
        verdicts.push(json!({ "class": k, "thick": t.is_thick(), "witness": t.witness() }));
    }
    report.artifact("classes", verdicts);
    report
}

fn all_classes(coloring: &GridColoring) -> Vec<usize> {
    (0..coloring.class_count()).collect()
}

fn thick(cmd: &ThickCmd) -> Result<Run, UsageError> {
    Ok(match cmd {
        ThickCmd::Check { grid, class, mu, nu } => {
            let coloring = load_grid(grid)?;
            let classes = match class {
                Some(k) if *k >= coloring.class_count() => {
                    return Err(UsageError(format!(
                        "class {k} is not below the class count {}",
                        coloring.class_count()
                    )))
                }
                Some(k) => vec![*k],
                None => all_classes(&coloring),
            };
            Run::judged(thickness_report(&coloring, &classes, ThickSpec::new(*mu, *nu)))
        }
        ThickCmd::Restrict { grid, rows, cols, mu, nu } => {
            let coloring = load_grid(grid)?;
            operation((|| {
                let sub = coloring.restrict(rows, cols)?;
                let mut report = match (mu, nu) {
                    (Some(mu), Some(nu)) => thickness_report(&sub, &all_classes(&sub), ThickSpec::new(*mu, *nu)),
                    _ => WitnessReport::new(),
                };
                report.artifact("grid", sub.to_file());
                Ok(Run::judged(report))
            })())
        }
        ThickCmd::Lift { grid, blocks, mu } => {
            let coloring = load_grid(grid)?;
            operation((|| {
                let map = BlockMap::from_sizes(blocks)?;
                let lifted = lift_by_cofinality(&coloring, &map)?;
                let mut report = WitnessReport::new();
                if let Some(mu) = *mu {
                    let mut graded = Vec::new();
                    for nu in 1..=coloring.cols().size() {
                        let width = map.graded_width(nu);
                        for k in all_classes(&coloring) {
                            let before = is_thick(&coloring.class_cells(k), ThickSpec::new(mu, nu));
                            let after = is_thick(&lifted.class_cells(k), ThickSpec::new(mu, width));
                            if let (true, Some(w)) = (before.is_thick(), after.witness()) {
                                report.fail(
                                    "graded-lift",
                                    format!("class {k} is ({mu}, {nu})-thick but its lift is not ({mu}, {width})-thick"),
                                    json!({ "class": k, "nu": nu, "width": width, "M": w.rows, "N": w.cols }),
                                );
                            }
                            graded.push(json!({ "class": k, "nu": nu, "width": width,
                                "sourceThick": before.is_thick(), "liftThick": after.is_thick() }));
                        }
                    }
                    report.artifact("graded", graded);
                }
                report.artifact("grid", lifted.to_file());
                Ok(Run::judged(report))
            })())
        }
    })
}

fn breaker(cmd: &BreakCmd) -> Result<Run, UsageError> {
    Ok(match cmd {
        BreakCmd::Kuratowski { family, range, rule } => {
            let fam = load_family(family)?;
            let rule = match rule {
                RuleArg::Fresh => SelectionRule::Fresh,
                RuleArg::ReuseCovered => SelectionRule::ReuseCovered,
            };
            operation(kuratowski_break_traced(&fam, *range, rule).map(|(f, trace)| {
                let mut report = WitnessReport::new();
                for (i, set) in fam.sets().iter().enumerate() {
                    if let Some(v) = f.first_missing(set, *range) {
                        report.fail(
                            "uncovered",
                            format!("member {i} misses value {v}"),
                            json!({ "member": i, "value": v }),
                        );
                    }
                }
                report.artifact("function", f.values());
                report.artifact("selections", trace);
                Run::judged(report)
            }))
        }
        BreakCmd::Split { family, parts, threshold } => {
            let fam = load_family(family)?;
            let budget = SplitBudget {
                threshold: *threshold,
                ..SplitBudget::default()
            };
            operation(split_family(&fam, *parts, &budget).map(|(trace, f)| {
                let mut report = WitnessReport::new();
                let removed: Vec<&[usize]> = trace.removed_sets().collect();
                let mut owner = vec![None; fam.universe()];
                for (n, r) in removed.iter().enumerate() {
                    for &x in r.iter() {
                        if let Some(prev) = owner[x].replace(n) {
                            report.fail(
                                "overlap",
                                format!("point {x} lies in R_{prev} and R_{n}"),
                                json!({ "point": x, "first": prev, "second": n }),
                            );
                        }
                    }
                }
                for (i, set) in fam.sets().iter().enumerate() {
                    for n in 0..removed.len() {
                        let meets = set.iter().filter(|&&x| owner[x] == Some(n)).count();
                        if meets < *threshold {
                            report.fail(
                                "misses-part",
                                format!("member {i} has {meets} point(s) in R_{n}"),
                                json!({ "member": i, "round": n, "count": meets }),
                            );
                        }
                    }
                }
                report.artifact("trace", trace);
                report.artifact("function", f.values());
                Run::judged(report)
            }))
        }
    })
}

fn family_of(args: &AssemblyArgs, seed: u64) -> Result<FamilyEnumeration, UsageError> {
    let spec = args.family.as_str();
    if spec == "all" {
        return Ok(FamilyEnumeration::all_subsets(args.m, args.mu)?);
    }
    match spec.split_once(':') {
        Some(("sampled", n)) => {
            let n = n
                .parse()
                .map_err(|_| UsageError(format!("bad sample count in `{spec}`")))?;
            Ok(FamilyEnumeration::sampled(args.m, args.mu, n, seed)?)
        }
        Some(("file", path)) => {
            let fam = load_family(Path::new(path))?;
            Ok(FamilyEnumeration::custom(args.m, args.mu, fam.sets().to_vec())?)
        }
        _ => Err(UsageError(format!("unknown family `{spec}`"))),
    }
}

fn assembly_report(coloring: &GridColoring, fam: &FamilyEnumeration, schedule: &BreakSchedule) -> WitnessReport {
    let mut report = audit_assembly(coloring, fam, schedule);
    report.artifact("grid", coloring.to_file());
    report.artifact("thresholds", &schedule.thresholds);
    report.artifact("variant", schedule.variant);
    report.artifact("family", fam.members());
    report
}

fn core_lemma(cmd: &CoreCmd, seed: u64) -> Result<Run, UsageError> {
    Ok(match cmd {
        CoreCmd::Assemble(args) => {
            let fam = family_of(args, seed)?;
            let th = args.thresholds.as_deref();
            let built = match args.tau {
                Some(tau) => assemble_tau(&fam, args.columns, tau, th),
                None => assemble_lambda(&fam, args.columns, th),
            };
            operation(built.map(|(coloring, schedule)| Run::judged(assembly_report(&coloring, &fam, &schedule))))
        }
        CoreCmd::Audit { grid, params } => {
            let coloring = load_grid(grid)?;
            let fam = family_of(params, seed)?;
            operation((|| {
                let variant = match params.tau {
                    Some(tau) => Variant::Tau { tau },
                    None => Variant::Lambda,
                };
                let l = params.columns;
                let thresholds = match &params.thresholds {
                    Some(t) => t.clone(),
                    None => crate::core_lemma::default_thresholds(fam.len(), l),
                };
                crate::core_lemma::validate_thresholds(&thresholds, l, fam.len())?;
                if coloring.rows().size() != fam.m() || coloring.cols().size() != l {
                    return Err(Error::ShapeMismatch(format!(
                        "grid is {}x{}, expected {}x{l}",
                        coloring.rows().size(),
                        coloring.cols().size(),
                        fam.m()
                    )));
                }
                coloring.require_total()?;
                let range = variant.class_count(l).max(coloring.class_count());
                let per_column = (0..l)
                    .map(|b| {
                        let values = (0..fam.m()).map(|a| coloring.get(a, b).expect("total")).collect();
                        BreakingFunction::new(values, range)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let schedule = BreakSchedule {
                    variant,
                    thresholds,
                    per_column,
                };
                Ok(Run::judged(assembly_report(&coloring, &fam, &schedule)))
            })())
        }
        CoreCmd::Scenario { name, m, l, mu, tau, blocks } => {
            let scenario: Scenario = name.parse()?;
            let params = ScenarioParams {
                m: *m,
                l: *l,
                mu: *mu,
                tau: *tau,
                blocks: blocks.clone(),
            };
            operation(run_scenario(scenario, &params, seed).map(|(coloring, mut report)| {
                report.artifact("grid", coloring.to_file());
                Run::judged(report)
            }))
        }
    })
}

fn oracle(spec: &str, m: usize, colors: usize) -> Result<GridOracle, UsageError> {
    Ok(GridOracle::parse(spec, m, colors)?)
}

fn ramsey(cmd: &RamseyCmd) -> Result<Run, UsageError> {
    Ok(match cmd {
        RamseyCmd::Extract { oracle: spec, m, colors, side } => {
            let h = oracle(spec, *m, *colors)?;
            let f = match side {
                Side::Upper => h.upper(),
                Side::Lower => h.lower(),
            };
            operation(ramsey_extract(&f).map(|ex| {
                let mut report = WitnessReport::new();
                report.stat("size", ex.set.len());
                report.artifact("extraction", ex);
                Run::judged(report)
            }))
        }
        RamseyCmd::Witness { oracle: spec, m } => {
            let h = oracle(spec, *m, 3)?;
            operation(anti_thick_witness(&h).map(|w| {
                let mut report = WitnessReport::new();
                let seen = product_colors(&h, &w.k, &w.l);
                let disjoint = w.k.iter().all(|x| !w.l.contains(x));
                if w.k.is_empty() || w.l.is_empty() || !disjoint {
                    report.fail(
                        "bad-pair",
                        "K and L must be disjoint and nonempty",
                        json!({ "K": w.k, "L": w.l }),
                    );
                }
                if seen.len() > 2 {
                    report.fail(
                        "three-colors",
                        format!("K x L sees colors {seen:?}"),
                        json!({ "colors": seen }),
                    );
                }
                report.stat("colorCount", seen.len());
                report.artifact("witness", w);
                Run::judged(report)
            }))
        }
    })
}

fn search(cmd: &SearchCmd) -> Result<Run, UsageError> {
    Ok(match cmd {
        SearchCmd::Solve { m, mu, nu, p, budget, emit } => {
            let prob = SearchProblem::new(*m, *mu, *nu, *p)?;
            let out = match solve(&prob, *budget) {
                Ok(out) => out,
                Err(e) => return Ok(Run::failed(&e)),
            };
            if let (Some(path), Some(cert)) = (emit, &out.certificate) {
                write(path, &cert.to_json())?;
            }
            let mut report = WitnessReport::new();
            report.stat("nodes", out.stats.nodes);
            report.stat("prunes", out.stats.prunes);
            report.artifact("status", out.status);
            if let Some(cert) = &out.certificate {
                report.artifact("certificate", cert.to_file());
            }
            let verdict = match out.status {
                Status::Sat => Verdict::Sat,
                Status::Unsat => Verdict::Unsat,
                Status::BudgetExceeded => Verdict::BudgetExceeded,
            };
            Run {
                verdict,
                report,
                error: None,
                csv: None,
            }
        }
        SearchCmd::Table { m_max, mu_nu_max, budget } => {
            let cells = match thick_number_table(*m_max, mu_nu_max.unwrap_or(*m_max), *budget) {
                Ok(cells) => cells,
                Err(e) => return Ok(Run::failed(&e)),
            };
            let mut report = WitnessReport::new();
            for (small, big) in table_monotonicity_violations(&cells) {
                report.fail(
                    "monotonicity",
                    format!(
                        "T({}, {}, {}) = {} exceeds T({}, {}, {}) = {}",
                        small.m, small.mu, small.nu, small.t, big.m, big.mu, big.nu, big.t
                    ),
                    json!({ "small": [small.m, small.mu, small.nu], "big": [big.m, big.mu, big.nu] }),
                );
            }
            let unknown = cells.iter().filter(|c| c.status == CellStatus::Unknown).count();
            report.stat("cells", cells.len());
            report.stat("unknown", unknown);
            let csv = table_csv(&cells);
            report.artifact("table", &cells);
            let verdict = if !report.pass() {
                Verdict::Fail
            } else if unknown > 0 {
                Verdict::BudgetExceeded
            } else {
                Verdict::Pass
            };
            Run {
                verdict,
                report,
                error: None,
                csv: Some(csv),
            }
        }
        SearchCmd::Verify { grid, mu, nu, p } => {
            let coloring = load_grid(grid)?;
            let prob = SearchProblem::new(coloring.rows().size(), *mu, *nu, *p)?;
            operation(verify_certificate(&coloring, &prob).map(Run::judged))
        }
    })
}

fn load_boxes(spec: &str, arity: usize, seed: u64) -> Result<Vec<RationalBox>, UsageError> {
    if spec == "default" {
        return Ok(seeded_boxes(DEFAULT_BOX_COUNT, arity, seed));
    }
    let boxes: Vec<RationalBox> = serde_json::from_str(&read(Path::new(spec))?)
        .map_err(|e| UsageError(format!("bad box file {spec}: {e}")))?;
    Ok(boxes)
}

fn hits_csv(report: &WitnessReport) -> String {
    let mut s = String::from("box,class,firstHit\n");
    if let Some(rows) = report.artifacts.get("firstHit").and_then(Value::as_array) {
        for (b, row) in rows.iter().enumerate() {
            for (k, hit) in row.as_array().into_iter().flatten().enumerate() {
                let hit = hit.as_u64().map(|v| v.to_string()).unwrap_or_default();
                s.push_str(&format!("{b},{k},{hit}\n"));
            }
        }
    }
    s
}

fn resolve(args: &ResolveArgs, seed: u64) -> Result<Run, UsageError> {
    if args.points == 0 {
        return Err(UsageError("--points must be at least 1".into()));
    }
    let selector: ClassSelector = args.selector.parse()?;
    match args.mode {
        Mode::Ordertype => {
            let boxes = load_boxes(&args.boxes, args.arity, seed)?;
            let report = match order_type_audit(args.arity, &boxes, args.points) {
                Ok(mut r) => {
                    r.artifact("boxes", &boxes);
                    r
                }
                Err(e) => return Ok(Run::failed(&e)),
            };
            let csv = hits_csv(&report);
            Ok(Run {
                csv: Some(csv),
                ..Run::judged(report)
            })
        }
        Mode::Ktree => {
            if args.arity != 2 {
                return Err(UsageError("the K-construction lives in the plane; use --arity 2".into()));
            }
            let boxes = load_boxes(&args.boxes, 2, seed)?;
            let built = (|| {
                let ka = build_k_assignment(args.points)?;
                let rt = rank_table(&ka)?;
                Ok::<_, Error>((ka, rt))
            })();
            let (ka, rt) = match built {
                Ok(v) => v,
                Err(e) => return Ok(Run::failed(&e)),
            };
            if let Some(path) = &args.emit {
                write(path, &to_canonical_json(&ka))?;
            }
            let mut report = match density_audit(&ka, &rt, selector, &boxes, args.classes, args.points) {
                Ok(r) => r,
                Err(e) => return Ok(Run::failed(&e)),
            };
            if args.verify {
                report.merge("conditions.", verify_k_conditions(&ka));
            }
            let schedule = args.schedule.clone().unwrap_or_else(|| {
                let mut s = vec![args.points];
                while s[0] / 2 >= 1 && s.len() < 4 {
                    s.insert(0, s[0] / 2);
                }
                s
            });
            let per_box = max_rank_schedule(&ka, &rt, &boxes, &schedule);
            for b in 0..boxes.len() {
                for w in per_box.windows(2) {
                    if w[0][b] > w[1][b] {
                        report.fail(
                            "rank-decrease",
                            format!("max rank in box {b} decreased along the schedule"),
                            json!({ "box": b }),
                        );
                    }
                }
            }
            report.artifact("boxes", &boxes);
            report.artifact("schedule", &schedule);
            report.artifact("maxRankPerBox", &per_box);
            let csv = hits_csv(&report);
            Ok(Run {
                csv: Some(csv),
                ..Run::judged(report)
            })
        }
    }
}
