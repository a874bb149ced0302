//! The `finmarkov` command line.
//!
//! Exit codes: `0` when the comparison succeeds or the property holds, `1`
//! when it does not, `2` for malformed input or an operation the file's
//! semiring does not support.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finmarkov::blackwell::{bss_check, standard_measure, BssReport};
use finmarkov::comparison::{
    find_garbling, find_garbling_as, find_garbling_bayes, search_conditional_independence, search_sufficiency,
    uniform_prior,
};
use finmarkov::conditioning::is_deterministic_given;
use finmarkov::io::{dilation_to_value, kernel_to_value, meta_to_value, ExperimentFile, SemiringKind};
use finmarkov::random::{corpus, seed_from_env, SEED_VAR};
use finmarkov::{Error, Kernel, Pair, Rational, Semiring, Side, TriLattice};
use serde_json::{json, Value};

pub mod render;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "finmarkov",
    version,
    about = "Exact comparison of finite statistical experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether F is more informative than G and print a garbling.
    Compare(CompareArgs),
    /// Print the standard measure of an experiment under a prior.
    StandardMeasure(MeasureArgs),
    /// Compare by garbling and by dilation of standard measures.
    Bss(BssArgs),
    /// Evaluate a structural property of a kernel or state.
    Check(CheckArgs),
    /// Run the garbling/dilation/sufficiency cross-checks on random instances.
    Suite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct PriorArgs {
    /// Name of a state on theta to use as prior.
    #[arg(long, conflicts_with = "uniform")]
    pub prior: Option<String>,
    /// Use the uniform prior on theta.
    #[arg(long)]
    pub uniform: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// `c ∘ f = g` exactly.
    Plain,
    /// `c ∘ f = g` almost surely under the prior.
    As,
    /// Almost surely under the uniform prior.
    Bayes,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub file: PathBuf,
    pub f: String,
    pub g: String,
    #[command(flatten)]
    pub prior: PriorArgs,
    /// Defaults to `as` when a prior is given, `plain` otherwise.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    pub file: PathBuf,
    pub f: String,
    #[command(flatten)]
    pub prior: PriorArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BssArgs {
    pub file: PathBuf,
    pub f: String,
    pub g: String,
    #[command(flatten)]
    pub prior: PriorArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Deterministic,
    Dirac,
    DetGivenLeft,
    DetGivenRight,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Deterministic => "deterministic",
            Property::Dirac => "dirac",
            Property::DetGivenLeft => "det-given-left",
            Property::DetGivenRight => "det-given-right",
        }
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    /// A kernel name, or a state name.
    pub kernel: String,
    #[arg(value_enum)]
    pub property: Property,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    /// Overrides the seed taken from the environment.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

/// What a command printed and how it should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn new(yes: bool, stdout: String) -> Self {
        Outcome {
            code: if yes { EXIT_YES } else { EXIT_NO },
            stdout,
        }
    }
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn rational_file(path: &PathBuf, operation: &'static str) -> finmarkov::Result<ExperimentFile> {
    let file = ExperimentFile::load(path)?;
    if file.semiring() != SemiringKind::Rational {
        return Err(Error::Capability {
            semiring: file.semiring().name(),
            operation,
        });
    }
    Ok(file)
}

fn resolve_prior(
    file: &ExperimentFile,
    args: &PriorArgs,
    f: &Kernel<Rational>,
) -> finmarkov::Result<Option<(String, Kernel<Rational>)>> {
    match (&args.prior, args.uniform) {
        (Some(name), _) => Ok(Some((name.clone(), file.state(name)?))),
        (None, true) => Ok(Some(("uniform".into(), uniform_prior(f.dom())))),
        (None, false) => Ok(None),
    }
}

fn require_prior(
    file: &ExperimentFile,
    args: &PriorArgs,
    f: &Kernel<Rational>,
) -> finmarkov::Result<(String, Kernel<Rational>)> {
    resolve_prior(file, args, f)?
        .ok_or_else(|| Error::Precondition("a prior is required: pass --prior NAME or --uniform".into()))
}

pub fn compare(args: &CompareArgs) -> finmarkov::Result<Outcome> {
    let file = rational_file(&args.file, "comparison")?;
    let f: Kernel<Rational> = file.kernel(&args.f)?;
    let g: Kernel<Rational> = file.kernel(&args.g)?;
    let prior = resolve_prior(&file, &args.prior, &f)?;
    let mode = args
        .mode
        .unwrap_or(if prior.is_some() { Mode::As } else { Mode::Plain });
    let (witness, mode_name, prior_name) = match mode {
        Mode::Plain => (find_garbling(&f, &g)?, "plain", None),
        Mode::As => {
            let (name, m) = prior
                .ok_or_else(|| Error::Precondition("mode as needs a prior: pass --prior NAME or --uniform".into()))?;
            (find_garbling_as(&f, &g, &m)?, "as", Some(name))
        }
        Mode::Bayes => (find_garbling_bayes(&f, &g)?, "bayes", Some("uniform".to_string())),
    };
    let yes = witness.is_some();
    let stdout = if args.json {
        to_json(&json!({
            "command": "compare",
            "f": args.f,
            "g": args.g,
            "mode": mode_name,
            "prior": prior_name,
            "more_informative": yes,
            "witness": witness.as_ref().map(kernel_to_value),
        }))
    } else {
        let relation = match mode {
            Mode::Plain => "c ∘ f = g".to_string(),
            _ => format!("c ∘ f = g almost surely under {}", prior_name.as_deref().unwrap_or("")),
        };
        let mut out = format!("{} {} {} ({mode_name})\n", args.f, if yes { "⪰" } else { "⋡" }, args.g);
        match &witness {
            Some(c) => {
                out.push_str(&format!("witness with {relation}:\n"));
                out.push_str(&render::kernel("c", c));
            }
            None => out.push_str(&format!("no garbling c with {relation}\n")),
        }
        out
    };
    Ok(Outcome::new(yes, stdout))
}

pub fn standard_measure_cmd(args: &MeasureArgs) -> finmarkov::Result<Outcome> {
    let file = rational_file(&args.file, "standard measure")?;
    let f: Kernel<Rational> = file.kernel(&args.f)?;
    let (prior_name, m) = require_prior(&file, &args.prior, &f)?;
    let md = standard_measure(&f, &m)?;
    let stdout = if args.json {
        to_json(&json!({
            "command": "standard-measure",
            "f": args.f,
            "prior": prior_name,
            "theta": f.dom().labels(),
            "measure": meta_to_value(&md),
        }))
    } else {
        format!(
            "standard measure of {} under {prior_name} over ({})\n{}\n≈ {}\n",
            args.f,
            f.dom().labels().join(","),
            render::meta(&md),
            render::meta_approx(&md)
        )
    };
    Ok(Outcome::new(true, stdout))
}

fn bss_json(args: &BssArgs, prior: &str, report: &BssReport) -> Value {
    json!({
        "command": "bss",
        "f": args.f,
        "g": args.g,
        "prior": prior,
        "theta": report.f_measure.theta().labels(),
        "f_measure": meta_to_value(&report.f_measure),
        "g_measure": meta_to_value(&report.g_measure),
        "garbling": report.garbling.as_ref().map(kernel_to_value),
        "dilation": report.dilation.as_ref().map(dilation_to_value),
        "garbling_exists": report.garbling_exists(),
        "dilation_exists": report.dilation_exists(),
        "plain": report.plain,
        "constructive": report.constructive.as_ref().map(|c| json!({
            "dilation_from_garbling": c.dilation_from_garbling,
            "garbling_from_dilation": c.garbling_from_dilation,
        })),
        "equivalence_confirmed": report.consistent(),
    })
}

fn bss_text(args: &BssArgs, prior: &str, report: &BssReport) -> String {
    let found = |b: bool| if b { "found" } else { "none" };
    let mut out = format!("{} vs {} under {prior}\n", args.f, args.g);
    out.push_str(&format!("standard measure of {}:\n", args.f));
    out.push_str(&render::meta_block(&report.f_measure, "  "));
    out.push_str(&format!("standard measure of {}:\n", args.g));
    out.push_str(&render::meta_block(&report.g_measure, "  "));
    out.push_str(&format!(
        "garbling c with c ∘ f = g almost surely: {}\n",
        found(report.garbling_exists())
    ));
    if let Some(c) = &report.garbling {
        out.push_str(&render::kernel("c", c));
    }
    out.push_str(&format!(
        "dilation of the {} measure onto the {} measure: {}\n",
        args.g,
        args.f,
        found(report.dilation_exists())
    ));
    if let Some(t) = &report.dilation {
        out.push_str(&render::dilation(t, "  "));
    }
    if let Some(plain) = report.plain {
        out.push_str(&format!(
            "plain comparison (prior has full support): {}\n",
            found(plain)
        ));
    }
    if let Some(c) = &report.constructive {
        let ok = |b: bool| if b { "ok" } else { "FAILED" };
        out.push_str(&format!(
            "garbling to dilation: {}; dilation to garbling: {}\n",
            ok(c.dilation_from_garbling),
            ok(c.garbling_from_dilation)
        ));
    }
    out.push_str(if report.consistent() {
        "equivalence confirmed\n"
    } else {
        "equivalence VIOLATED\n"
    });
    out
}

pub fn bss(args: &BssArgs) -> finmarkov::Result<Outcome> {
    let file = rational_file(&args.file, "bss")?;
    let f: Kernel<Rational> = file.kernel(&args.f)?;
    let g: Kernel<Rational> = file.kernel(&args.g)?;
    let (prior, m) = require_prior(&file, &args.prior, &f)?;
    let report = bss_check(&f, &g, &m)?;
    if !report.consistent() {
        return Err(Error::Precondition(format!(
            "garbling and dilation verdicts disagree:\n{}",
            bss_text(args, &prior, &report)
        )));
    }
    let stdout = if args.json {
        to_json(&bss_json(args, &prior, &report))
    } else {
        bss_text(args, &prior, &report)
    };
    Ok(Outcome::new(report.garbling_exists(), stdout))
}

fn evaluate<S: Semiring>(file: &ExperimentFile, name: &str, property: Property) -> finmarkov::Result<bool> {
    let k: Kernel<S> = file.morphism(name)?;
    match property {
        Property::Deterministic => Ok(k.is_deterministic()),
        Property::Dirac => Ok(k.is_dirac_valued()),
        Property::DetGivenLeft => is_deterministic_given(&k, Side::Left),
        Property::DetGivenRight => is_deterministic_given(&k, Side::Right),
    }
}

pub fn check(args: &CheckArgs) -> finmarkov::Result<Outcome> {
    let file = ExperimentFile::load(&args.file)?;
    let holds = match file.semiring() {
        SemiringKind::Rational => evaluate::<Rational>(&file, &args.kernel, args.property)?,
        SemiringKind::TriLattice => evaluate::<TriLattice>(&file, &args.kernel, args.property)?,
        SemiringKind::PairRational => evaluate::<Pair<Rational>>(&file, &args.kernel, args.property)?,
    };
    let stdout = if args.json {
        to_json(&json!({
            "command": "check",
            "kernel": args.kernel,
            "property": args.property.name(),
            "semiring": file.semiring().name(),
            "holds": holds,
        }))
    } else {
        format!("{} {}: {holds}\n", args.kernel, args.property.name())
    };
    Ok(Outcome::new(holds, stdout))
}

/// Per-instance agreement counts of the random suite.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteSummary {
    pub instances: usize,
    pub feasible: usize,
    pub bss_agree: usize,
    pub constructive_ok: usize,
    pub sufficiency_agree: usize,
}

impl SuiteSummary {
    pub fn all_agree(&self) -> bool {
        self.bss_agree == self.instances
            && self.sufficiency_agree == self.instances
            && self.constructive_ok == self.feasible
    }
}

pub fn run_suite(seed: u64, count: usize) -> finmarkov::Result<SuiteSummary> {
    let mut summary = SuiteSummary::default();
    for inst in corpus(seed, count) {
        let report = bss_check(&inst.f, &inst.g, &inst.m)?;
        summary.instances += 1;
        summary.bss_agree += usize::from(report.agree);
        if report.garbling_exists() {
            summary.feasible += 1;
            summary.constructive_ok += usize::from(
                report
                    .constructive
                    .as_ref()
                    .is_some_and(|c| c.dilation_from_garbling && c.garbling_from_dilation),
            );
        }
        let statistic = search_sufficiency(&inst.f, &inst.g, &inst.m)?.is_some();
        let independence = search_conditional_independence(&inst.f, &inst.g, &inst.m)?.is_some();
        summary.sufficiency_agree +=
            usize::from(statistic == report.garbling_exists() && independence == report.garbling_exists());
    }
    Ok(summary)
}

pub fn suite(args: &SuiteArgs) -> finmarkov::Result<Outcome> {
    let seed = args.seed.unwrap_or_else(seed_from_env);
    let s = run_suite(seed, args.count)?;
    let stdout = if args.json {
        to_json(&json!({
            "command": "suite",
            "seed": seed,
            "instances": s.instances,
            "feasible": s.feasible,
            "bss_agree": s.bss_agree,
            "constructive_ok": s.constructive_ok,
            "sufficiency_agree": s.sufficiency_agree,
            "all_agree": s.all_agree(),
        }))
    } else {
        format!(
            "seed {seed} ({SEED_VAR}), {} instances, {} with a garbling\n\
             garbling vs dilation verdicts agree: {}/{}\n\
             constructive directions verified: {}/{}\n\
             sufficiency conditions agree: {}/{}\n",
            s.instances,
            s.feasible,
            s.bss_agree,
            s.instances,
            s.constructive_ok,
            s.feasible,
            s.sufficiency_agree,
            s.instances
        )
    };
    Ok(Outcome::new(s.all_agree(), stdout))
}

pub fn run(cli: &Cli) -> finmarkov::Result<Outcome> {
    match &cli.command {
        Command::Compare(a) => compare(a),
        Command::StandardMeasure(a) => standard_measure_cmd(a),
        Command::Bss(a) => bss(a),
        Command::Check(a) => check(a),
        Command::Suite(a) => suite(a),
    }
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
