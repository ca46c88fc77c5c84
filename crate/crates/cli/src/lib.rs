//! Command-line harness: argument grammar, dispatch and JSON reports.
//!
//! [`run`] never touches the process: it returns the exit code and the text
//! meant for stdout and stderr, so tests can drive it directly.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stgr::exact::{SearchError, DEFAULT_BUDGET};
use stgr::rational::{parse_rational, Rational};
use thiserror::Error;

mod bench;
mod commands;
pub mod report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "stgr", version, about = "Periodic temporal graph labelings with bounded stretch")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Search budget in leaf labelings.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Where to write the witness, instance or CSV file.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stretch of a labeled graph.
    Eval {
        #[arg(long, short)]
        input: PathBuf,
        /// Include the full duration matrix.
        #[arg(long)]
        durations: bool,
    },
    /// Radius labeling with its stretch certificate.
    Radius {
        #[arg(long, short)]
        input: PathBuf,
        /// 1-based root; must be a center.
        #[arg(long, conflicts_with = "best_root")]
        root: Option<usize>,
        /// Try every center and keep the lowest stretch.
        #[arg(long)]
        best_root: bool,
    },
    /// Exhaustive search on small instances.
    Exact {
        #[command(subcommand)]
        mode: ExactMode,
    },
    /// Relabel at most k edges to reach stretch α0.
    LocalSearch {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, value_parser = rational_arg)]
        alpha0: Rational,
        /// Zones up to this size are searched exhaustively.
        #[arg(long, default_value_t = stgr::local_search::DEFAULT_ZONE_EXHAUSTIVE_MAX)]
        zone_max: u32,
    },
    /// Sunglasses gadget with its labeling and role map.
    Gadget {
        #[arg(long)]
        delta: u32,
    },
    /// Stretch instance from a 3-coloring instance.
    Reduce3col {
        #[arg(long)]
        delta: u32,
        #[arg(long, short)]
        input: PathBuf,
        /// Vertex coloring, lines `v <vertex> <color>`.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Gadget)]
        family: FamilyArg,
    },
    /// Instance generators.
    Gen {
        #[command(subcommand)]
        model: GenModel,
    },
    /// Radius labeling against the exact optimum on a generated suite (CSV).
    Bench(BenchArgs),
}

#[derive(Subcommand, Debug)]
pub enum ExactMode {
    Decide {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_parser = rational_arg)]
        alpha: Rational,
    },
    Optimize {
        #[arg(long, short)]
        input: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    /// Diameter-2 construction (Δ = 3, target 1).
    Diam2,
    /// Sunglasses construction (target 3/2 for Δ = 3, Δ/2 otherwise).
    Gadget,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Stgr,
    Col,
}

#[derive(Args, Debug, Clone)]
pub struct GenCommon {
    #[arg(short)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub delta: u32,
    /// Attach a uniformly random labeling.
    #[arg(long)]
    pub labeled: bool,
    #[arg(long, value_enum, default_value_t = FileKind::Stgr)]
    pub format: FileKind,
}

#[derive(Subcommand, Debug)]
pub enum GenModel {
    Path(GenCommon),
    Cycle(GenCommon),
    /// A center and n-1 leaves.
    Star(GenCommon),
    Tree(GenCommon),
    Gnp {
        #[command(flatten)]
        common: GenCommon,
        #[arg(long)]
        p: f64,
    },
    /// Local-search instance encoding a hitting-set question.
    HittingSet {
        #[arg(long)]
        universe: usize,
        /// Hyperedges as `1,2;2,3`.
        #[arg(long, value_parser = sets_arg)]
        sets: SetSystem,
        #[arg(short)]
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem(pub Vec<Vec<usize>>);

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchModel {
    Tree,
    Gnp,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = BenchModel::Gnp)]
    pub model: BenchModel,
    #[arg(long, default_value_t = 4)]
    pub min_n: usize,
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// Instances per size.
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    #[arg(long, default_value_t = 3)]
    pub delta: u32,
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if r <= Rational::from_integer(0) {
        return Err(format!("{s} is not positive"));
    }
    Ok(r)
}

fn sets_arg(s: &str) -> Result<SetSystem, String> {
    let sets = s
        .split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            part.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad element {x:?}")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SetSystem(sets))
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: stgr::format::FormatError },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Radius(#[from] stgr::radius::RadiusError),
    #[error(transparent)]
    Gadget(#[from] stgr::gadgets::GadgetError),
    #[error(transparent)]
    Reduction(#[from] stgr::reductions::ReductionError),
    #[error(transparent)]
    Generate(#[from] stgr::generate::GenerateError),
    #[error(transparent)]
    HittingSet(#[from] stgr::local_search::HittingSetError),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Search(SearchError::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build() {
        Ok(p) => p,
        Err(e) => return failure(CliError::Usage(format!("thread pool: {e}"))),
    };
    match pool.install(|| commands::dispatch(&cli, echo)) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
}
