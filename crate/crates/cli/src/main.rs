//! `moplan` — reproducible experiment runner.
//!
//! Three verbs: `bench` runs seeded benchmark campaigns, `plan` optimizes a
//! trajectory task file, `metrics` computes quality indicators on stored
//! fronts. Every output is a plain CSV or JSON file; identical invocations
//! produce byte-identical files.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 runtime
//! failure, 3 success with warnings (e.g. nothing feasible found).

mod campaign;
mod files;
mod metrics_cmd;
mod planning;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moplan_core::evolve::EvolveError;
use moplan_core::metrics::IgdMode;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

/// Maps optimizer errors onto exit codes: configuration problems are usage
/// errors, evaluation failures are runtime failures.
pub(crate) fn classify(error: EvolveError) -> CliError {
    match error {
        EvolveError::Evaluation(e) => CliError::Runtime(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "moplan",
    about = "Benchmark campaigns, trajectory planning, and front metrics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run (algorithm × seed) benchmark campaigns; write trace, front, and
    /// summary CSVs.
    Bench(BenchArgs),
    /// Optimize a trajectory task file; write the Pareto set, a JSON report,
    /// and a hypervolume trace.
    Plan(PlanArgs),
    /// Compute IGD and/or hypervolume for a stored front CSV.
    Metrics(MetricsArgs),
}

#[derive(Debug, Args)]
pub struct SharedArgs {
    /// Output directory (created if missing).
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Base seed; every random draw in a run derives from it.
    #[arg(long, default_value_t = 0)]
    pub seed_base: u64,
    /// Population size (even, at least 4).
    #[arg(long, default_value_t = 92)]
    pub pop: usize,
    /// Reference lattice divisions per objective axis.
    #[arg(long, default_value_t = 12)]
    pub divisions: usize,
    /// Evaluation budget per run.
    #[arg(long, default_value_t = 20_000)]
    pub budget: usize,
    /// Members promoted straight into the next generation each step.
    #[arg(long, default_value_t = 1)]
    pub focused: usize,
    /// Members excluded from selection each step.
    #[arg(long, default_value_t = 1)]
    pub nonfocused: usize,
    /// Suppress progress output on stderr.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub shared: SharedArgs,
    /// Benchmark problem: dtlz3 or wfg3.
    #[arg(long)]
    pub problem: String,
    /// Comma-separated algorithms: nsga3, nsga3-fo, moead-baseline.
    #[arg(long, default_value = "nsga3,nsga3-fo")]
    pub algos: String,
    /// Seed count (expanded from --seed-base) or explicit comma list.
    #[arg(long, default_value = "10")]
    pub seeds: String,
    /// Sample size of the analytic front used for the IGD column.
    #[arg(long, default_value_t = 1000)]
    pub front_samples: usize,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[command(flatten)]
    pub shared: SharedArgs,
    /// Task file (JSON).
    pub task: PathBuf,
    /// Arm model file (JSON); defaults to the built-in placeholder arm.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Quadrature samples per trajectory evaluation.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Optimizer driving the search.
    #[arg(long, default_value = "nsga3-fo")]
    pub algo: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IgdModeArg {
    /// Average over reference points of the distance to the front.
    Standard,
    /// Average over front points of the distance to the reference set,
    /// normalized by the reference size.
    Transposed,
}

impl From<IgdModeArg> for IgdMode {
    fn from(mode: IgdModeArg) -> Self {
        match mode {
            IgdModeArg::Standard => IgdMode::Standard,
            IgdModeArg::Transposed => IgdMode::Transposed,
        }
    }
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Front CSV (uses the f1, f2, … columns).
    #[arg(long)]
    pub front: PathBuf,
    /// Reference front CSV; enables the IGD output.
    #[arg(long)]
    pub ref_front: Option<PathBuf>,
    /// Reference point, comma-separated; enables the hypervolume output.
    #[arg(long)]
    pub ref_point: Option<String>,
    /// Which side of the front/reference pair IGD averages over.
    #[arg(long, value_enum, default_value_t = IgdModeArg::Standard)]
    pub igd_mode: IgdModeArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = match error.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };

    let outcome = match &cli.command {
        Command::Bench(args) => campaign::run_bench(args),
        Command::Plan(args) => planning::run_plan(args),
        Command::Metrics(args) => metrics_cmd::run_metrics(args),
    };
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(3),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
