//! Command-line front end: scenario files in, CSV and report files out.
//!
//! Exit codes: 0 success, 1 configuration error, 2 solver failure,
//! 3 inapplicable prediction, 4 failed verification.

mod commands;
mod config;
mod predict;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

pub use commands::{
    cmd_classify, cmd_oracle, cmd_partition, cmd_predict, cmd_simulate, cmd_verify, Outcome,
    Tolerances,
};
pub use config::{
    AssertSpec, ClassifySpec, Config, ExpectSpec, OracleSpec, PartitionSpec, RunSpec, SetSpec,
    SolverSpec, StartSpec, SubspaceSpec, VerifySpec,
};
pub use predict::{predict, PredictReport};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "altproj", version, about = "Alternating projections: simulate, predict and verify sublinear rates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the iteration and write the trace CSV.
    Simulate(CommonArgs),
    /// Print the predicted rate.
    Predict(CommonArgs),
    /// Predict, simulate and compare.
    Verify(CommonArgs),
    /// Label plane points by the stratum receiving their projection.
    Classify(CommonArgs),
    /// Trace the region boundaries.
    Partition(CommonArgs),
    /// Run the scalar recursion.
    Oracle(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Scenario file; repeat for a batch.
    #[arg(long = "config", required = true)]
    pub configs: Vec<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Allowed deviation of the fitted exponent.
    #[arg(long)]
    pub tol_exponent: Option<f64>,
    /// Half-width of the accepted band around 1 for the limit product.
    #[arg(long)]
    pub tol_product: Option<f64>,
    /// Scenarios processed in parallel.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AtStep { source, .. } => exit_code(source),
        Error::Config(_)
        | Error::Parse { .. }
        | Error::DimensionMismatch { .. }
        | Error::ZeroDirection
        | Error::ZeroPolynomial
        | Error::NotAsserted(_)
        | Error::AssertionViolated(_)
        | Error::Io(_) => EXIT_CONFIG,
        Error::Inconclusive(_)
        | Error::Precondition(_)
        | Error::KernelDegenerate
        | Error::ZeroSeries { .. }
        | Error::NotConvenient { .. }
        | Error::MissingConstant => EXIT_INAPPLICABLE,
        Error::SolverFailure { .. }
        | Error::NoProjectionCandidate { .. }
        | Error::SingularSystem(_)
        | Error::SeriesDomain(_)
        | Error::MonotonicityViolation { .. }
        | Error::InsufficientData { .. } => EXIT_SOLVER,
    }
}

fn run_one(cmd: &Command, path: &Path, args: &CommonArgs) -> (String, i32) {
    let cfg = match Config::load(path) {
        Ok(c) => c,
        Err(e) => return (format!("error = {e}\n"), exit_code(&e)),
    };
    let tol = Tolerances {
        exponent: args.tol_exponent,
        product: args.tol_product,
    };
    let out = &args.out;
    let res = match cmd {
        Command::Simulate(_) => cmd_simulate(&cfg, out),
        Command::Predict(_) => cmd_predict(&cfg, out),
        Command::Verify(_) => cmd_verify(&cfg, out, tol),
        Command::Classify(_) => cmd_classify(&cfg, out),
        Command::Partition(_) => cmd_partition(&cfg, out),
        Command::Oracle(_) => cmd_oracle(&cfg, out),
    };
    match res {
        Ok(o) => (o.report, if o.pass { EXIT_OK } else { EXIT_VERIFY }),
        Err(e) => (format!("error = {e}\n"), exit_code(&e)),
    }
}

/// Parses `args`, runs every scenario, prints the reports and returns the
/// largest exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let cmd = &cli.command;
    let args = match cmd {
        Command::Simulate(a)
        | Command::Predict(a)
        | Command::Verify(a)
        | Command::Classify(a)
        | Command::Partition(a)
        | Command::Oracle(a) => a,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("altproj: {e}");
            return EXIT_CONFIG;
        }
    };
    let results: Vec<(String, i32)> = pool.install(|| {
        args.configs
            .par_iter()
            .map(|p| run_one(cmd, p, args))
            .collect()
    });
    let batch = args.configs.len() > 1;
    let mut code = EXIT_OK;
    for (path, (report, c)) in args.configs.iter().zip(results) {
        if batch {
            println!("[{}]", path.display());
        }
        if c == EXIT_OK || c == EXIT_VERIFY {
            print!("{report}");
        } else {
            eprint!("altproj: {}: {report}", path.display());
        }
        code = code.max(c);
    }
    code
}
