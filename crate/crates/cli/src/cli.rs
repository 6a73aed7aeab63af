use crate::analyze::{analyze, describe, AnalyzeOptions};
use crate::config::{AlgoChoice, RunConfig};
use crate::error::{CliError, CliResult};
use crate::run::{kernel_demo, run, toygen};
use crate::study::{run_study, StudyOptions};
use clap::{Args, Parser, Subcommand};
use multiboost::boosters::DEFAULT_EPS_CLAMP;
use multiboost::datasets::BlobSpec;
use multiboost::dynamics::DEFAULT_CYCLE_TOL;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "multiboost", version, about = "Boosting experiments: formulations, dynamics and diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the n x n cycling grid problem as CSV.
    Toygen {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one booster and save its trace as JSON.
    Run(RunArgs),
    /// Cycle, Birkhoff, margin, bound and similarity reports for a trace.
    Analyze {
        trace: PathBuf,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        cycle_tol: Option<f64>,
        /// Split the ensemble into blocks of this many rounds.
        #[arg(long)]
        block: Option<usize>,
    },
    /// Boost trees of several depths and compare agreement and cycling.
    DepthStudy(StudyArgs),
    /// Kernel boosting on a seeded random instance.
    KernelDemo {
        #[arg(long, default_value_t = 5)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        sigma2: f64,
        #[arg(long, default_value_t = 10)]
        rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// discrete, m1, real, gradient, mirror, poe or kernel.
    #[arg(long, default_value = "discrete")]
    pub algo: String,
    #[arg(long, default_value_t = 50)]
    pub rounds: usize,
    /// `stump` or `tree:<depth>`.
    #[arg(long, default_value = "stump")]
    pub learner: String,
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CYCLE_TOL)]
    pub cycle_tol: f64,
    #[arg(long, default_value_t = DEFAULT_EPS_CLAMP)]
    pub eps_clamp: f64,
    /// Noise variance (kernel only).
    #[arg(long, default_value_t = 1.0)]
    pub sigma2: f64,
    /// Size of the synthetic instance when kernel runs without data.
    #[arg(long, default_value_t = 5)]
    pub dim: usize,
}

#[derive(Debug, Args)]
pub struct StudyArgs {
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "1,3,6,10")]
    pub depths: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub rounds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_CYCLE_TOL)]
    pub cycle_tol: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub classes: usize,
    #[arg(long, default_value_t = 30)]
    pub per_class: usize,
    #[arg(long, default_value_t = 8)]
    pub dim: usize,
    #[arg(long, default_value_t = 2.0)]
    pub spread: f64,
}

impl RunArgs {
    pub fn to_config(&self) -> CliResult<RunConfig> {
        Ok(RunConfig {
            algo: self.algo.parse::<AlgoChoice>()?,
            rounds: self.rounds,
            learner: self.learner.clone(),
            seed: self.seed,
            data: self.data.clone(),
            cycle_tol: self.cycle_tol,
            eps_clamp: self.eps_clamp,
            sigma2: self.sigma2,
            dim: self.dim,
        })
    }
}

/// Caps the global worker pool from `MULTIBOOST_THREADS`.
pub fn configure_threads(value: Option<&str>) -> CliResult<Option<usize>> {
    let Some(v) = value else { return Ok(None) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("MULTIBOOST_THREADS='{v}' is not a positive integer")))?;
    // a pool that already exists keeps its size; only the first call counts
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(Some(n))
}

/// Executes a parsed command and returns the line to print on success.
pub fn execute(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Toygen { n, out } => toygen(n, &out),
        Command::Run(args) => run(&args.to_config()?, &args.out),
        Command::Analyze { trace, data, out, cycle_tol, block } => {
            let opts = AnalyzeOptions { trace, data, out, cycle_tol, block };
            let s = analyze(&opts)?;
            Ok(describe(&s, &opts.out))
        }
        Command::DepthStudy(a) => {
            let opts = StudyOptions {
                data: a.data,
                depths: a.depths,
                rounds: a.rounds,
                seed: a.seed,
                cycle_tol: a.cycle_tol,
                out: a.out,
                blobs: BlobSpec { classes: a.classes, per_class: a.per_class, dim: a.dim, spread: a.spread, ..BlobSpec::default() },
            };
            Ok(run_study(&opts)?.0)
        }
        Command::KernelDemo { dim, sigma2, rounds, seed, out } => kernel_demo(dim, sigma2, rounds, seed, &out),
    }
}
