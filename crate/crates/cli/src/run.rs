use crate::config::{AlgoChoice, RunConfig};
use crate::error::{CliError, CliResult};
use crate::ingest::{describe, emit_csv, ingest_csv, ingest_regression_csv};
use crate::output::{num, write_csv, write_json, write_text};
use crate::trace_file::TraceFile;
use multiboost::boosters::{
    adaboost_discrete, adaboost_gradient_view, adaboost_m1, adaboost_real, mirror_descent_boost, poe_boost,
};
use multiboost::datasets::{smoother_problem, toy_problem};
use multiboost::dynamics::detect_trace_cycle;
use multiboost::kernel_boost::{boost_regression, boosting_kernel, kernel_estimate, SmootherState};
use multiboost::{Algorithm, BoostConfig, BoostTrace, Dataset, Ensemble};
use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use std::path::Path;

pub fn toygen(n: usize, out: &Path) -> CliResult<String> {
    let data = toy_problem(n)?;
    emit_csv(&data, out)?;
    Ok(format!("wrote {} ({})", out.display(), describe(&data)))
}

pub fn boost(algo: Algorithm, data: &Dataset, cfg: &BoostConfig) -> CliResult<(Ensemble, BoostTrace)> {
    Ok(match algo {
        Algorithm::Discrete => adaboost_discrete(data, cfg)?,
        Algorithm::M1 => adaboost_m1(data, cfg)?,
        Algorithm::Real => adaboost_real(data, cfg)?,
        Algorithm::Gradient => adaboost_gradient_view(data, cfg)?,
        Algorithm::Mirror => {
            let run = mirror_descent_boost(data, cfg)?;
            (run.ensemble, run.trace)
        }
        Algorithm::Poe => poe_boost(data, cfg)?,
    })
}

/// Runs the configured booster and writes its trace to `out`.
pub fn run(cfg: &RunConfig, out: &Path) -> CliResult<String> {
    cfg.validate()?;
    let algo = match cfg.algo {
        AlgoChoice::Kernel => return run_kernel(cfg, out),
        AlgoChoice::Boost(a) => a,
    };
    let path = cfg.data.as_deref().expect("validated");
    let data = ingest_csv(path)?;
    let (ens, trace) = boost(algo, &data, &cfg.boost_config()?)?;
    write_text(out, &TraceFile::from_trace(&trace, cfg).to_json()?)?;
    let cycle = detect_trace_cycle(&trace, cfg.cycle_tol);
    let mut summary = format!(
        "{algo}: {} rounds on {}, training error {}",
        trace.len(),
        describe(&data),
        ens.training_error(&data)?
    );
    if let Some(stop) = trace.stopped {
        summary.push_str(&format!(", stopped at t={} (epsilon {})", stop.t, stop.epsilon));
    }
    if cycle.entered {
        summary.push_str(&format!(", weight cycle from T0={} with period {}", cycle.entry_time, cycle.period));
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelRound {
    pub t: usize,
    pub residual_norm: f64,
    /// `||H_t - kernel_estimate(P_t, sigma2, y)||_inf`.
    pub kernel_gap: f64,
    pub h: Vec<f64>,
}

/// Boosted fits `H_1..H_rounds`, each compared with the one-shot estimate
/// under the boosting kernel of the same order.
pub fn kernel_rounds(p: DMatrix<f64>, y: &DVector<f64>, sigma2: f64, rounds: usize) -> CliResult<Vec<KernelRound>> {
    let st = SmootherState::new(p, sigma2)?;
    let fits = boost_regression(y, &st, rounds)?;
    fits.into_iter()
        .enumerate()
        .map(|(k, h)| {
            let t = k + 1;
            let direct = kernel_estimate(&boosting_kernel(&st, t)?, sigma2, y)?;
            Ok(KernelRound { t, residual_norm: (y - &h).norm(), kernel_gap: (&h - direct).amax(), h: h.as_slice().to_vec() })
        })
        .collect()
}

fn kernel_problem(cfg: &RunConfig) -> CliResult<(DMatrix<f64>, DVector<f64>)> {
    match &cfg.data {
        // linear kernel on the features
        Some(path) => {
            let (xs, ys) = ingest_regression_csv(path)?;
            let x = DMatrix::from_fn(xs.len(), xs[0].len(), |i, j| xs[i][j]);
            Ok((&x * x.transpose(), DVector::from_vec(ys)))
        }
        None => Ok(smoother_problem(cfg.dim, cfg.sigma2, cfg.seed)?),
    }
}

#[derive(Serialize)]
struct KernelMeta<'a> {
    algo: &'static str,
    seed: u64,
    config: &'a RunConfig,
}

#[derive(Serialize)]
struct KernelTrace<'a> {
    meta: KernelMeta<'a>,
    rounds: Vec<KernelRound>,
}

fn run_kernel(cfg: &RunConfig, out: &Path) -> CliResult<String> {
    let (p, y) = kernel_problem(cfg)?;
    let m = y.len();
    let rounds = kernel_rounds(p, &y, cfg.sigma2, cfg.rounds)?;
    let gap = max_gap(&rounds)?;
    write_json(out, &KernelTrace { meta: KernelMeta { algo: "kernel", seed: cfg.seed, config: cfg }, rounds })?;
    Ok(format!("kernel: {} rounds on {m} points, max gap to the kernel estimate {gap:e}", cfg.rounds))
}

fn max_gap(rounds: &[KernelRound]) -> CliResult<f64> {
    let gap = rounds.iter().map(|r| r.kernel_gap).fold(0.0, f64::max);
    if !gap.is_finite() {
        return Err(CliError::Numeric("kernel fits are not finite".into()));
    }
    Ok(gap)
}

/// Seeded synthetic instance; writes `kernel_demo.csv` under `out_dir`.
pub fn kernel_demo(dim: usize, sigma2: f64, rounds: usize, seed: u64, out_dir: &Path) -> CliResult<String> {
    if rounds == 0 {
        return Err(CliError::Config("rounds must be >= 1".into()));
    }
    let (p, y) = smoother_problem(dim, sigma2, seed)?;
    let rows = kernel_rounds(p, &y, sigma2, rounds)?;
    let gap = max_gap(&rows)?;
    crate::output::ensure_dir(out_dir)?;
    let path = out_dir.join("kernel_demo.csv");
    write_csv(
        &path,
        &["t", "residual_norm", "kernel_gap"],
        rows.iter().map(|r| vec![r.t.to_string(), num(&r.residual_norm), num(&r.kernel_gap)]),
    )?;
    Ok(format!("kernel demo: m={dim}, sigma2={sigma2}, {rounds} rounds, max gap {gap:e}; wrote {}", path.display()))
}
