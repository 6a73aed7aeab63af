use crate::error::{CliError, CliResult};
use crate::ingest::{describe, ingest_csv};
use crate::output::{ensure_dir, num, write_csv, write_json, write_matrix};
use multiboost::datasets::{gaussian_blobs, BlobSpec};
use multiboost::study::depth_study;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct StudyOptions {
    pub data: Option<PathBuf>,
    pub depths: Vec<usize>,
    pub rounds: usize,
    pub seed: u64,
    pub cycle_tol: f64,
    pub out: PathBuf,
    /// Synthetic blobs used when no data file is given.
    pub blobs: BlobSpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct DepthSummary {
    pub depth: usize,
    pub rounds_run: usize,
    pub mean_kappa: Option<f64>,
    /// Earliest orbit index on a cycle, counting a halting fixed point.
    pub cycle_entry: Option<usize>,
    pub weight_cycle_period: Option<usize>,
    pub fixed_point_at: Option<usize>,
    pub ensemble_accuracy: f64,
    pub best_estimator_accuracy: f64,
}

/// Per depth: `kappa_depth<d>.csv` and `accuracy_depth<d>.csv`; overall
/// `depth_summary.csv` and `summary.json`.
pub fn run_study(opts: &StudyOptions) -> CliResult<(String, Vec<DepthSummary>)> {
    if opts.rounds == 0 {
        return Err(CliError::Config("rounds must be >= 1".into()));
    }
    if opts.depths.is_empty() || opts.depths.contains(&0) {
        return Err(CliError::Config("depths must be a non-empty list of positive integers".into()));
    }
    let data = match &opts.data {
        Some(p) => ingest_csv(p)?,
        None => gaussian_blobs(&opts.blobs, opts.seed)?,
    };
    let reports = depth_study(&data, &opts.depths, opts.rounds, opts.cycle_tol)?;
    ensure_dir(&opts.out)?;
    let mut summaries = Vec::with_capacity(reports.len());
    for r in &reports {
        write_matrix(&opts.out.join(format!("kappa_depth{}.csv", r.depth)), &r.kappa_matrix)?;
        write_csv(
            &opts.out.join(format!("accuracy_depth{}.csv", r.depth)),
            &["k", "estimator_accuracy", "ensemble_accuracy"],
            r.estimator_accuracy
                .iter()
                .zip(&r.ensemble_accuracy)
                .enumerate()
                .map(|(k, (e, a))| vec![(k + 1).to_string(), num(e), num(a)]),
        )?;
        summaries.push(DepthSummary {
            depth: r.depth,
            rounds_run: r.rounds_run,
            mean_kappa: r.mean_kappa,
            cycle_entry: r.cycle_entry(),
            weight_cycle_period: r.weight_cycle.entered.then_some(r.weight_cycle.period),
            fixed_point_at: r.fixed_point_at,
            ensemble_accuracy: r.ensemble_accuracy.last().copied().unwrap_or(0.0),
            best_estimator_accuracy: r.estimator_accuracy.iter().cloned().fold(0.0, f64::max),
        });
    }
    let opt = |v: Option<f64>| v.map(|x| num(&x)).unwrap_or_default();
    write_csv(
        &opts.out.join("depth_summary.csv"),
        &["depth", "rounds_run", "mean_kappa", "cycle_entry", "ensemble_accuracy"],
        summaries.iter().map(|s| {
            vec![
                s.depth.to_string(),
                s.rounds_run.to_string(),
                opt(s.mean_kappa),
                s.cycle_entry.map(|c| c.to_string()).unwrap_or_default(),
                num(&s.ensemble_accuracy),
            ]
        }),
    )?;
    write_json(&opts.out.join("summary.json"), &summaries)?;
    let mut line = format!("depth study on {}:", describe(&data));
    for s in &summaries {
        line.push_str(&format!(
            " depth {} mean kappa {} cycle entry {};",
            s.depth,
            s.mean_kappa.map_or("n/a".into(), |k| format!("{k:.3}")),
            s.cycle_entry.map_or("none".into(), |c| c.to_string())
        ));
    }
    line.pop();
    Ok((line, summaries))
}
