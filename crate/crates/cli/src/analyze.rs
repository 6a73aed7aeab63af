//! Post-hoc analysis of a saved trace.

use crate::error::{CliError, CliResult};
use crate::ingest::ingest_csv;
use crate::output::{ensure_dir, num, write_csv, write_json, write_matrix};
use crate::trace_file::TraceFile;
use multiboost::analysis::{
    diversity, kappa_matrix, margins, mean_off_diagonal, nondecreasing_fraction, self_averaging_split,
    similarity_matrix, training_error_bound,
};
use multiboost::dynamics::{
    birkhoff_average, cycle_mean, detect_sequence_cycle, detect_trace_cycle, edge_lower_bound_check,
    SequenceCycle,
};
use multiboost::hypothesis::{HypothesisKind, Plausibility};
use multiboost::{Dataset, Ensemble, WeakHypothesis};
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub trace: PathBuf,
    /// Overrides the data path recorded in the trace.
    pub data: Option<PathBuf>,
    pub out: PathBuf,
    /// Defaults to the tolerance recorded in the trace.
    pub cycle_tol: Option<f64>,
    pub block: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleSummary {
    pub entered: bool,
    pub entry_time: usize,
    pub period: usize,
    pub tolerance: f64,
    pub distinct_hypotheses: usize,
    pub hypothesis_cycle: Vec<String>,
    /// Per-coordinate mean of the weights over one period.
    pub cycle_mean: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeBoundSummary {
    pub fraction_satisfied: f64,
    pub min_edge: f64,
    pub violations: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockSummary {
    pub block: usize,
    pub accuracies: Vec<f64>,
    pub all_interpolate: bool,
    pub full_accuracy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub algo: String,
    pub rounds: usize,
    pub cycle: CycleSummary,
    pub hypothesis_sequence_cycle: Option<SequenceCycle>,
    pub edge_bound: EdgeBoundSummary,
    pub training_error: f64,
    pub final_bound: f64,
    pub final_min_margin_l1: Option<f64>,
    pub margin_nondecreasing_fraction: f64,
    /// `similarity` for binary hypotheses, `kappa` otherwise.
    pub similarity_measure: Option<&'static str>,
    pub mean_similarity: Option<f64>,
    pub diversity: Option<f64>,
    pub blocks: Option<BlockSummary>,
}

/// The classifier behind each round, with one-hot plausibilities unwrapped.
fn discrete_hypotheses(tf: &TraceFile) -> CliResult<Option<Vec<WeakHypothesis>>> {
    let mut out = Vec::with_capacity(tf.rounds.len());
    for r in &tf.rounds {
        match r.hypothesis.to_hypothesis()? {
            WeakHypothesis::Plausibility(Plausibility::OneHot(h)) => out.push(*h),
            WeakHypothesis::Plausibility(_) => return Ok(None),
            h => out.push(h),
        }
    }
    Ok(Some(out))
}

fn margin_rows(ens: &Ensemble, data: &Dataset) -> (Vec<Vec<String>>, Vec<f64>) {
    let mut rows = Vec::with_capacity(ens.len());
    let mut mins = Vec::with_capacity(ens.len());
    for t in 1..=ens.len() {
        match margins(&ens.prefix(t), data, 1.0) {
            Ok(r) => {
                let mean = r.margins.iter().sum::<f64>() / r.margins.len() as f64;
                let nonpos = r.margins.iter().filter(|&&v| v <= 0.0).count() as f64 / r.margins.len() as f64;
                mins.push(r.min);
                rows.push(vec![t.to_string(), num(&r.min), num(&mean), num(&nonpos)]);
            }
            Err(_) => rows.push(vec![t.to_string(), String::new(), String::new(), String::new()]),
        }
    }
    (rows, mins)
}

/// Writes `summary.json`, `birkhoff.csv`, `margins.csv`, `margin_curve.csv`,
/// `bound.csv` and, when the hypotheses are discrete, `similarity.csv`.
pub fn analyze(opts: &AnalyzeOptions) -> CliResult<Summary> {
    let tf = TraceFile::read(&opts.trace)?;
    let data_path = opts
        .data
        .clone()
        .or_else(|| tf.meta.config.data.clone())
        .ok_or_else(|| CliError::Config("trace records no data path; pass --data".into()))?;
    let data = ingest_csv(&data_path)?;
    let trace = tf.to_trace()?;
    if let Some(r) = trace.rounds.first() {
        if r.w_after.len() != data.len() && r.w_after.len() != data.len() * (data.n_classes() - 1) {
            return Err(CliError::Config(format!(
                "trace has {} weights but {} has {} samples",
                r.w_after.len(),
                data_path.display(),
                data.len()
            )));
        }
    }
    let tol = opts.cycle_tol.unwrap_or(tf.meta.config.cycle_tol);
    ensure_dir(&opts.out)?;

    let orbit = trace.orbit();
    let cyc = detect_trace_cycle(&trace, tol);
    let dims = orbit.first().map_or(0, |w| w.len());
    let cycle_mean_vec = cyc.entered.then(|| (0..dims).map(|i| cycle_mean(&cyc, |w| w.get(i)).expect("entered")).collect());
    let cycle = CycleSummary {
        entered: cyc.entered,
        entry_time: cyc.entry_time,
        period: cyc.period,
        tolerance: tol,
        distinct_hypotheses: cyc.distinct_hypotheses(),
        hypothesis_cycle: cyc.hypothesis_cycle.clone(),
        cycle_mean: cycle_mean_vec,
    };

    let averages: Vec<Vec<f64>> = (0..dims).map(|i| birkhoff_average(&orbit, |w| w.get(i))).collect();
    let mut header: Vec<String> = vec!["t".into()];
    header.extend((0..dims).map(|i| format!("w{i}")));
    let refs: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(
        &opts.out.join("birkhoff.csv"),
        &refs,
        (0..orbit.len()).map(|t| std::iter::once(t.to_string()).chain(averages.iter().map(|a| num(&a[t]))).collect()),
    )?;

    let ens = tf.ensemble(&data)?;
    let (rows, mins) = margin_rows(&ens, &data);
    write_csv(&opts.out.join("margins.csv"), &["t", "min_l1", "mean_l1", "fraction_nonpositive"], rows)?;
    if let Ok(r) = margins(&ens, &data, 1.0) {
        let curve = (0..=200).map(|k| {
            let theta = -1.0 + k as f64 / 100.0;
            let frac = r.margins.iter().filter(|&&v| v <= theta).count() as f64 / r.margins.len() as f64;
            vec![num(&theta), num(&frac)]
        });
        write_csv(&opts.out.join("margin_curve.csv"), &["theta", "fraction_at_most"], curve)?;
    }

    let edge = edge_lower_bound_check(&trace);
    let eps = trace.epsilons();
    let mut bound_rows = Vec::with_capacity(trace.len());
    let mut final_bound = 1.0;
    for (k, row) in edge.rows.iter().enumerate() {
        let err = ens.prefix(k + 1).training_error(&data)?;
        final_bound = training_error_bound(&eps[..=k])?;
        bound_rows.push(vec![
            row.t.to_string(),
            num(&eps[k]),
            num(&err),
            num(&final_bound),
            num(&row.edge),
            num(&row.bound),
            row.satisfied.to_string(),
        ]);
    }
    write_csv(
        &opts.out.join("bound.csv"),
        &["t", "epsilon", "training_error", "error_bound", "edge", "edge_bound", "edge_bound_satisfied"],
        bound_rows,
    )?;

    let (mut measure, mut mean_similarity, mut div) = (None, None, None);
    if let Some(hs) = discrete_hypotheses(&tf)? {
        if !hs.is_empty() {
            let binary = hs.iter().all(|h| h.kind() == HypothesisKind::BinaryDiscrete) && data.is_binary();
            let (name, matrix) = if binary {
                ("similarity", similarity_matrix(&hs, &data)?)
            } else {
                ("kappa", kappa_matrix(&hs, &data)?)
            };
            write_matrix(&opts.out.join("similarity.csv"), &matrix)?;
            measure = Some(name);
            mean_similarity = mean_off_diagonal(&matrix);
            if binary && hs.len() >= 2 {
                div = Some(diversity(&hs, &data)?);
            }
        }
    }

    let blocks = match opts.block {
        Some(b) => {
            let parts = self_averaging_split(&ens, &data, b)?;
            Some(BlockSummary {
                block: b,
                accuracies: parts.iter().map(|p| p.train_accuracy).collect(),
                all_interpolate: parts.iter().all(|p| p.interpolates()),
                full_accuracy: ens.accuracy(&data)?,
            })
        }
        None => None,
    };

    let summary = Summary {
        algo: tf.meta.algo.to_string(),
        rounds: trace.len(),
        cycle,
        hypothesis_sequence_cycle: detect_sequence_cycle(&trace.hypothesis_ids()),
        edge_bound: EdgeBoundSummary {
            fraction_satisfied: edge.fraction_satisfied,
            min_edge: if edge.rows.is_empty() { 0.0 } else { edge.min_edge },
            violations: edge.violations().map(|r| r.t).collect(),
        },
        training_error: if ens.is_empty() { 0.0 } else { ens.training_error(&data)? },
        final_bound,
        final_min_margin_l1: mins.last().copied(),
        margin_nondecreasing_fraction: nondecreasing_fraction(&mins),
        similarity_measure: measure,
        mean_similarity,
        diversity: div,
        blocks,
    };
    write_json(&opts.out.join("summary.json"), &summary)?;
    Ok(summary)
}

pub fn describe(s: &Summary, out: &Path) -> String {
    let mut line = format!("{} rounds of {}", s.rounds, s.algo);
    if s.cycle.entered {
        line.push_str(&format!(
            "; weight cycle from T0={} with period {} ({} distinct hypotheses)",
            s.cycle.entry_time, s.cycle.period, s.cycle.distinct_hypotheses
        ));
    } else {
        line.push_str("; no weight cycle");
    }
    line.push_str(&format!("; edge bound holds on {:.1}% of rounds", 100.0 * s.edge_bound.fraction_satisfied));
    if let (Some(m), Some(v)) = (s.similarity_measure, s.mean_similarity) {
        line.push_str(&format!("; mean {m} {v:.4}"));
    }
    line.push_str(&format!("; reports in {}", out.display()));
    line
}
