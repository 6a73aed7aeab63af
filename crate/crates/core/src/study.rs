//! How agreement inside the boosting sequence varies with tree depth.

use crate::analysis::{kappa_matrix, mean_off_diagonal};
use crate::boosters::{adaboost_discrete, adaboost_m1, BoostConfig, HALF_TOL};
use crate::data::Dataset;
use crate::dynamics::{detect_sequence_cycle, detect_trace_cycle, CycleReport, SequenceCycle};
use crate::error::{Error, Result};
use crate::hypothesis::{argmax_label, Ensemble};
use crate::learners::LearnerSpec;
use crate::trace::{BoostTrace, EarlyStop};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct DepthReport {
    pub depth: usize,
    pub rounds_run: usize,
    pub stopped: Option<EarlyStop>,
    pub kappa_matrix: Vec<Vec<f64>>,
    pub mean_kappa: Option<f64>,
    /// Training accuracy of each weak hypothesis alone.
    pub estimator_accuracy: Vec<f64>,
    /// Training accuracy of the first `k` terms, `k = 1..=rounds_run`.
    pub ensemble_accuracy: Vec<f64>,
    pub weight_cycle: CycleReport,
    pub hypothesis_cycle: Option<SequenceCycle>,
    /// Orbit index of the final weights when the run halted because the
    /// best hypothesis scored exactly one half: the update then leaves the
    /// weights in place, a cycle of period one.
    pub fixed_point_at: Option<usize>,
}

impl DepthReport {
    /// Earliest orbit index known to lie on a cycle, counting a halting
    /// fixed point as one.
    pub fn cycle_entry(&self) -> Option<usize> {
        let detected = self.weight_cycle.entered.then_some(self.weight_cycle.entry_time);
        match (detected, self.fixed_point_at) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Boosts depth-`d` trees for each requested depth, in parallel. Multiclass
/// data uses the multiclass booster, binary data the discrete one.
pub fn depth_study(data: &Dataset, depths: &[usize], rounds: usize, cycle_tol: f64) -> Result<Vec<DepthReport>> {
    if depths.is_empty() {
        return Err(Error::InvalidConfig("no depths given".into()));
    }
    depths.par_iter().map(|&d| depth_run(data, d, rounds, cycle_tol)).collect()
}

fn depth_run(data: &Dataset, depth: usize, rounds: usize, cycle_tol: f64) -> Result<DepthReport> {
    let cfg = BoostConfig { rounds, learner: LearnerSpec::Tree { depth }, ..Default::default() };
    let (ens, trace) = if data.is_binary() { adaboost_discrete(data, &cfg)? } else { adaboost_m1(data, &cfg)? };
    let hs: Vec<_> = ens.terms().iter().map(|t| t.hypothesis.clone()).collect();
    let km = kappa_matrix(&hs, data)?;
    let estimator_accuracy = hs
        .iter()
        .map(|h| {
            let ok = (0..data.len()).filter(|&i| h.predict(data.x(i)) == Some(data.y(i))).count();
            ok as f64 / data.len() as f64
        })
        .collect();
    Ok(DepthReport {
        depth,
        rounds_run: trace.len(),
        stopped: trace.stopped,
        mean_kappa: mean_off_diagonal(&km),
        kappa_matrix: km,
        estimator_accuracy,
        ensemble_accuracy: prefix_accuracy(&ens, data),
        weight_cycle: detect_trace_cycle(&trace, cycle_tol),
        hypothesis_cycle: detect_sequence_cycle(&trace.hypothesis_ids()),
        fixed_point_at: trace
            .stopped
            .filter(|s| (s.epsilon - 0.5).abs() <= HALF_TOL)
            .map(|s| s.t - 1),
    })
}

/// Accuracy of every prefix, accumulating votes one term at a time.
pub fn prefix_accuracy(ens: &Ensemble, data: &Dataset) -> Vec<f64> {
    let labels = data.label_set();
    let mut votes = vec![vec![0.0; labels.len()]; data.len()];
    let mut out = Vec::with_capacity(ens.len());
    for term in ens.terms() {
        let mut ok = 0;
        for (i, v) in votes.iter_mut().enumerate() {
            for (j, &y) in labels.iter().enumerate() {
                v[j] += term.alpha * term.hypothesis.plausibility(data.x(i), y);
            }
            if argmax_label(&labels, v) == data.y(i) {
                ok += 1;
            }
        }
        out.push(ok as f64 / data.len() as f64);
    }
    out
}

/// Orbit entry time of a run's weight cycle, if any.
pub fn cycle_entry(trace: &BoostTrace, tol: f64) -> Option<usize> {
    let r = detect_trace_cycle(trace, tol);
    r.entered.then_some(r.entry_time)
}
