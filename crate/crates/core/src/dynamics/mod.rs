//! The boosting weight update viewed as a map on the simplex.

mod birkhoff;
mod cycle;

pub use birkhoff::{birkhoff_average, cycle_mean};
pub use cycle::{
    detect_cycle, detect_sequence_cycle, detect_trace_cycle, CycleReport, SequenceCycle,
    DEFAULT_CYCLE_TOL,
};

use crate::boosters::{discrete_step, DEFAULT_EPS_CLAMP, HALF_TOL};
use crate::data::Dataset;
use crate::error::Result;
use crate::hypothesis::WeakHypothesis;
use crate::learners::WeakLearner;
use crate::trace::BoostTrace;
use crate::weights::WeightDistribution;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub struct MapStep {
    pub weights: WeightDistribution,
    pub epsilon: f64,
    pub hypothesis: WeakHypothesis,
    /// The best hypothesis is no better than chance, so `w` maps to itself.
    pub fixed_point: bool,
}

/// One boosting transition `w -> A(w)`: fit, score, reweight, normalize.
pub fn weight_map(w: &WeightDistribution, data: &Dataset, learner: &dyn WeakLearner) -> Result<MapStep> {
    weight_map_with(w, data, learner, DEFAULT_EPS_CLAMP)
}

pub fn weight_map_with(
    w: &WeightDistribution,
    data: &Dataset,
    learner: &dyn WeakLearner,
    eps_clamp: f64,
) -> Result<MapStep> {
    let step = discrete_step(data, w, learner, eps_clamp)?;
    let fixed_point = (step.epsilon - 0.5).abs() <= HALF_TOL;
    Ok(MapStep {
        weights: if fixed_point { w.clone() } else { step.weights },
        epsilon: step.epsilon,
        hypothesis: step.hypothesis,
        fixed_point,
    })
}

/// `w0, A(w0), .., A^steps(w0)`, stopping early at a fixed point.
pub fn iterate_map(
    w0: &WeightDistribution,
    data: &Dataset,
    learner: &dyn WeakLearner,
    steps: usize,
) -> Result<Vec<WeightDistribution>> {
    let mut orbit = vec![w0.clone()];
    for _ in 0..steps {
        let step = weight_map(orbit.last().expect("nonempty"), data, learner)?;
        orbit.push(step.weights);
        if step.fixed_point {
            break;
        }
    }
    Ok(orbit)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeBoundRow {
    /// 1-based round; `edge` uses the weights entering this round.
    pub t: usize,
    pub edge: f64,
    /// `2^-(t+1)`.
    pub bound: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeBoundReport {
    pub rows: Vec<EdgeBoundRow>,
    pub fraction_satisfied: f64,
    pub min_edge: f64,
}

impl EdgeBoundReport {
    pub fn violations(&self) -> impl Iterator<Item = &EdgeBoundRow> {
        self.rows.iter().filter(|r| !r.satisfied)
    }
}

/// Compares each round's edge with `2^-(t+1)`, `t` numbered from 1 as in the
/// trace. Violations are reported, never raised.
pub fn edge_lower_bound_check(trace: &BoostTrace) -> EdgeBoundReport {
    let rows: Vec<EdgeBoundRow> = trace
        .rounds
        .iter()
        .map(|r| {
            let bound = 0.5f64.powi(r.t as i32 + 1);
            EdgeBoundRow { t: r.t, edge: r.edge, bound, satisfied: r.edge >= bound - 1e-12 }
        })
        .collect();
    let ok = rows.iter().filter(|r| r.satisfied).count();
    let fraction_satisfied = if rows.is_empty() { 1.0 } else { ok as f64 / rows.len() as f64 };
    let min_edge = rows.iter().map(|r| r.edge).fold(f64::INFINITY, f64::min);
    EdgeBoundReport { rows, fraction_satisfied, min_edge }
}
