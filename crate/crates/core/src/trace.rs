//! Per-round records shared by every booster.

use crate::boosters::{Algorithm, BoostConfig};
use crate::data::{Dataset, Label};
use crate::hypothesis::WeakHypothesis;
use crate::weights::WeightDistribution;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    /// 1-based round index.
    pub t: usize,
    pub w_before: WeightDistribution,
    pub w_after: WeightDistribution,
    /// Weighted error (pseudo-loss for the real booster), before clamping.
    pub epsilon: f64,
    /// Coefficient of this round's hypothesis in the final vote.
    pub alpha: f64,
    /// Normalizer of the weight update.
    pub z: f64,
    /// `w_before^T eta_{h_t}`.
    pub edge: f64,
    pub hypothesis_id: String,
    pub hypothesis: WeakHypothesis,
    /// `min_i margin_i(H_t) / ||alpha||_1` after this round.
    pub min_margin_l1: f64,
    /// True when epsilon had to be clamped before computing alpha.
    pub clamped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EarlyStop {
    /// Round at which the learner failed to beat one half.
    pub t: usize,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostTrace {
    pub algo: Algorithm,
    pub config: BoostConfig,
    pub rounds: Vec<RoundRecord>,
    pub stopped: Option<EarlyStop>,
}

impl BoostTrace {
    pub fn new(algo: Algorithm, config: BoostConfig) -> Self {
        Self { algo, config, rounds: Vec::new(), stopped: None }
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// `W_0, W_1, .., W_T`.
    pub fn orbit(&self) -> Vec<WeightDistribution> {
        let mut out = Vec::with_capacity(self.rounds.len() + 1);
        if let Some(first) = self.rounds.first() {
            out.push(first.w_before.clone());
        }
        out.extend(self.rounds.iter().map(|r| r.w_after.clone()));
        out
    }

    pub fn hypothesis_ids(&self) -> Vec<String> {
        self.rounds.iter().map(|r| r.hypothesis_id.clone()).collect()
    }

    pub fn epsilons(&self) -> Vec<f64> {
        self.rounds.iter().map(|r| r.epsilon).collect()
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.rounds.iter().map(|r| r.alpha).collect()
    }

    pub fn edges(&self) -> Vec<f64> {
        self.rounds.iter().map(|r| r.edge).collect()
    }
}

/// Running per-sample margins, updated one term at a time.
pub(crate) struct MarginTracker {
    labels: Vec<Label>,
    votes: Vec<Vec<f64>>,
    alpha_l1: f64,
}

impl MarginTracker {
    pub fn new(data: &Dataset) -> Self {
        let labels = data.label_set();
        Self { votes: vec![vec![0.0; labels.len()]; data.len()], labels, alpha_l1: 0.0 }
    }

    pub fn add(&mut self, data: &Dataset, alpha: f64, h: &WeakHypothesis) {
        self.alpha_l1 += alpha.abs();
        for (i, v) in self.votes.iter_mut().enumerate() {
            for (j, &y) in self.labels.iter().enumerate() {
                v[j] += alpha * h.plausibility(data.x(i), y);
            }
        }
    }

    pub fn min_normalized(&self, data: &Dataset) -> f64 {
        if self.alpha_l1 == 0.0 {
            return 0.0;
        }
        let mut min = f64::INFINITY;
        for (i, v) in self.votes.iter().enumerate() {
            let yi = data.y(i);
            let mut own = 0.0;
            let mut other = f64::NEG_INFINITY;
            for (j, &y) in self.labels.iter().enumerate() {
                if y == yi {
                    own = v[j];
                } else {
                    other = other.max(v[j]);
                }
            }
            min = min.min(own - other);
        }
        min / self.alpha_l1
    }
}
