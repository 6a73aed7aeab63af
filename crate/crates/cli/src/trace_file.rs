//! On-disk trace format.
//!
//! ```text
//! {meta: {algo, seed, config, stopped},
//!  rounds: [{t, epsilon, alpha, z, edge, clamped, min_margin_l1, hypothesis, w}]}
//! ```
//!
//! `w` is the weight vector after the round. Stump hypotheses carry
//! `feature`, `threshold` (null for the constant stump) and `polarity`; trees
//! carry a text dump and the structure needed to evaluate them again.

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use multiboost::hypothesis::{Plausibility, VoteRule};
use multiboost::learners::{DecisionStump, DecisionTree};
use multiboost::trace::EarlyStop;
use multiboost::{Algorithm, BoostTrace, Dataset, Ensemble, RoundRecord, WeakHypothesis, WeightDistribution};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceFile {
    pub meta: Meta,
    pub rounds: Vec<RoundOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub algo: Algorithm,
    pub seed: u64,
    pub config: RunConfig,
    #[serde(default)]
    pub stopped: Option<EarlyStop>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundOut {
    pub t: usize,
    pub epsilon: f64,
    pub alpha: f64,
    pub z: f64,
    pub edge: f64,
    #[serde(default)]
    pub clamped: bool,
    #[serde(default)]
    pub min_margin_l1: f64,
    pub hypothesis: HypothesisOut,
    pub w: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HypothesisOut {
    Stump { feature: usize, threshold: Option<f64>, polarity: i32 },
    Tree { dump: String, model: DecisionTree },
    Plausibility { dump: String, model: Plausibility },
}

impl From<&WeakHypothesis> for HypothesisOut {
    fn from(h: &WeakHypothesis) -> Self {
        match h {
            WeakHypothesis::Stump(s) => HypothesisOut::Stump {
                feature: s.feature,
                threshold: s.threshold.is_finite().then_some(s.threshold),
                polarity: s.polarity,
            },
            WeakHypothesis::Tree(t) => HypothesisOut::Tree { dump: t.dump(), model: t.clone() },
            WeakHypothesis::Plausibility(p) => HypothesisOut::Plausibility { dump: h.key(), model: p.clone() },
        }
    }
}

impl HypothesisOut {
    pub fn to_hypothesis(&self) -> CliResult<WeakHypothesis> {
        Ok(match self {
            HypothesisOut::Stump { feature, threshold, polarity } => {
                if *polarity != 1 && *polarity != -1 {
                    return Err(CliError::Malformed(format!("stump polarity {polarity} is not +-1")));
                }
                WeakHypothesis::Stump(DecisionStump::new(*feature, threshold.unwrap_or(f64::NEG_INFINITY), *polarity))
            }
            HypothesisOut::Tree { model, .. } => WeakHypothesis::Tree(model.clone()),
            HypothesisOut::Plausibility { model, .. } => WeakHypothesis::Plausibility(model.clone()),
        })
    }
}

impl TraceFile {
    pub fn from_trace(trace: &BoostTrace, config: &RunConfig) -> Self {
        let rounds = trace
            .rounds
            .iter()
            .map(|r| RoundOut {
                t: r.t,
                epsilon: r.epsilon,
                alpha: r.alpha,
                z: r.z,
                edge: r.edge,
                clamped: r.clamped,
                min_margin_l1: r.min_margin_l1,
                hypothesis: (&r.hypothesis).into(),
                w: r.w_after.as_slice().to_vec(),
            })
            .collect();
        TraceFile {
            meta: Meta { algo: trace.algo, seed: config.seed, config: config.clone(), stopped: trace.stopped },
            rounds,
        }
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let tf: TraceFile = serde_json::from_str(text)?;
        for (k, r) in tf.rounds.iter().enumerate() {
            if r.t != k + 1 {
                return Err(CliError::Malformed(format!("round {} out of order (expected t = {})", r.t, k + 1)));
            }
            if r.w.len() != tf.rounds[0].w.len() {
                return Err(CliError::Malformed(format!("round {} has {} weights", r.t, r.w.len())));
            }
        }
        Ok(tf)
    }

    /// The in-memory trace, with `W_0` taken as uniform.
    pub fn to_trace(&self) -> CliResult<BoostTrace> {
        let cfg = self.meta.config.boost_config()?;
        let mut trace = BoostTrace::new(self.meta.algo, cfg);
        trace.stopped = self.meta.stopped;
        let mut prev = match self.rounds.first() {
            Some(r) => WeightDistribution::uniform(r.w.len()),
            None => return Ok(trace),
        };
        for r in &self.rounds {
            let w_after = WeightDistribution::new(r.w.clone())
                .map_err(|e| CliError::Malformed(format!("round {}: {e}", r.t)))?;
            let hypothesis = r.hypothesis.to_hypothesis()?;
            trace.rounds.push(RoundRecord {
                t: r.t,
                w_before: prev,
                w_after: w_after.clone(),
                epsilon: r.epsilon,
                alpha: r.alpha,
                z: r.z,
                edge: r.edge,
                hypothesis_id: hypothesis.key(),
                hypothesis,
                min_margin_l1: r.min_margin_l1,
                clamped: r.clamped,
            });
            prev = w_after;
        }
        Ok(trace)
    }

    /// The voted classifier the trace describes.
    pub fn ensemble(&self, data: &Dataset) -> CliResult<Ensemble> {
        let rule = match self.meta.algo {
            Algorithm::M1 => VoteRule::Plurality { labels: data.label_set() },
            Algorithm::Real => VoteRule::PlausibilityArgmax { labels: data.label_set() },
            _ => VoteRule::Sign,
        };
        let mut ens = Ensemble::new(rule);
        for r in &self.rounds {
            ens.push(r.alpha, r.hypothesis.to_hypothesis()?)?;
        }
        Ok(ens)
    }
}
