use super::{clamp_epsilon, optimal_alpha, Algorithm, BoostConfig, Columns};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::hypothesis::{Ensemble, VoteRule, WeakHypothesis};
use crate::learners::LearnerSpec;
use crate::trace::{BoostTrace, EarlyStop, MarginTracker, RoundRecord};
use crate::weights::{error_mass, WeightDistribution};

#[derive(Debug, Clone)]
pub struct MirrorDescentRun {
    pub ensemble: Ensemble,
    pub trace: BoostTrace,
    /// Dual iterate after each round: the alpha-weighted average of the
    /// chosen grid vertices, indexed like `StumpGrid::new(data)`.
    pub dual_average: Vec<Vec<f64>>,
    /// `f(W_{t-1}) = max_j W_{t-1}^T eta_j` at each round.
    pub max_edges: Vec<f64>,
}

/// Largest edge of any grid stump under `w`.
pub fn max_edge(data: &Dataset, w: &WeightDistribution) -> Result<f64> {
    if w.len() != data.len() {
        return Err(Error::LengthMismatch { expected: data.len(), found: w.len() });
    }
    Ok(Columns::new(data)?.best(w.as_slice()).1)
}

/// Mirror descent on `f(W) = max_j W^T eta_j` over the simplex with the
/// negative-entropy mirror map, taking the optimal alpha as step size.
///
/// Works over the stump grid only, since the dual lives on its vertices.
pub fn mirror_descent_boost(data: &Dataset, cfg: &BoostConfig) -> Result<MirrorDescentRun> {
    cfg.validate()?;
    if cfg.learner != LearnerSpec::Stump {
        return Err(Error::InvalidConfig("mirror descent needs the stump grid".into()));
    }
    let columns = Columns::new(data)?;
    let n = columns.grid.len();
    let mut ensemble = Ensemble::new(VoteRule::Sign);
    let mut trace = BoostTrace::new(Algorithm::Mirror, cfg.clone());
    let mut margins = MarginTracker::new(data);
    let mut dual_average = Vec::new();
    let mut max_edges = Vec::new();
    let mut dual_mass = vec![0.0; n];
    let mut alpha_sum = 0.0;
    let mut w = WeightDistribution::uniform(data.len());
    for t in 1..=cfg.rounds {
        let (j, top) = columns.best(w.as_slice());
        let eta = &columns.eta[j];
        let epsilon = error_mass(w.as_slice(), eta);
        if cfg.not_weak(epsilon) {
            trace.stopped = Some(EarlyStop { t, epsilon });
            break;
        }
        max_edges.push(top);
        let (eps_c, clamped) = clamp_epsilon(epsilon, cfg.eps_clamp);
        let alpha = optimal_alpha(eps_c)?;
        // gradient of the entropy mirror map is log W + 1; the constant
        // cancels in the normalization
        let logits: Vec<f64> =
            w.as_slice().iter().zip(eta.iter()).map(|(wi, e)| wi.ln() + 1.0 - alpha * e).collect();
        let next = WeightDistribution::from_log_weights(&logits)?;
        let z: f64 = w.as_slice().iter().zip(eta.iter()).map(|(wi, e)| wi * (-alpha * e).exp()).sum();

        dual_mass[j] += alpha;
        alpha_sum += alpha;
        dual_average.push(dual_mass.iter().map(|v| v / alpha_sum).collect());

        let hypothesis = WeakHypothesis::Stump(columns.grid.get(j));
        ensemble.push(alpha, hypothesis.clone())?;
        margins.add(data, alpha, &hypothesis);
        trace.rounds.push(RoundRecord {
            t,
            w_before: w,
            w_after: next.clone(),
            epsilon,
            alpha,
            z,
            edge: top,
            hypothesis_id: hypothesis.key(),
            hypothesis,
            min_margin_l1: margins.min_normalized(data),
            clamped,
        });
        w = next;
    }
    Ok(MirrorDescentRun { ensemble, trace, dual_average, max_edges })
}
