use super::{clamp_epsilon, optimal_alpha, Algorithm, BoostConfig};
use crate::data::Dataset;
use crate::error::Result;
use crate::hypothesis::{dichotomy_of, weighted_error, Ensemble, VoteRule};
use crate::learners::WeakLearner;
use crate::trace::{BoostTrace, EarlyStop, MarginTracker, RoundRecord};
use crate::weights::{dot, WeightDistribution};

/// Probability the expert with coefficient `alpha` assigns to a wrong label:
/// `e^-alpha / (e^-alpha + e^alpha)`. At the optimal alpha it equals the
/// weighted error.
pub fn poe_expert_error(alpha: f64) -> f64 {
    let (lo, hi) = ((-alpha).exp(), alpha.exp());
    lo / (lo + hi)
}

/// Incremental product-of-experts learning. Each sample is reweighted by the
/// probability `1 - P(y_i | x_i, h_t)` that the new expert gets it wrong.
pub fn poe_boost(data: &Dataset, cfg: &BoostConfig) -> Result<(Ensemble, BoostTrace)> {
    cfg.validate()?;
    data.require_binary()?;
    let mut ensemble = Ensemble::new(VoteRule::Sign);
    let mut trace = BoostTrace::new(Algorithm::Poe, cfg.clone());
    let mut margins = MarginTracker::new(data);
    let mut w = WeightDistribution::uniform(data.len());
    for t in 1..=cfg.rounds {
        let hypothesis = cfg.learner.fit(data, &w)?;
        let eta = dichotomy_of(&hypothesis, data)?;
        let epsilon = weighted_error(&hypothesis, data, &w)?;
        if cfg.not_weak(epsilon) {
            trace.stopped = Some(EarlyStop { t, epsilon });
            break;
        }
        let (eps_c, clamped) = clamp_epsilon(epsilon, cfg.eps_clamp);
        let alpha = optimal_alpha(eps_c)?;
        let partition = (-alpha).exp() + alpha.exp();
        let unnorm: Vec<f64> = w
            .as_slice()
            .iter()
            .zip(eta.iter())
            .map(|(wi, e)| wi * ((-alpha * e).exp() / partition))
            .collect();
        let z: f64 = unnorm.iter().sum();
        let next = WeightDistribution::from_unnormalized(unnorm)?;
        ensemble.push(alpha, hypothesis.clone())?;
        margins.add(data, alpha, &hypothesis);
        trace.rounds.push(RoundRecord {
            t,
            edge: dot(w.as_slice(), &eta),
            w_before: w,
            w_after: next.clone(),
            epsilon,
            alpha,
            z,
            hypothesis_id: hypothesis.key(),
            hypothesis,
            min_margin_l1: margins.min_normalized(data),
            clamped,
        });
        w = next;
    }
    Ok((ensemble, trace))
}
