use super::{clamp_epsilon, optimal_alpha, Algorithm, BoostConfig};
use crate::data::Dataset;
use crate::error::Result;
use crate::hypothesis::{dichotomy_of, weighted_error, Ensemble, VoteRule, WeakHypothesis};
use crate::learners::WeakLearner;
use crate::trace::{BoostTrace, EarlyStop, MarginTracker, RoundRecord};
use crate::weights::{dot, WeightDistribution};

/// One transition `W_{t-1} -> W_t` of binary discrete AdaBoost.
#[derive(Debug, Clone)]
pub(crate) struct DiscreteStep {
    pub hypothesis: WeakHypothesis,
    pub epsilon: f64,
    pub alpha: f64,
    pub z: f64,
    pub edge: f64,
    pub clamped: bool,
    pub weights: WeightDistribution,
}

pub(crate) fn discrete_step(
    data: &Dataset,
    w: &WeightDistribution,
    learner: &dyn WeakLearner,
    eps_clamp: f64,
) -> Result<DiscreteStep> {
    let hypothesis = learner.fit(data, w)?;
    let eta = dichotomy_of(&hypothesis, data)?;
    let epsilon = weighted_error(&hypothesis, data, w)?;
    let (eps_c, clamped) = clamp_epsilon(epsilon, eps_clamp);
    let alpha = optimal_alpha(eps_c)?;
    let unnorm: Vec<f64> =
        w.as_slice().iter().zip(eta.iter()).map(|(wi, e)| wi * (-alpha * e).exp()).collect();
    let z: f64 = unnorm.iter().sum();
    let weights = WeightDistribution::from_unnormalized(unnorm)?;
    let edge = dot(w.as_slice(), &eta);
    Ok(DiscreteStep { hypothesis, epsilon, alpha, z, edge, clamped, weights })
}

/// Binary discrete AdaBoost with the configured learner.
pub fn adaboost_discrete(data: &Dataset, cfg: &BoostConfig) -> Result<(Ensemble, BoostTrace)> {
    adaboost_discrete_with(data, cfg, &cfg.learner)
}

/// Binary discrete AdaBoost with an arbitrary weak learner.
pub fn adaboost_discrete_with(
    data: &Dataset,
    cfg: &BoostConfig,
    learner: &dyn WeakLearner,
) -> Result<(Ensemble, BoostTrace)> {
    cfg.validate()?;
    data.require_binary()?;
    let mut ensemble = Ensemble::new(VoteRule::Sign);
    let mut trace = BoostTrace::new(Algorithm::Discrete, cfg.clone());
    let mut margins = MarginTracker::new(data);
    let mut w = WeightDistribution::uniform(data.len());
    for t in 1..=cfg.rounds {
        let step = discrete_step(data, &w, learner, cfg.eps_clamp)?;
        if cfg.not_weak(step.epsilon) {
            trace.stopped = Some(EarlyStop { t, epsilon: step.epsilon });
            break;
        }
        ensemble.push(step.alpha, step.hypothesis.clone())?;
        margins.add(data, step.alpha, &step.hypothesis);
        trace.rounds.push(RoundRecord {
            t,
            w_before: w,
            w_after: step.weights.clone(),
            epsilon: step.epsilon,
            alpha: step.alpha,
            z: step.z,
            edge: step.edge,
            hypothesis_id: step.hypothesis.key(),
            hypothesis: step.hypothesis,
            min_margin_l1: margins.min_normalized(data),
            clamped: step.clamped,
        });
        w = step.weights;
    }
    Ok((ensemble, trace))
}
