use super::{clamp_epsilon, Algorithm, BoostConfig};
use crate::data::Dataset;
use crate::error::Result;
use crate::hypothesis::{correctness, weighted_error, Ensemble, VoteRule};
use crate::learners::WeakLearner;
use crate::trace::{BoostTrace, EarlyStop, MarginTracker, RoundRecord};
use crate::weights::{dot, WeightDistribution};

/// Multiclass AdaBoost.M1.
///
/// With `beta_t = eps_t / (1 - eps_t)`, correctly classified samples are
/// scaled by `beta_t` and the weights are renormalized by their exact sum.
/// Hypothesis `h_t` votes with weight `log(1 / beta_t)`.
pub fn adaboost_m1(data: &Dataset, cfg: &BoostConfig) -> Result<(Ensemble, BoostTrace)> {
    cfg.validate()?;
    let learner: &dyn WeakLearner = &cfg.learner;
    let mut ensemble = Ensemble::new(VoteRule::Plurality { labels: data.label_set() });
    let mut trace = BoostTrace::new(Algorithm::M1, cfg.clone());
    let mut margins = MarginTracker::new(data);
    let mut w = WeightDistribution::uniform(data.len());
    for t in 1..=cfg.rounds {
        let h = learner.fit(data, &w)?;
        let eta = correctness(&h, data)?;
        let epsilon = weighted_error(&h, data, &w)?;
        if cfg.not_weak(epsilon) {
            trace.stopped = Some(EarlyStop { t, epsilon });
            break;
        }
        let (eps_c, clamped) = clamp_epsilon(epsilon, cfg.eps_clamp);
        let beta = eps_c / (1.0 - eps_c);
        let unnorm: Vec<f64> = w
            .as_slice()
            .iter()
            .zip(eta.as_slice())
            .map(|(wi, &e)| if e > 0 { wi * beta } else { *wi })
            .collect();
        let z: f64 = unnorm.iter().sum();
        let next = WeightDistribution::from_unnormalized(unnorm)?;
        let vote = (1.0 / beta).ln();
        ensemble.push(vote, h.clone())?;
        margins.add(data, vote, &h);
        trace.rounds.push(RoundRecord {
            t,
            edge: dot(w.as_slice(), &eta),
            w_before: w,
            w_after: next.clone(),
            epsilon,
            alpha: vote,
            z,
            hypothesis_id: h.key(),
            hypothesis: h,
            min_margin_l1: margins.min_normalized(data),
            clamped,
        });
        w = next;
    }
    Ok((ensemble, trace))
}
