use super::{clamp_epsilon, optimal_alpha, Algorithm, BoostConfig, Columns};
use crate::data::Dataset;
use crate::error::Result;
use crate::hypothesis::{dichotomy_of, Ensemble, VoteRule, WeakHypothesis};
use crate::learners::{LearnerSpec, WeakLearner};
use crate::trace::{BoostTrace, EarlyStop, MarginTracker, RoundRecord};
use crate::weights::{dot, error_mass, WeightDistribution};

/// Stagewise descent on `C(H) = 1/m sum_i exp(-y_i H(x_i))`.
///
/// The state is the vector of unnormalized margins `y_i H_t(x_i)`; sample
/// weights are the normalized magnitudes of the cost derivative, computed
/// from it in the log domain. With the stump learner the direction is the
/// grid column maximizing `-<grad C, h>`; a tree learner has no enumerable
/// grid and is fit to those weights instead.
pub fn adaboost_gradient_view(data: &Dataset, cfg: &BoostConfig) -> Result<(Ensemble, BoostTrace)> {
    cfg.validate()?;
    data.require_binary()?;
    let columns = match cfg.learner {
        LearnerSpec::Stump => Some(Columns::new(data)?),
        LearnerSpec::Tree { .. } => None,
    };
    let mut ensemble = Ensemble::new(VoteRule::Sign);
    let mut trace = BoostTrace::new(Algorithm::Gradient, cfg.clone());
    let mut margins = MarginTracker::new(data);
    let mut f = vec![0.0; data.len()];
    let mut w = WeightDistribution::uniform(data.len());
    for t in 1..=cfg.rounds {
        let (hypothesis, eta) = match &columns {
            Some(c) => {
                let (j, _) = c.best(w.as_slice());
                (WeakHypothesis::Stump(c.grid.get(j)), c.eta[j].clone())
            }
            None => {
                let h = cfg.learner.fit(data, &w)?;
                let eta = dichotomy_of(&h, data)?;
                (h, eta)
            }
        };
        let epsilon = error_mass(w.as_slice(), &eta);
        if cfg.not_weak(epsilon) {
            trace.stopped = Some(EarlyStop { t, epsilon });
            break;
        }
        let (eps_c, clamped) = clamp_epsilon(epsilon, cfg.eps_clamp);
        let alpha = optimal_alpha(eps_c)?;
        for (fi, e) in f.iter_mut().zip(eta.iter()) {
            *fi += alpha * e;
        }
        let neg: Vec<f64> = f.iter().map(|v| -v).collect();
        let next = WeightDistribution::from_log_weights(&neg)?;
        let z: f64 = w.as_slice().iter().zip(eta.iter()).map(|(wi, e)| wi * (-alpha * e).exp()).sum();
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
