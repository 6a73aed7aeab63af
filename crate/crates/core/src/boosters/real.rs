use super::{clamp_epsilon, Algorithm, BoostConfig};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::hypothesis::{Ensemble, Plausibility, VoteRule, WeakHypothesis};
use crate::learners::WeakLearner;
use crate::trace::{BoostTrace, EarlyStop, MarginTracker, RoundRecord};
use crate::weights::{PairWeightDistribution, WeightDistribution};

fn checked(h: &WeakHypothesis, x: &[f64], y: i32) -> Result<f64> {
    let v = h.plausibility(x, y);
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidPlausibility(v));
    }
    Ok(v)
}

/// `1/2 sum_{(i, y): y != y_i} W(i, y) (1 - h(x_i, y_i) + h(x_i, y))`.
pub fn pseudo_loss(h: &WeakHypothesis, data: &Dataset, pw: &PairWeightDistribution) -> Result<f64> {
    if pw.n_samples() != data.len() {
        return Err(Error::LengthMismatch { expected: data.len(), found: pw.n_samples() });
    }
    let mut total = 0.0;
    for (i, y, w) in pw.pairs() {
        let x = data.x(i);
        total += w * (1.0 - checked(h, x, data.y(i))? + checked(h, x, y)?);
    }
    Ok(0.5 * total)
}

/// Real AdaBoost where each round one-hot encodes the configured learner,
/// trained on the per-sample marginal of the pair weights.
pub fn adaboost_real(data: &Dataset, cfg: &BoostConfig) -> Result<(Ensemble, BoostTrace)> {
    let learner = cfg.learner;
    adaboost_real_with(data, cfg, &|d: &Dataset, pw: &PairWeightDistribution| {
        let h = learner.fit(d, &pw.sample_marginal())?;
        Ok(Plausibility::OneHot(Box::new(h)))
    })
}

/// Real AdaBoost with an arbitrary plausibility learner.
///
/// `alpha_t = (1 - eps_t) / eps_t` drives the pair-weight update, and the
/// final vote weight is `log(alpha_t)`, which is nonnegative whenever the
/// pseudo-loss is at most one half.
pub fn adaboost_real_with(
    data: &Dataset,
    cfg: &BoostConfig,
    learner: &dyn Fn(&Dataset, &PairWeightDistribution) -> Result<Plausibility>,
) -> Result<(Ensemble, BoostTrace)> {
    cfg.validate()?;
    let labels = data.label_set();
    let mut ensemble = Ensemble::new(VoteRule::PlausibilityArgmax { labels });
    let mut trace = BoostTrace::new(Algorithm::Real, cfg.clone());
    let mut margins = MarginTracker::new(data);
    let mut pw = PairWeightDistribution::uniform(data);
    for t in 1..=cfg.rounds {
        let h = WeakHypothesis::Plausibility(learner(data, &pw)?);
        let epsilon = pseudo_loss(&h, data, &pw)?;
        if cfg.not_weak(epsilon) {
            trace.stopped = Some(EarlyStop { t, epsilon });
            break;
        }
        let (eps_c, clamped) = clamp_epsilon(epsilon, cfg.eps_clamp);
        let log_alpha = ((1.0 - eps_c) / eps_c).ln();
        let mut unnorm = Vec::with_capacity(pw.weights().len());
        for (i, y, w) in pw.pairs() {
            let x = data.x(i);
            let exponent = 0.5 * (1.0 - h.plausibility(x, data.y(i)) + h.plausibility(x, y));
            unnorm.push(w * (exponent * log_alpha).exp());
        }
        let z: f64 = unnorm.iter().sum();
        let next = pw.with_weights(WeightDistribution::from_unnormalized(unnorm)?)?;
        ensemble.push(log_alpha, h.clone())?;
        margins.add(data, log_alpha, &h);
        trace.rounds.push(RoundRecord {
            t,
            w_before: pw.weights().clone(),
            w_after: next.weights().clone(),
            epsilon,
            alpha: log_alpha,
            z,
            edge: 1.0 - 2.0 * epsilon,
            hypothesis_id: h.key(),
            hypothesis: h,
            min_margin_l1: margins.min_normalized(data),
            clamped,
        });
        pw = next;
    }
    Ok((ensemble, trace))
}
