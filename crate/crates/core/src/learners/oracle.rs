use super::stump::TIE_TOL;
use super::WeakLearner;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::hypothesis::{weighted_error, WeakHypothesis};
use crate::weights::WeightDistribution;

/// Exhaustive weighted-error minimizer over a finite class.
///
/// Ties within `TIE_TOL` go to the earliest hypothesis in enumeration order.
pub fn oracle_best_hypothesis(
    data: &Dataset,
    w: &WeightDistribution,
    class: &[WeakHypothesis],
) -> Result<WeakHypothesis> {
    if class.is_empty() {
        return Err(Error::EmptyHypothesisClass);
    }
    let errors = class
        .iter()
        .map(|h| weighted_error(h, data, w))
        .collect::<Result<Vec<_>>>()?;
    let best = errors.iter().cloned().fold(f64::INFINITY, f64::min);
    let pick = errors.iter().position(|&e| e <= best + TIE_TOL).expect("nonempty");
    Ok(class[pick].clone())
}

/// Weak learner that searches a fixed enumerated class.
#[derive(Debug, Clone)]
pub struct OracleLearner {
    pub class: Vec<WeakHypothesis>,
}

impl WeakLearner for OracleLearner {
    fn fit(&self, data: &Dataset, w: &WeightDistribution) -> Result<WeakHypothesis> {
        oracle_best_hypothesis(data, w, &self.class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::{train_stump, DecisionStump, StumpGrid};

    fn d1() -> Dataset {
        Dataset::binary(vec![vec![0.0], vec![1.0], vec![2.0]], vec![1, -1, 1]).unwrap()
    }

    #[test]
    fn picks_better_of_complement_pair() {
        let h = WeakHypothesis::Stump(DecisionStump::new(0, 0.5, 1));
        let neg = WeakHypothesis::Stump(DecisionStump::new(0, 0.5, -1));
        let w = WeightDistribution::uniform(3);
        let best = oracle_best_hypothesis(&d1(), &w, &[h, neg.clone()]).unwrap();
        assert_eq!(best, neg);
    }

    #[test]
    fn tie_goes_to_first() {
        let d = Dataset::binary(vec![vec![0.0], vec![1.0]], vec![1, -1]).unwrap();
        let a = WeakHypothesis::Stump(DecisionStump::constant(0, 1));
        let b = WeakHypothesis::Stump(DecisionStump::constant(0, -1));
        let w = WeightDistribution::uniform(2);
        assert_eq!(oracle_best_hypothesis(&d, &w, &[b.clone(), a.clone()]).unwrap(), b);
        assert_eq!(oracle_best_hypothesis(&d, &w, &[a.clone(), b]).unwrap(), a);
    }

    #[test]
    fn singleton_and_empty() {
        let a = WeakHypothesis::Stump(DecisionStump::constant(0, -1));
        let w = WeightDistribution::uniform(3);
        assert_eq!(oracle_best_hypothesis(&d1(), &w, std::slice::from_ref(&a)).unwrap(), a);
        assert_eq!(oracle_best_hypothesis(&d1(), &w, &[]), Err(Error::EmptyHypothesisClass));
    }

    #[test]
    fn agrees_with_train_stump_on_d1() {
        let d = d1();
        let grid = StumpGrid::new(&d).hypotheses();
        for w in [vec![1.0 / 3.0; 3], vec![0.25, 0.5, 0.25], vec![0.6, 0.3, 0.1]] {
            let w = WeightDistribution::new(w).unwrap();
            let o = oracle_best_hypothesis(&d, &w, &grid).unwrap();
            assert_eq!(o, WeakHypothesis::Stump(train_stump(&d, &w)));
        }
    }
}
