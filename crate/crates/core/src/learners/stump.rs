use crate::data::{Dataset, Label};
use crate::hypothesis::WeakHypothesis;
use crate::weights::WeightDistribution;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Two weighted errors closer than this are treated as tied, and the tie
/// goes to the earlier candidate in grid order.
pub const TIE_TOL: f64 = 1e-12;

/// Axis-aligned threshold classifier: predicts `polarity` when
/// `x[feature] >= threshold` and `-polarity` otherwise.
///
/// A threshold of `-inf` makes the stump constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionStump {
    pub feature: usize,
    #[serde(serialize_with = "ser_threshold", deserialize_with = "de_threshold")]
    pub threshold: f64,
    pub polarity: Label,
}

// -inf is not representable in JSON; it is written as null.
fn ser_threshold<S: Serializer>(t: &f64, s: S) -> Result<S::Ok, S::Error> {
    if t.is_finite() {
        s.serialize_some(t)
    } else {
        s.serialize_none()
    }
}

fn de_threshold<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NEG_INFINITY))
}

impl DecisionStump {
    pub fn new(feature: usize, threshold: f64, polarity: Label) -> Self {
        assert!(polarity == 1 || polarity == -1, "polarity must be ±1");
        Self { feature, threshold, polarity }
    }

    pub fn constant(feature: usize, polarity: Label) -> Self {
        Self::new(feature, f64::NEG_INFINITY, polarity)
    }

    pub fn predict(&self, x: &[f64]) -> Label {
        if x[self.feature] >= self.threshold {
            self.polarity
        } else {
            -self.polarity
        }
    }

    pub fn key(&self) -> String {
        format!("stump[f={},t={:?},p={:+}]", self.feature, self.threshold, self.polarity)
    }
}

/// Midpoints of consecutive distinct sorted values, preceded by `-inf`.
pub fn thresholds(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite features"));
    v.dedup();
    std::iter::once(f64::NEG_INFINITY)
        .chain(v.windows(2).map(|p| p[0] + (p[1] - p[0]) / 2.0))
        .collect()
}

/// Every distinct stump behavior on a sample, in tie-break order: feature,
/// then threshold (`-inf` first), then polarity `+1` before `-1`.
#[derive(Debug, Clone)]
pub struct StumpGrid {
    stumps: Vec<DecisionStump>,
}

impl StumpGrid {
    pub fn new(data: &Dataset) -> Self {
        let mut stumps = Vec::new();
        for f in 0..data.dim() {
            for t in thresholds((0..data.len()).map(|i| data.x(i)[f])) {
                stumps.push(DecisionStump::new(f, t, 1));
                stumps.push(DecisionStump::new(f, t, -1));
            }
        }
        Self { stumps }
    }

    pub fn len(&self) -> usize {
        self.stumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stumps.is_empty()
    }

    pub fn stumps(&self) -> &[DecisionStump] {
        &self.stumps
    }

    pub fn get(&self, id: usize) -> DecisionStump {
        self.stumps[id]
    }

    pub fn position(&self, stump: &DecisionStump) -> Option<usize> {
        self.stumps.iter().position(|s| s == stump)
    }

    pub fn hypotheses(&self) -> Vec<WeakHypothesis> {
        self.stumps.iter().copied().map(WeakHypothesis::Stump).collect()
    }
}

fn exact_error(s: &DecisionStump, data: &Dataset, w: &WeightDistribution) -> f64 {
    (0..data.len()).filter(|&i| s.predict(data.x(i)) != data.y(i)).map(|i| w.get(i)).sum()
}

/// Minimum weighted-error stump over the canonical grid.
///
/// Errors are first swept per feature in sorted order; the near-minimal
/// candidates are then re-evaluated in sample order so that ties resolve
/// exactly as an exhaustive search would.
pub fn train_stump(data: &Dataset, w: &WeightDistribution) -> DecisionStump {
    assert!(data.is_binary(), "train_stump needs binary labels");
    assert_eq!(w.len(), data.len(), "weights and samples differ in length");
    let m = data.len();
    let total: f64 = w.as_slice().iter().sum();
    let neg_mass: f64 = (0..m).filter(|&i| data.y(i) == -1).map(|i| w.get(i)).sum();

    let mut candidates: Vec<(DecisionStump, f64)> = Vec::new();
    let mut order: Vec<usize> = (0..m).collect();
    for f in 0..data.dim() {
        order.sort_by(|&a, &b| data.x(a)[f].partial_cmp(&data.x(b)[f]).expect("finite features"));
        // error of polarity +1 with everything at or above the threshold
        let mut err_plus = neg_mass;
        candidates.push((DecisionStump::new(f, f64::NEG_INFINITY, 1), err_plus));
        candidates.push((DecisionStump::new(f, f64::NEG_INFINITY, -1), total - err_plus));
        let mut k = 0;
        while k < m {
            let v = data.x(order[k])[f];
            while k < m && data.x(order[k])[f] == v {
                let i = order[k];
                if data.y(i) == 1 {
                    err_plus += w.get(i);
                } else {
                    err_plus -= w.get(i);
                }
                k += 1;
            }
            if k < m {
                let next = data.x(order[k])[f];
                let t = v + (next - v) / 2.0;
                candidates.push((DecisionStump::new(f, t, 1), err_plus));
                candidates.push((DecisionStump::new(f, t, -1), total - err_plus));
            }
        }
    }

    let approx_min = candidates.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let near: Vec<(DecisionStump, f64)> = candidates
        .into_iter()
        .filter(|c| c.1 <= approx_min + 1e-9)
        .map(|(s, _)| (s, exact_error(&s, data, w)))
        .collect();
    let best = near.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    near.into_iter().find(|c| c.1 <= best + TIE_TOL).expect("grid is never empty").0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1() -> Dataset {
        Dataset::binary(vec![vec![0.0], vec![1.0], vec![2.0]], vec![1, -1, 1]).unwrap()
    }

    #[test]
    fn grid_layout() {
        let g = StumpGrid::new(&d1());
        assert_eq!(g.len(), 6);
        assert_eq!(g.get(0), DecisionStump::constant(0, 1));
        assert_eq!(g.get(1), DecisionStump::constant(0, -1));
        assert_eq!(g.get(2), DecisionStump::new(0, 0.5, 1));
        assert_eq!(g.get(5), DecisionStump::new(0, 1.5, -1));
    }

    #[test]
    fn d1_uniform_picks_constant() {
        let s = train_stump(&d1(), &WeightDistribution::uniform(3));
        assert_eq!(s, DecisionStump::constant(0, 1));
    }

    #[test]
    fn d1_reweighted() {
        let w = WeightDistribution::new(vec![0.25, 0.5, 0.25]).unwrap();
        let s = train_stump(&d1(), &w);
        assert_eq!(s, DecisionStump::new(0, 0.5, -1));
        assert!((exact_error(&s, &d1(), &w) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn separable_reaches_zero() {
        let d = Dataset::binary(vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]], vec![-1, -1, 1, 1])
            .unwrap();
        let w = WeightDistribution::uniform(4);
        let s = train_stump(&d, &w);
        assert_eq!(exact_error(&s, &d, &w), 0.0);
        assert_eq!(s, DecisionStump::new(0, 1.5, 1));
    }

    #[test]
    fn duplicate_values_share_a_threshold() {
        assert_eq!(thresholds([1.0, 0.0, 1.0, 0.0].into_iter()), vec![f64::NEG_INFINITY, 0.5]);
    }

    #[test]
    fn constant_stump_predicts_everywhere() {
        let s = DecisionStump::constant(1, -1);
        assert_eq!(s.predict(&[0.0, -1e300]), -1);
    }
}
