//! Points on the probability simplex and ±1 correctness patterns.

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Maximum allowed deviation of a weight vector's sum from one.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// A probability vector over the training samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightDistribution(Vec<f64>);

impl WeightDistribution {
    pub fn uniform(m: usize) -> Self {
        assert!(m > 0, "uniform distribution needs m >= 1");
        Self(vec![1.0 / m as f64; m])
    }

    /// Checks nonnegativity and `|sum - 1| <= SIMPLEX_TOL`.
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        if let Some(v) = w.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidWeights(format!("entry {v} is negative or non-finite")));
        }
        let s: f64 = w.iter().sum();
        if (s - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidWeights(format!("entries sum to {s}")));
        }
        Ok(Self(w))
    }

    /// Divides by the exact running sum.
    pub fn from_unnormalized(mut w: Vec<f64>) -> Result<Self> {
        if let Some(v) = w.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidWeights(format!("entry {v} is negative or non-finite")));
        }
        let s: f64 = w.iter().sum();
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidWeights(format!("cannot normalize, sum is {s}")));
        }
        w.iter_mut().for_each(|v| *v /= s);
        Ok(Self(w))
    }

    /// Exponentiates log-weights after shifting by their maximum, then normalizes.
    pub fn from_log_weights(logw: &[f64]) -> Result<Self> {
        let max = logw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(Error::InvalidWeights("log-weights have no finite maximum".into()));
        }
        Self::from_unnormalized(logw.iter().map(|l| (l - max).exp()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn is_interior(&self) -> bool {
        self.0.iter().all(|&v| v > 0.0)
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// `KL(self || other) = sum_i p_i log(p_i / q_i)`, with `0 log 0 = 0`.
    pub fn kl(&self, other: &Self) -> f64 {
        kl_divergence(&self.0, &other.0)
    }
}

pub fn kl_divergence(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .filter(|(pi, _)| **pi > 0.0)
        .map(|(pi, qi)| pi * (pi / qi).ln())
        .sum()
}

/// `eta_i = y_i h(x_i)`: +1 where the hypothesis is right, -1 where it is wrong.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dichotomy(Vec<i8>);

impl Dichotomy {
    pub fn new(eta: Vec<i8>) -> Result<Self> {
        if let Some(v) = eta.iter().find(|v| **v != 1 && **v != -1) {
            return Err(Error::InvalidWeights(format!("dichotomy entry {v} is not ±1")));
        }
        Ok(Self(eta))
    }

    pub(crate) fn from_correct(correct: impl Iterator<Item = bool>) -> Self {
        Self(correct.map(|c| if c { 1 } else { -1 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().map(|&v| v as f64)
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|v| -v).collect())
    }
}

/// `w^T eta`, equal to `1 - 2 * weighted_error` for the hypothesis behind `eta`.
pub fn edge(w: &WeightDistribution, eta: &Dichotomy) -> Result<f64> {
    if w.len() != eta.len() {
        return Err(Error::LengthMismatch { expected: w.len(), found: eta.len() });
    }
    Ok(dot(w.as_slice(), eta))
}

/// Weight on the samples `eta` gets wrong; `+ 0.0` turns the empty sum's
/// `-0.0` into `0.0`.
pub(crate) fn error_mass(w: &[f64], eta: &Dichotomy) -> f64 {
    w.iter().zip(eta.as_slice()).filter(|(_, &e)| e < 0).map(|(wi, _)| wi).sum::<f64>() + 0.0
}

pub(crate) fn dot(w: &[f64], eta: &Dichotomy) -> f64 {
    w.iter().zip(eta.iter()).map(|(a, b)| a * b).sum()
}

/// Weights over `(sample, wrong label)` pairs.
///
/// The pair domain is `{(i, y) : y != y_i}`. Pairs of sample `i` are stored
/// contiguously, with the wrong labels in ascending label order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairWeightDistribution {
    weights: WeightDistribution,
    labels: Vec<Label>,
    sample_labels: Vec<Label>,
}

impl PairWeightDistribution {
    /// `W_0(i, y) = 1 / (m (K - 1))`.
    pub fn uniform(data: &Dataset) -> Self {
        let labels = data.label_set();
        let n = data.len() * (labels.len() - 1);
        Self {
            weights: WeightDistribution::uniform(n),
            labels,
            sample_labels: data.labels().to_vec(),
        }
    }

    pub fn with_weights(&self, weights: WeightDistribution) -> Result<Self> {
        if weights.len() != self.weights.len() {
            return Err(Error::LengthMismatch { expected: self.weights.len(), found: weights.len() });
        }
        Ok(Self { weights, labels: self.labels.clone(), sample_labels: self.sample_labels.clone() })
    }

    pub fn weights(&self) -> &WeightDistribution {
        &self.weights
    }

    pub fn n_samples(&self) -> usize {
        self.sample_labels.len()
    }

    fn per_sample(&self) -> usize {
        self.labels.len() - 1
    }

    /// Iterates `(sample, wrong label, weight)`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, Label, f64)> + '_ {
        let k = self.per_sample();
        self.sample_labels.iter().enumerate().flat_map(move |(i, &yi)| {
            self.labels
                .iter()
                .filter(move |&&y| y != yi)
                .enumerate()
                .map(move |(j, &y)| (i, y, self.weights.get(i * k + j)))
        })
    }

    pub fn get(&self, i: usize, y: Label) -> Option<f64> {
        if y == self.sample_labels[i] {
            return None;
        }
        let j = self.labels.iter().filter(|&&l| l != self.sample_labels[i]).position(|&l| l == y)?;
        Some(self.weights.get(i * self.per_sample() + j))
    }

    /// Per-sample mass `D_i = sum_y W(i, y)`, renormalized.
    pub fn sample_marginal(&self) -> WeightDistribution {
        let k = self.per_sample();
        let d: Vec<f64> = self.weights.as_slice().chunks(k).map(|c| c.iter().sum()).collect();
        WeightDistribution::from_unnormalized(d).expect("pair weights are a distribution")
    }
}
