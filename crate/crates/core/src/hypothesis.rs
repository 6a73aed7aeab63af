//! Weak hypotheses and the additive ensembles built from them.

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use crate::learners::{DecisionStump, DecisionTree};
use crate::weights::{Dichotomy, WeightDistribution};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisKind {
    BinaryDiscrete,
    Multiclass,
    Plausibility,
}

impl HypothesisKind {
    pub fn name(&self) -> &'static str {
        match self {
            HypothesisKind::BinaryDiscrete => "binary discrete",
            HypothesisKind::Multiclass => "multiclass",
            HypothesisKind::Plausibility => "plausibility",
        }
    }
}

/// A plausibility `h(x, y)` in `[0, 1]` that `x` belongs to class `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Plausibility {
    /// `1[h(x) = y]` for a discrete classifier.
    OneHot(Box<WeakHypothesis>),
    Constant(f64),
    /// Fixed value per label, independent of `x`; unlisted labels get 0.
    ByLabel(Vec<(Label, f64)>),
}

impl Plausibility {
    pub fn value(&self, x: &[f64], y: Label) -> f64 {
        match self {
            Plausibility::OneHot(h) => {
                if h.predict(x) == Some(y) {
                    1.0
                } else {
                    0.0
                }
            }
            Plausibility::Constant(c) => *c,
            Plausibility::ByLabel(table) => {
                table.iter().find(|(l, _)| *l == y).map(|(_, v)| *v).unwrap_or(0.0)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum WeakHypothesis {
    Stump(DecisionStump),
    Tree(DecisionTree),
    Plausibility(Plausibility),
}

impl WeakHypothesis {
    pub fn kind(&self) -> HypothesisKind {
        match self {
            WeakHypothesis::Stump(_) => HypothesisKind::BinaryDiscrete,
            WeakHypothesis::Tree(t) if t.is_binary() => HypothesisKind::BinaryDiscrete,
            WeakHypothesis::Tree(_) => HypothesisKind::Multiclass,
            WeakHypothesis::Plausibility(_) => HypothesisKind::Plausibility,
        }
    }

    /// The predicted label, or `None` for plausibilities that are not backed
    /// by a discrete classifier.
    pub fn predict(&self, x: &[f64]) -> Option<Label> {
        match self {
            WeakHypothesis::Stump(s) => Some(s.predict(x)),
            WeakHypothesis::Tree(t) => Some(t.predict(x)),
            WeakHypothesis::Plausibility(Plausibility::OneHot(h)) => h.predict(x),
            WeakHypothesis::Plausibility(_) => None,
        }
    }

    /// `h(x, y)`; discrete hypotheses are read as one-hot plausibilities.
    pub fn plausibility(&self, x: &[f64], y: Label) -> f64 {
        match self {
            WeakHypothesis::Plausibility(p) => p.value(x, y),
            _ => {
                if self.predict(x) == Some(y) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Canonical identity used in traces and cycle detection.
    pub fn key(&self) -> String {
        match self {
            WeakHypothesis::Stump(s) => s.key(),
            WeakHypothesis::Tree(t) => format!("tree[{}]", t.dump()),
            WeakHypothesis::Plausibility(Plausibility::OneHot(h)) => format!("onehot({})", h.key()),
            WeakHypothesis::Plausibility(Plausibility::Constant(c)) => format!("const({c:?})"),
            WeakHypothesis::Plausibility(Plausibility::ByLabel(t)) => format!("bylabel({t:?})"),
        }
    }

    fn require_discrete(&self) -> Result<()> {
        match self.kind() {
            HypothesisKind::Plausibility => Err(Error::KindMismatch {
                expected: "discrete hypothesis",
                found: "plausibility",
            }),
            _ => Ok(()),
        }
    }
}

/// `eta_i = y_i h(x_i)` for a binary hypothesis on binary data.
pub fn dichotomy_of(h: &WeakHypothesis, data: &Dataset) -> Result<Dichotomy> {
    data.require_binary()?;
    if h.kind() != HypothesisKind::BinaryDiscrete {
        return Err(Error::KindMismatch { expected: "binary discrete", found: h.kind().name() });
    }
    correctness(h, data)
}

/// +1 where `h(x_i) = y_i`, -1 elsewhere. Works for any discrete hypothesis.
pub fn correctness(h: &WeakHypothesis, data: &Dataset) -> Result<Dichotomy> {
    h.require_discrete()?;
    Ok(Dichotomy::from_correct((0..data.len()).map(|i| h.predict(data.x(i)) == Some(data.y(i)))))
}

/// `sum_i w_i 1[h(x_i) != y_i]`, summed in sample order.
pub fn weighted_error(h: &WeakHypothesis, data: &Dataset, w: &WeightDistribution) -> Result<f64> {
    h.require_discrete()?;
    if w.len() != data.len() {
        return Err(Error::LengthMismatch { expected: data.len(), found: w.len() });
    }
    Ok((0..data.len())
        .filter(|&i| h.predict(data.x(i)) != Some(data.y(i)))
        .map(|i| w.get(i))
        .sum::<f64>()
        // an empty float sum is -0.0
        + 0.0)
}

/// `sign(0)` resolves to `+1`.
pub fn sign(v: f64) -> Label {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

/// Index of the largest score. Ties go to `+1` on the binary label set and
/// to the first label otherwise.
pub(crate) fn argmax_label(labels: &[Label], scores: &[f64]) -> Label {
    let binary = labels == [-1, 1];
    let mut best = 0;
    for j in 1..labels.len() {
        if scores[j] > scores[best] || (binary && scores[j] == scores[best]) {
            best = j;
        }
    }
    labels[best]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum VoteRule {
    /// `sign(sum_t alpha_t h_t(x))`.
    Sign,
    /// `argmax_y sum_t alpha_t 1[h_t(x) = y]`.
    Plurality { labels: Vec<Label> },
    /// `argmax_y sum_t alpha_t h_t(x, y)`.
    PlausibilityArgmax { labels: Vec<Label> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub alpha: f64,
    pub hypothesis: WeakHypothesis,
}

/// `H_T = sum_t alpha_t h_t`, terms kept in iteration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    terms: Vec<Term>,
    rule: VoteRule,
}

impl Ensemble {
    pub fn new(rule: VoteRule) -> Self {
        Self { terms: Vec::new(), rule }
    }

    pub fn push(&mut self, alpha: f64, hypothesis: WeakHypothesis) -> Result<()> {
        if !alpha.is_finite() {
            return Err(Error::InvalidConfig(format!("non-finite coefficient {alpha}")));
        }
        if self.rule == VoteRule::Sign && hypothesis.kind() != HypothesisKind::BinaryDiscrete {
            return Err(Error::KindMismatch {
                expected: "binary discrete",
                found: hypothesis.kind().name(),
            });
        }
        self.terms.push(Term { alpha, hypothesis });
        Ok(())
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn rule(&self) -> &VoteRule {
        &self.rule
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.alpha).collect()
    }

    /// The first `n` terms as a standalone ensemble.
    pub fn prefix(&self, n: usize) -> Self {
        Self { terms: self.terms[..n.min(self.terms.len())].to_vec(), rule: self.rule.clone() }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self { terms: self.terms[range].to_vec(), rule: self.rule.clone() }
    }

    /// `sum_t alpha_t h_t(x)` under the sign rule.
    pub fn raw_score(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.alpha * t.hypothesis.predict(x).unwrap_or(0) as f64)
            .sum()
    }

    /// Per-label vote totals, in the rule's label order.
    pub fn votes(&self, x: &[f64]) -> (Vec<Label>, Vec<f64>) {
        let labels = match &self.rule {
            VoteRule::Sign => vec![-1, 1],
            VoteRule::Plurality { labels } | VoteRule::PlausibilityArgmax { labels } => labels.clone(),
        };
        let scores = labels
            .iter()
            .map(|&y| self.terms.iter().map(|t| t.alpha * t.hypothesis.plausibility(x, y)).sum())
            .collect();
        (labels, scores)
    }

    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        if self.terms.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        Ok(match &self.rule {
            VoteRule::Sign => sign(self.raw_score(x)),
            _ => {
                let (labels, scores) = self.votes(x);
                argmax_label(&labels, &scores)
            }
        })
    }

    /// Unnormalized margin of `(x, y)`: `y H(x)` under the sign rule, and the
    /// gap between the true label's vote and the best other vote otherwise.
    pub fn raw_margin(&self, x: &[f64], y: Label) -> f64 {
        match &self.rule {
            VoteRule::Sign => y as f64 * self.raw_score(x),
            _ => {
                let (labels, scores) = self.votes(x);
                let own = labels.iter().position(|&l| l == y).map(|j| scores[j]).unwrap_or(0.0);
                let other = labels
                    .iter()
                    .zip(&scores)
                    .filter(|(l, _)| **l != y)
                    .map(|(_, s)| *s)
                    .fold(f64::NEG_INFINITY, f64::max);
                own - other
            }
        }
    }

    /// `||(alpha_1, .., alpha_T)||_p`; `p = f64::INFINITY` gives the max norm.
    pub fn alpha_norm(&self, p: f64) -> f64 {
        let a = self.terms.iter().map(|t| t.alpha.abs());
        if p.is_infinite() {
            a.fold(0.0, f64::max)
        } else if p == 1.0 {
            a.sum()
        } else {
            a.map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p)
        }
    }

    pub fn training_error(&self, data: &Dataset) -> Result<f64> {
        let mut wrong = 0usize;
        for i in 0..data.len() {
            if self.predict(data.x(i))? != data.y(i) {
                wrong += 1;
            }
        }
        Ok(wrong as f64 / data.len() as f64)
    }

    pub fn accuracy(&self, data: &Dataset) -> Result<f64> {
        Ok(1.0 - self.training_error(data)?)
    }
}
