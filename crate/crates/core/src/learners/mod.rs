//! Weak learners: decision stumps, bounded-depth trees, and an exhaustive
//! oracle used to check them.

mod oracle;
mod stump;
mod tree;

pub use oracle::{oracle_best_hypothesis, OracleLearner};
pub use stump::{thresholds, train_stump, DecisionStump, StumpGrid, TIE_TOL};
pub use tree::{train_tree, DecisionTree, Node};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::hypothesis::WeakHypothesis;
use crate::weights::WeightDistribution;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Trains a hypothesis against a sample-weight distribution.
pub trait WeakLearner {
    fn fit(&self, data: &Dataset, w: &WeightDistribution) -> Result<WeakHypothesis>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LearnerSpec {
    Stump,
    Tree { depth: usize },
}

impl WeakLearner for LearnerSpec {
    fn fit(&self, data: &Dataset, w: &WeightDistribution) -> Result<WeakHypothesis> {
        if w.len() != data.len() {
            return Err(Error::LengthMismatch { expected: data.len(), found: w.len() });
        }
        Ok(match *self {
            LearnerSpec::Stump if data.is_binary() => WeakHypothesis::Stump(train_stump(data, w)),
            // a multiclass "stump" is a single split with two labeled leaves
            LearnerSpec::Stump => WeakHypothesis::Tree(train_tree(data, w, 1)),
            LearnerSpec::Tree { depth } => {
                if depth == 0 {
                    return Err(Error::InvalidConfig("tree depth must be >= 1".into()));
                }
                WeakHypothesis::Tree(train_tree(data, w, depth))
            }
        })
    }
}

impl fmt::Display for LearnerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LearnerSpec::Stump => write!(f, "stump"),
            LearnerSpec::Tree { depth } => write!(f, "tree:{depth}"),
        }
    }
}

impl FromStr for LearnerSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "stump" {
            return Ok(LearnerSpec::Stump);
        }
        let depth = s
            .strip_prefix("tree:")
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| Error::InvalidConfig(format!("unknown learner '{s}'")))?;
        if depth == 0 {
            return Err(Error::InvalidConfig("tree depth must be >= 1".into()));
        }
        Ok(LearnerSpec::Tree { depth })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!("stump".parse::<LearnerSpec>().unwrap(), LearnerSpec::Stump);
        assert_eq!("tree:4".parse::<LearnerSpec>().unwrap(), LearnerSpec::Tree { depth: 4 });
        assert!("tree:0".parse::<LearnerSpec>().is_err());
        assert!("forest".parse::<LearnerSpec>().is_err());
        assert_eq!(LearnerSpec::Tree { depth: 3 }.to_string(), "tree:3");
    }
}
