//! AdaBoost in its equivalent formulations.
//!
//! Every binary booster here shares the weak learner and its tie order, so
//! views that are mathematically the same produce the same hypothesis
//! sequence and (up to rounding) the same weights.

mod discrete;
mod entropy;
mod gradient;
mod mirror;
mod multiclass;
mod poe;
mod real;

pub use discrete::{adaboost_discrete, adaboost_discrete_with};
pub(crate) use discrete::discrete_step;
pub use entropy::{
    entropy_projection_update, pythagoras_printed_residual, pythagoras_three_point_residual,
    tilted, totally_corrective_update, totally_corrective_with, z_of_alpha, Projection,
    TotallyCorrective,
};
pub use gradient::adaboost_gradient_view;
pub use mirror::{max_edge, mirror_descent_boost, MirrorDescentRun};
pub use multiclass::adaboost_m1;
pub use poe::{poe_boost, poe_expert_error};
pub use real::{adaboost_real, adaboost_real_with, pseudo_loss};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::learners::{LearnerSpec, StumpGrid, TIE_TOL};
use crate::weights::{dot, Dichotomy};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A round whose error is within this distance of one half counts as not
/// beating chance.
pub const HALF_TOL: f64 = 1e-12;

pub const DEFAULT_EPS_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Discrete,
    M1,
    Real,
    Gradient,
    Mirror,
    Poe,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Discrete => "discrete",
            Algorithm::M1 => "m1",
            Algorithm::Real => "real",
            Algorithm::Gradient => "gradient",
            Algorithm::Mirror => "mirror",
            Algorithm::Poe => "poe",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "discrete" => Algorithm::Discrete,
            "m1" => Algorithm::M1,
            "real" => Algorithm::Real,
            "gradient" => Algorithm::Gradient,
            "mirror" => Algorithm::Mirror,
            "poe" => Algorithm::Poe,
            other => return Err(Error::InvalidConfig(format!("unknown algorithm '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostConfig {
    pub rounds: usize,
    pub eps_clamp: f64,
    pub stop_on_eps_half: bool,
    pub learner: LearnerSpec,
}

impl Default for BoostConfig {
    fn default() -> Self {
        Self {
            rounds: 50,
            eps_clamp: DEFAULT_EPS_CLAMP,
            stop_on_eps_half: true,
            learner: LearnerSpec::Stump,
        }
    }
}

impl BoostConfig {
    pub fn with_rounds(rounds: usize) -> Self {
        Self { rounds, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidConfig("rounds must be >= 1".into()));
        }
        if !(self.eps_clamp > 0.0 && self.eps_clamp < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "eps_clamp {} must lie in (0, 1/2)",
                self.eps_clamp
            )));
        }
        if let LearnerSpec::Tree { depth: 0 } = self.learner {
            return Err(Error::InvalidConfig("tree depth must be >= 1".into()));
        }
        Ok(())
    }

    pub(crate) fn not_weak(&self, epsilon: f64) -> bool {
        self.stop_on_eps_half && epsilon >= 0.5 - HALF_TOL
    }
}

/// `alpha = 1/2 log((1 - eps) / eps)`.
pub fn optimal_alpha(epsilon: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    Ok(0.5 * ((1.0 - epsilon) / epsilon).ln())
}

/// Clamps into `[clamp, 1 - clamp]`; the flag reports whether it moved.
pub fn clamp_epsilon(epsilon: f64, clamp: f64) -> (f64, bool) {
    let c = epsilon.clamp(clamp, 1.0 - clamp);
    (c, c != epsilon)
}

/// The stump grid of a binary dataset as dichotomy columns.
pub(crate) struct Columns {
    pub grid: StumpGrid,
    pub eta: Vec<Dichotomy>,
}

impl Columns {
    pub fn new(data: &Dataset) -> Result<Self> {
        data.require_binary()?;
        let grid = StumpGrid::new(data);
        let eta = grid
            .stumps()
            .iter()
            .map(|s| Dichotomy::from_correct((0..data.len()).map(|i| s.predict(data.x(i)) == data.y(i))))
            .collect();
        Ok(Self { grid, eta })
    }

    /// First column whose edge is within `2 TIE_TOL` of the best; the same
    /// cut `train_stump` applies to weighted errors.
    pub fn best(&self, w: &[f64]) -> (usize, f64) {
        let edges: Vec<f64> = self.eta.iter().map(|e| dot(w, e)).collect();
        let max = edges.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let j = edges.iter().position(|&e| e >= max - 2.0 * TIE_TOL).expect("nonempty grid");
        (j, max)
    }
}
