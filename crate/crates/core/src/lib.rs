//! AdaBoost in its equivalent formulations, with tools for studying the
//! weight dynamics and the resulting ensembles.

pub mod analysis;
pub mod boosters;
pub mod data;
pub mod datasets;
pub mod dynamics;
pub mod error;
pub mod hypothesis;
pub mod kernel_boost;
pub mod learners;
pub mod study;
pub mod trace;
pub mod weights;

pub use boosters::{Algorithm, BoostConfig};
pub use data::{Dataset, Label, Task};
pub use error::{Error, Result};
pub use hypothesis::{Ensemble, WeakHypothesis};
pub use learners::LearnerSpec;
pub use trace::{BoostTrace, RoundRecord};
pub use weights::{Dichotomy, PairWeightDistribution, WeightDistribution};
