//! Margins, agreement between weak hypotheses, and training-error bounds.

mod agreement;
mod margins;

pub use agreement::{
    cohen_kappa, diversity, diversity_with, kappa, kappa_matrix, mean_off_diagonal,
    similarity, similarity_matrix, PairSum,
};
pub use margins::{margin_distribution, margins, nondecreasing_fraction, MarginReport};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::hypothesis::Ensemble;

/// `prod_t 2 sqrt(eps_t (1 - eps_t))`.
pub fn training_error_bound(epsilons: &[f64]) -> Result<f64> {
    let mut bound = 1.0;
    for &e in epsilons {
        if !(0.0..=1.0).contains(&e) {
            return Err(Error::EpsilonOutOfRange(e));
        }
        bound *= 2.0 * (e * (1.0 - e)).sqrt();
    }
    Ok(bound)
}

#[derive(Debug, Clone)]
pub struct Block {
    pub ensemble: Ensemble,
    pub train_accuracy: f64,
}

impl Block {
    /// Classifies every training sample correctly.
    pub fn interpolates(&self) -> bool {
        self.train_accuracy == 1.0
    }
}

/// Cuts the ensemble into consecutive blocks of `block` terms, each scored
/// as a classifier on its own.
pub fn self_averaging_split(ens: &Ensemble, data: &Dataset, block: usize) -> Result<Vec<Block>> {
    if block == 0 {
        return Err(Error::InvalidConfig("block size must be >= 1".into()));
    }
    if ens.is_empty() || !ens.len().is_multiple_of(block) {
        return Err(Error::NotDivisible { len: ens.len(), block });
    }
    (0..ens.len() / block)
        .map(|k| {
            let ensemble = ens.slice(k * block..(k + 1) * block);
            let train_accuracy = ensemble.accuracy(data)?;
            Ok(Block { ensemble, train_accuracy })
        })
        .collect()
}
