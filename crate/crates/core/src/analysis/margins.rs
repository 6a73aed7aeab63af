use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::hypothesis::Ensemble;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    /// `y_i H(x_i) / ||alpha||_p` per sample.
    pub margins: Vec<f64>,
    pub min: f64,
    pub p: f64,
}

pub fn margins(ens: &Ensemble, data: &Dataset, p: f64) -> Result<MarginReport> {
    if ens.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let norm = ens.alpha_norm(p);
    if norm == 0.0 {
        return Err(Error::ZeroAlphaNorm);
    }
    let margins: Vec<f64> = (0..data.len()).map(|i| ens.raw_margin(data.x(i), data.y(i)) / norm).collect();
    let min = margins.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(MarginReport { margins, min, p })
}

/// Fraction of samples whose l1-normalized margin is at most `theta`.
pub fn margin_distribution(ens: &Ensemble, data: &Dataset, theta: f64) -> Result<f64> {
    let r = margins(ens, data, 1.0)?;
    Ok(r.margins.iter().filter(|&&v| v <= theta).count() as f64 / r.margins.len() as f64)
}

/// Share of consecutive steps along which `seq` does not decrease.
pub fn nondecreasing_fraction(seq: &[f64]) -> f64 {
    if seq.len() < 2 {
        return 1.0;
    }
    seq.windows(2).filter(|w| w[1] >= w[0]).count() as f64 / (seq.len() - 1) as f64
}
