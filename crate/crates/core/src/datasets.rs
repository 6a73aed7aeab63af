//! Synthetic datasets: the cycling grid problem and seeded Gaussian blobs.

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// `+1` on the band `x1 <= 1/4`, `x2 <= 1/4` or `x2 >= 3/4`, else `-1`.
pub fn toy_label(x1: f64, x2: f64) -> Label {
    if x1 <= 0.25 || x2 <= 0.25 || x2 >= 0.75 {
        1
    } else {
        -1
    }
}

/// `n x n` grid on the unit square, both corners included, labeled by
/// [`toy_label`]. Rows run over `x1` first.
pub fn toy_problem(n: usize) -> Result<Dataset> {
    if n < 2 {
        return Err(Error::InvalidConfig("grid needs n >= 2".into()));
    }
    let step = 1.0 / (n - 1) as f64;
    let mut xs = Vec::with_capacity(n * n);
    let mut ys = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (i as f64 * step, j as f64 * step);
            xs.push(vec![a, b]);
            ys.push(toy_label(a, b));
        }
    }
    Dataset::binary(xs, ys)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlobSpec {
    pub classes: usize,
    pub per_class: usize,
    pub dim: usize,
    /// Standard deviation of each coordinate around its center.
    pub spread: f64,
    /// Centers are drawn uniformly from `[-center_box, center_box]^dim`.
    pub center_box: f64,
}

impl Default for BlobSpec {
    fn default() -> Self {
        Self { classes: 3, per_class: 60, dim: 2, spread: 1.0, center_box: 3.0 }
    }
}

/// Isotropic Gaussian clusters, one per class, reproducible from `seed`.
/// Two-class specs yield a binary dataset with labels `-1, +1`.
pub fn gaussian_blobs(spec: &BlobSpec, seed: u64) -> Result<Dataset> {
    if spec.classes < 2 || spec.per_class == 0 || spec.dim == 0 {
        return Err(Error::InvalidConfig("blobs need >= 2 classes, samples and features".into()));
    }
    if !(spec.spread > 0.0) {
        return Err(Error::InvalidConfig("spread must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, spec.spread).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let centers: Vec<Vec<f64>> = (0..spec.classes)
        .map(|_| (0..spec.dim).map(|_| rng.random_range(-spec.center_box..=spec.center_box)).collect())
        .collect();
    let mut xs = Vec::with_capacity(spec.classes * spec.per_class);
    let mut ys = Vec::with_capacity(spec.classes * spec.per_class);
    for _ in 0..spec.per_class {
        for (k, c) in centers.iter().enumerate() {
            xs.push(c.iter().map(|v| v + noise.sample(&mut rng)).collect());
            ys.push(k as Label);
        }
    }
    if spec.classes == 2 {
        Dataset::binary(xs, ys.into_iter().map(|y| 2 * y - 1).collect())
    } else {
        Dataset::multiclass(xs, ys, spec.classes)
    }
}

/// Seeded prior covariance and response for kernel boosting.
///
/// The covariance is `Q diag(lambda) Q^T` with a random orthogonal `Q` and
/// eigenvalues uniform in `[0.05 sigma2, 2 sigma2]`, so the smoother stays
/// well away from the identity; the response is uniform in `[-1, 1]^m`.
pub fn smoother_problem(m: usize, sigma2: f64, seed: u64) -> Result<(DMatrix<f64>, DVector<f64>)> {
    if m == 0 {
        return Err(Error::InvalidConfig("dimension must be >= 1".into()));
    }
    if !(sigma2 > 0.0 && sigma2.is_finite()) {
        return Err(Error::InvalidConfig(format!("noise variance {sigma2} must be positive")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = DMatrix::from_fn(m, m, |_, _| rng.random_range(-1.0..1.0)).qr().q();
    let spectrum = DVector::from_fn(m, |_, _| rng.random_range(0.05 * sigma2..=2.0 * sigma2));
    let p = &q * DMatrix::from_diagonal(&spectrum) * q.transpose();
    let y = DVector::from_fn(m, |_, _| rng.random_range(-1.0..1.0));
    Ok(((&p + p.transpose()) * 0.5, y))
}
