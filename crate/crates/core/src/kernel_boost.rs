//! Residual boosting of a linear smoother and its one-shot kernel form.

use crate::error::{Error, Result};
use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};

/// Eigenvalues of the prior covariance may dip this far below zero.
pub const PSD_TOL: f64 = 1e-10;

/// Prior covariance `P`, noise variance, and the smoother
/// `S = P (P + sigma2 I)^-1`.
#[derive(Debug, Clone)]
pub struct SmootherState {
    p: DMatrix<f64>,
    sigma2: f64,
    s: DMatrix<f64>,
    /// `I - S = sigma2 (P + sigma2 I)^-1`, symmetric positive definite.
    resid: DMatrix<f64>,
}

fn shifted_cholesky(p: &DMatrix<f64>, sigma2: f64) -> Result<Cholesky<f64, Dyn>> {
    let a = p + DMatrix::identity(p.nrows(), p.nrows()) * sigma2;
    Cholesky::new(a).ok_or_else(|| Error::Singular("P + sigma2 I is not positive definite".into()))
}

fn check_square(p: &DMatrix<f64>) -> Result<()> {
    if p.nrows() != p.ncols() {
        return Err(Error::LengthMismatch { expected: p.nrows(), found: p.ncols() });
    }
    if p.nrows() == 0 {
        return Err(Error::EmptyDataset);
    }
    Ok(())
}

impl SmootherState {
    pub fn new(p: DMatrix<f64>, sigma2: f64) -> Result<Self> {
        check_square(&p)?;
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::InvalidConfig(format!("noise variance {sigma2} must be positive")));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("covariance has non-finite entries".into()));
        }
        let scale = p.amax().max(1.0);
        if (&p - p.transpose()).amax() > PSD_TOL * scale {
            return Err(Error::InvalidConfig("covariance is not symmetric".into()));
        }
        let min_eig = SymmetricEigen::new(p.clone()).eigenvalues.min();
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite(min_eig));
        }
        let chol = shifted_cholesky(&p, sigma2)?;
        let m = p.nrows();
        let resid = chol.solve(&DMatrix::identity(m, m)) * sigma2;
        // P A^-1 = (A^-1 P)^T since both factors are symmetric
        let s = chol.solve(&p).transpose();
        Ok(Self { p, sigma2, s, resid })
    }

    pub fn dim(&self) -> usize {
        self.p.nrows()
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn smoother(&self) -> &DMatrix<f64> {
        &self.s
    }

    fn check_y(&self, y: &DVector<f64>) -> Result<()> {
        if y.len() != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), found: y.len() });
        }
        Ok(())
    }
}

/// Repeatedly smooths the residual: `H_0 = S y`, `H_k = H_{k-1} + S (y - H_{k-1})`.
///
/// Returns `H_0, .., H_{rounds-1}`; entry `k` has applied the smoother
/// `k + 1` times and equals the kernel estimate of order `k + 1`.
pub fn boost_regression(y: &DVector<f64>, st: &SmootherState, rounds: usize) -> Result<Vec<DVector<f64>>> {
    st.check_y(y)?;
    if rounds == 0 {
        return Err(Error::InvalidConfig("rounds must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(rounds);
    let mut h = &st.s * y;
    for _ in 1..rounds {
        let next = &h + &st.s * (y - &h);
        out.push(h);
        h = next;
    }
    out.push(h);
    Ok(out)
}

/// `||y - H_k||_2` for each entry of `boost_regression`.
pub fn residual_norms(y: &DVector<f64>, st: &SmootherState, rounds: usize) -> Result<Vec<f64>> {
    Ok(boost_regression(y, st, rounds)?.iter().map(|h| (y - h).norm()).collect())
}

/// `sigma2 (I - S)^-order - sigma2 I`, by `order` solves against `I - S`.
pub fn boosting_kernel(st: &SmootherState, order: usize) -> Result<DMatrix<f64>> {
    if order == 0 {
        return Err(Error::InvalidConfig("kernel order must be >= 1".into()));
    }
    let m = st.dim();
    let chol = Cholesky::new(st.resid.clone())
        .ok_or_else(|| Error::Singular("I - S is not positive definite".into()))?;
    let mut acc = DMatrix::identity(m, m);
    for _ in 0..order {
        acc = chol.solve(&acc);
    }
    let k = (acc - DMatrix::identity(m, m)) * st.sigma2;
    // symmetrize away solve round-off
    Ok((&k + k.transpose()) * 0.5)
}

/// `P (P + sigma2 I)^-1 y`, evaluated as `y - sigma2 (P + sigma2 I)^-1 y`.
pub fn kernel_estimate(p: &DMatrix<f64>, sigma2: f64, y: &DVector<f64>) -> Result<DVector<f64>> {
    check_square(p)?;
    if y.len() != p.nrows() {
        return Err(Error::LengthMismatch { expected: p.nrows(), found: y.len() });
    }
    if !(sigma2 > 0.0) {
        return Err(Error::InvalidConfig(format!("noise variance {sigma2} must be positive")));
    }
    let chol = shifted_cholesky(p, sigma2)?;
    Ok(y - chol.solve(y) * sigma2)
}
