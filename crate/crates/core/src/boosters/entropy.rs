//! Boosting as relative-entropy projection onto decorrelation hyperplanes.

use super::{optimal_alpha, DEFAULT_EPS_CLAMP};
use crate::error::{Error, Result};
use crate::weights::{dot, error_mass, kl_divergence, Dichotomy, WeightDistribution};

#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub weights: WeightDistribution,
    pub alpha: f64,
    /// False when `eta` has one sign on the support of `w`, so the hyperplane
    /// misses the relative interior and a clamped step was taken instead.
    pub exact: bool,
}

fn check_len(w: &WeightDistribution, eta: &Dichotomy) -> Result<()> {
    if w.len() != eta.len() {
        return Err(Error::LengthMismatch { expected: w.len(), found: eta.len() });
    }
    Ok(())
}

/// `Z(alpha) = sum_i w_i exp(-alpha eta_i)`.
pub fn z_of_alpha(w: &WeightDistribution, eta: &Dichotomy, alpha: f64) -> f64 {
    w.as_slice().iter().zip(eta.iter()).map(|(wi, e)| wi * (-alpha * e).exp()).sum()
}

/// `w_i exp(-alpha eta_i) / Z(alpha)`.
pub fn tilted(w: &WeightDistribution, eta: &Dichotomy, alpha: f64) -> Result<WeightDistribution> {
    check_len(w, eta)?;
    WeightDistribution::from_unnormalized(
        w.as_slice().iter().zip(eta.iter()).map(|(wi, e)| wi * (-alpha * e).exp()).collect(),
    )
}

/// KL projection of `w` onto `{v : v^T eta = 0}`.
///
/// With error mass `eps` strictly inside `(0, 1)` the projection halves the
/// mass on each side: correct samples are scaled by `1 / (2 (1 - eps))` and
/// mistakes by `1 / (2 eps)`.
pub fn entropy_projection_update(w: &WeightDistribution, eta: &Dichotomy) -> Result<Projection> {
    check_len(w, eta)?;
    let eps = error_mass(w.as_slice(), eta);
    if eps <= 0.0 || eps >= 1.0 {
        let clamped = eps.clamp(DEFAULT_EPS_CLAMP, 1.0 - DEFAULT_EPS_CLAMP);
        let alpha = optimal_alpha(clamped)?;
        return Ok(Projection { weights: tilted(w, eta, alpha)?, alpha, exact: false });
    }
    let alpha = optimal_alpha(eps)?;
    let (up, down) = (0.5 / eps, 0.5 / (1.0 - eps));
    let v = w
        .as_slice()
        .iter()
        .zip(eta.as_slice())
        .map(|(wi, &e)| if e < 0 { wi * up } else { wi * down })
        .collect();
    Ok(Projection { weights: WeightDistribution::from_unnormalized(v)?, alpha, exact: true })
}

/// `KL(w || W(alpha)) + KL(W(alpha) || W*) - KL(w || W*)` where `W*` is the
/// projection of `w`. It vanishes at `alpha = 0` and at the optimal alpha,
/// and not in general between them.
pub fn pythagoras_printed_residual(w: &WeightDistribution, eta: &Dichotomy, alpha: f64) -> Result<f64> {
    let star = entropy_projection_update(w, eta)?.weights;
    let wa = tilted(w, eta, alpha)?;
    Ok(w.kl(&wa) + wa.kl(&star) - w.kl(&star))
}

/// `KL(u || w) - KL(u || W*) - KL(W* || w)` for `u` on the hyperplane; zero
/// for every such `u`.
pub fn pythagoras_three_point_residual(
    u: &WeightDistribution,
    w: &WeightDistribution,
    eta: &Dichotomy,
) -> Result<f64> {
    check_len(u, eta)?;
    let star = entropy_projection_update(w, eta)?.weights;
    Ok(kl_divergence(u.as_slice(), w.as_slice())
        - kl_divergence(u.as_slice(), star.as_slice())
        - kl_divergence(star.as_slice(), w.as_slice()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TotallyCorrective {
    pub weights: WeightDistribution,
    pub sweeps: usize,
    /// `max_j |w^T eta_j|` at exit.
    pub residual: f64,
}

pub const TC_MAX_SWEEPS: usize = 10_000;
pub const TC_TOL: f64 = 1e-9;

/// KL projection of `w0` onto the intersection of every past hyperplane.
pub fn totally_corrective_update(w0: &WeightDistribution, etas: &[Dichotomy]) -> Result<TotallyCorrective> {
    totally_corrective_with(w0, etas, TC_MAX_SWEEPS, TC_TOL)
}

/// Cyclic single-constraint projections until every correlation is below
/// `tol`. Fails with `Infeasible` when a constraint cannot be met exactly or
/// the sweeps run out.
pub fn totally_corrective_with(
    w0: &WeightDistribution,
    etas: &[Dichotomy],
    max_sweeps: usize,
    tol: f64,
) -> Result<TotallyCorrective> {
    for e in etas {
        check_len(w0, e)?;
    }
    let residual_of =
        |w: &WeightDistribution| etas.iter().map(|e| dot(w.as_slice(), e).abs()).fold(0.0, f64::max);
    let mut w = w0.clone();
    let mut residual = residual_of(&w);
    for sweep in 0..max_sweeps {
        if residual <= tol {
            return Ok(TotallyCorrective { weights: w, sweeps: sweep, residual });
        }
        for e in etas {
            let p = entropy_projection_update(&w, e)?;
            if !p.exact {
                return Err(Error::Infeasible { sweeps: sweep + 1, residual });
            }
            w = p.weights;
        }
        residual = residual_of(&w);
    }
    if residual <= tol {
        return Ok(TotallyCorrective { weights: w, sweeps: max_sweeps, residual });
    }
    Err(Error::Infeasible { sweeps: max_sweeps, residual })
}
