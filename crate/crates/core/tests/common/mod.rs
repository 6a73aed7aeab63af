#![allow(dead_code)]

use multiboost::learners::train_stump;
use multiboost::weights::{Dichotomy, WeightDistribution};
use multiboost::{Dataset, Label};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn d1() -> Dataset {
    Dataset::binary(vec![vec![0.0], vec![1.0], vec![2.0]], vec![1, -1, 1]).unwrap()
}

/// Random binary sample with coarse feature values, so duplicate values and
/// exact error ties show up regularly.
pub fn random_binary(rng: &mut ChaCha8Rng, max_m: usize, max_d: usize) -> Dataset {
    let m = rng.random_range(4..=max_m);
    let d = rng.random_range(1..=max_d);
    let levels = rng.random_range(3..=12);
    let xs: Vec<Vec<f64>> =
        (0..m).map(|_| (0..d).map(|_| rng.random_range(0..levels) as f64 / levels as f64).collect()).collect();
    let mut ys: Vec<Label> = (0..m).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
    ys[0] = 1;
    ys[1] = -1;
    Dataset::binary(xs, ys).unwrap()
}

/// As `random_binary` but no single stump classifies the sample perfectly.
/// A perfect stump drives the weighted error to zero and alpha to its clamp,
/// after which no update can decorrelate exactly.
pub fn random_nonseparable(rng: &mut ChaCha8Rng, max_m: usize, max_d: usize) -> Dataset {
    loop {
        let d = random_binary(rng, max_m, max_d);
        let s = train_stump(&d, &WeightDistribution::uniform(d.len()));
        let wrong = (0..d.len()).filter(|&i| s.predict(d.x(i)) != d.y(i)).count();
        if wrong > 0 {
            return d;
        }
    }
}

pub fn random_weights(rng: &mut ChaCha8Rng, m: usize) -> WeightDistribution {
    WeightDistribution::from_unnormalized((0..m).map(|_| rng.random_range(0.01..1.0)).collect()).unwrap()
}

/// Random pattern with at least one entry of each sign.
pub fn random_dichotomy(rng: &mut ChaCha8Rng, m: usize) -> Dichotomy {
    assert!(m >= 2);
    let mut v: Vec<i8> = (0..m).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
    let k = rng.random_range(0..m);
    v[k] = 1;
    v[(k + 1) % m] = -1;
    Dichotomy::new(v).unwrap()
}

/// Symmetric positive definite matrix with eigenvalues drawn from `[lo, hi]`.
pub fn random_spd(rng: &mut ChaCha8Rng, m: usize, lo: f64, hi: f64) -> DMatrix<f64> {
    let a = DMatrix::from_fn(m, m, |_, _| rng.random_range(-1.0..1.0));
    let q = a.qr().q();
    let spectrum = DMatrix::from_diagonal(&DVector::from_fn(m, |_, _| rng.random_range(lo..=hi)));
    let p = &q * spectrum * q.transpose();
    (&p + p.transpose()) * 0.5
}

/// Golden-section search on `[lo, hi]` driven only by a comparison of
/// objective values; returns the midpoint once the bracket is below `tol`.
pub fn golden_section(mut lo: f64, mut hi: f64, tol: f64, less: impl Fn(f64, f64) -> Ordering) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    while hi - lo > tol {
        if less(c, d) == Ordering::Less {
            hi = d;
            d = c;
            c = hi - inv_phi * (hi - lo);
        } else {
            lo = c;
            c = d;
            d = lo + inv_phi * (hi - lo);
        }
    }
    0.5 * (lo + hi)
}

/// `Z(a)` versus `Z(b)` for `Z(alpha) = sum_i w_i exp(-alpha eta_i)`, using
/// `Z(a) - Z(b) = sum_i w_i e^{-b eta_i} expm1((b - a) eta_i)` so that the
/// sign stays reliable when `a` and `b` are very close.
pub fn compare_z(w: &WeightDistribution, eta: &Dichotomy, a: f64, b: f64) -> Ordering {
    let diff: f64 =
        w.as_slice().iter().zip(eta.iter()).map(|(wi, e)| wi * (-b * e).exp() * ((b - a) * e).exp_m1()).sum();
    diff.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
}

pub fn z_value(w: &WeightDistribution, eta: &Dichotomy, a: f64) -> f64 {
    w.as_slice().iter().zip(eta.iter()).map(|(wi, e)| wi * (-a * e).exp()).sum()
}

/// Exact KL projection onto `{v : v^T eta_j = 0 for all j}` by Newton on the
/// convex dual `log sum_i w_i exp(-sum_j lambda_j eta_j(i))`.
pub fn kl_projection_newton(w: &WeightDistribution, etas: &[Dichotomy]) -> WeightDistribution {
    let k = etas.len();
    let m = w.len();
    let g = DMatrix::from_fn(m, k, |i, j| etas[j].get(i) as f64);
    let mut lambda = DVector::zeros(k);
    for _ in 0..200 {
        let logits: Vec<f64> =
            (0..m).map(|i| w.get(i).ln() - (g.row(i) * &lambda)[(0, 0)]).collect();
        let v = WeightDistribution::from_log_weights(&logits).unwrap();
        let p = DVector::from_column_slice(v.as_slice());
        // gradient is -G^T v, Hessian G^T (diag v - v v^T) G
        let grad = -(g.transpose() * &p);
        if grad.amax() < 1e-14 {
            return v;
        }
        let cov = DMatrix::from_diagonal(&p) - &p * p.transpose();
        let hess = g.transpose() * cov * &g + DMatrix::identity(k, k) * 1e-14;
        let step = hess.lu().solve(&grad).expect("dual Hessian is invertible");
        lambda -= step;
    }
    let logits: Vec<f64> = (0..m).map(|i| w.get(i).ln() - (g.row(i) * &lambda)[(0, 0)]).collect();
    WeightDistribution::from_log_weights(&logits).unwrap()
}
