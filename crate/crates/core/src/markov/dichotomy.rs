//! Finite-dimensional invariant vectors and the matching spectral tests.

use nalgebra::{DMatrix, DVector};

use super::operator::dense_p;
use super::spectral::spectral_radius_truncated;
use super::MarkovError;
use crate::groups::GenMeasure;
use crate::reps::{Rep, Scalar, VectorH};

/// Singular values of `D_μ` below this count as zero.
pub const SINGULAR_THRESHOLD: f64 = 1e-8;

fn dense_d<S: Scalar>(rep: &Rep<S>, mu: &GenMeasure) -> Result<DMatrix<f64>, MarkovError> {
    let p = dense_p(rep, mu)?;
    Ok(DMatrix::identity(p.nrows(), p.ncols()) - p)
}

/// Orthonormal basis of `ker D_μ`, i.e. of the `G`-invariant vectors.
pub fn invariant_subspace<S: Scalar>(
    rep: &Rep<S>,
    mu: &GenMeasure,
) -> Result<Vec<VectorH<f64>>, MarkovError> {
    let d = dense_d(rep, mu)?;
    if d.nrows() == 0 {
        return Ok(Vec::new());
    }
    let svd = d.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    Ok(svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s < SINGULAR_THRESHOLD)
        .map(|(i, _)| VectorH::from_dense(v_t.row(i).transpose().as_slice()))
        .collect())
}

/// Solves `D_μ v = b` by conjugate gradients to `‖D_μ v − b‖ ≤ tol·‖b‖`.
/// Fails with `SingularOperator` when that residual is out of reach, which
/// happens exactly when `b` has a component along invariant vectors.
pub fn solve_d<S: Scalar>(
    rep: &Rep<S>,
    mu: &GenMeasure,
    b: &VectorH<f64>,
    tol: f64,
) -> Result<VectorH<f64>, MarkovError> {
    let d = dense_d(rep, mu)?;
    let n = d.nrows();
    let b = DVector::from_vec(b.to_dense(n)?);
    let b_norm = b.norm();
    if b_norm == 0.0 {
        return Ok(VectorH::zero());
    }
    let target = tol * b_norm;
    let mut x = DVector::zeros(n);
    // Restarted CG; each cycle recomputes the true residual.
    for _ in 0..10 {
        let mut r = &b - &d * &x;
        if r.norm() <= target {
            break;
        }
        let mut p = r.clone();
        let mut rr = r.dot(&r);
        for _ in 0..n.max(1) {
            let dp = &d * &p;
            let pdp = p.dot(&dp);
            if !(pdp > f64::EPSILON * rr) {
                break;
            }
            let alpha = rr / pdp;
            x += alpha * &p;
            r -= alpha * &dp;
            let rr_next = r.dot(&r);
            if rr_next.sqrt() <= target {
                break;
            }
            p = &r + (rr_next / rr) * &p;
            rr = rr_next;
        }
    }
    let residual = (&b - &d * &x).norm();
    if residual <= target {
        Ok(VectorH::from_dense(x.as_slice()))
    } else {
        Err(MarkovError::SingularOperator(residual / b_norm))
    }
}

/// Top eigenvalue of `P_μ` on a finite-dimensional rep, by power iteration.
pub fn top_eigenvalue<S: Scalar>(rep: &Rep<S>, mu: &GenMeasure, tol: f64) -> Result<f64, MarkovError> {
    if !rep.is_finite_dimensional() {
        return Err(MarkovError::NotFiniteDimensional);
    }
    if rep.dim() == 0 {
        return Ok(f64::NEG_INFINITY);
    }
    spectral_radius_truncated(rep, mu, 0, tol)
}
