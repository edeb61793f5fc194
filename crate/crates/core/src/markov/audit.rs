//! Sampling audit of the gap bound on finite-dimensional reps.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::dichotomy::invariant_subspace;
use super::operator::dense_p;
use super::MarkovError;
use crate::groups::GenMeasure;
use crate::reps::{Rep, Scalar};

/// The audit passes iff every observed `‖P_μ v‖²` is at most `bound + AUDIT_SLACK`.
pub const AUDIT_SLACK: f64 = 1e-9;
const ASCENT_STEPS: usize = 300;
const DESCENT_STEPS: usize = 400;
const RESTARTS: usize = 8;

/// Outcome of checking `‖P_μ v‖² ≤ 1 − ½ ε² μ(e) min μ` on random unit vectors.
#[derive(Clone, Debug)]
pub struct GapAudit {
    /// Certified lower bound on `min_{‖v‖=1} max_h ‖hv − v‖`.
    pub epsilon: f64,
    /// The best min-max value found by direct search; an upper estimate.
    pub epsilon_upper: f64,
    pub bound: f64,
    pub samples: usize,
    pub max_observed: f64,
    pub passed: bool,
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(y: &[f64]) -> Vec<f64> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut tau = 0.0;
    for (i, x) in u.iter().enumerate() {
        cum += x;
        let t = (cum - 1.0) / (i + 1) as f64;
        if x - t > 0.0 {
            tau = t;
        }
    }
    y.iter().map(|x| (x - tau).max(0.0)).collect()
}

fn min_eigen(m: &DMatrix<f64>) -> (f64, DVector<f64>) {
    let e = m.clone().symmetric_eigen();
    let (i, &lam) = e
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    (lam, e.eigenvectors.column(i).into_owned())
}

/// `max_λ λ_min(Σ λ_h M_h)` over the simplex, by projected subgradient ascent.
/// For every weight vector and unit `v`, `max_h vᵀM_h v ≥ vᵀ(Σ λ_h M_h)v`, so
/// the value is a lower bound on `ε²`.
fn certified_epsilon_sq(ms: &[DMatrix<f64>]) -> (f64, DVector<f64>) {
    let k = ms.len();
    let mut lambda = vec![1.0 / k as f64; k];
    let combine = |l: &[f64]| {
        ms.iter()
            .zip(l)
            .fold(DMatrix::zeros(ms[0].nrows(), ms[0].ncols()), |acc, (m, w)| acc + m * *w)
    };
    let (mut best, mut best_u) = min_eigen(&combine(&lambda));
    for step in 0..ASCENT_STEPS {
        let (val, u) = min_eigen(&combine(&lambda));
        if val > best {
            best = val;
            best_u = u.clone();
        }
        let grad: Vec<f64> = ms.iter().map(|m| u.dot(&(m * &u))).collect();
        let eta = 0.5 / (1.0 + step as f64).sqrt();
        let y: Vec<f64> = lambda.iter().zip(&grad).map(|(l, g)| l + eta * g / 4.0).collect();
        lambda = project_simplex(&y);
    }
    (best.max(0.0), best_u)
}

/// `min_{‖v‖=1} max_h vᵀM_h v` by multi-start projected subgradient descent.
fn searched_epsilon_sq(ms: &[DMatrix<f64>], seed_vec: &DVector<f64>, rng: &mut ChaCha8Rng) -> f64 {
    let d = seed_vec.len();
    let objective = |v: &DVector<f64>| {
        ms.iter()
            .map(|m| v.dot(&(m * v)))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let mut best = objective(seed_vec);
    for start in 0..RESTARTS {
        let mut v = if start == 0 {
            seed_vec.clone()
        } else {
            DVector::from_fn(d, |_, _| StandardNormal.sample(rng))
        };
        v.normalize_mut();
        for step in 0..DESCENT_STEPS {
            let (idx, val) = ms
                .iter()
                .map(|m| v.dot(&(m * &v)))
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("nonempty");
            best = best.min(val);
            let grad = &ms[idx] * &v * 2.0;
            let eta = 0.1 / (1.0 + step as f64).sqrt();
            let next = &v - grad * eta;
            let n = next.norm();
            if n == 0.0 {
                break;
            }
            v = next / n;
        }
        best = best.min(objective(&v));
    }
    best
}

/// Audits the bound `‖P_μ v‖² ≤ 1 − ½ ε² μ(e) min_h μ(h)` on `samples`
/// Gaussian unit vectors drawn from a seeded generator. The minimum weight
/// runs over the whole support, which only weakens the bound.
pub fn gap_bound_audit<S: Scalar>(
    rep: &Rep<S>,
    mu: &GenMeasure,
    samples: usize,
    seed: u64,
) -> Result<GapAudit, MarkovError> {
    if !rep.is_finite_dimensional() {
        return Err(MarkovError::NotFiniteDimensional);
    }
    let kernel = invariant_subspace(rep, mu)?;
    if !kernel.is_empty() {
        return Err(MarkovError::HasInvariantVector(kernel.len()));
    }
    let d = rep.dim();
    let mut ms = Vec::new();
    for (h, _) in mu.non_identity() {
        let a = DMatrix::identity(d, d) - rep.dense_matrix(h)?.to_nalgebra();
        ms.push(a.transpose() * a);
    }
    if ms.is_empty() || d == 0 {
        return Err(MarkovError::HasInvariantVector(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (eps_sq, u) = certified_epsilon_sq(&ms);
    let upper_sq = searched_epsilon_sq(&ms, &u, &mut rng);
    let mu_e = Scalar::to_float(&mu.identity_weight());
    let min_w = Scalar::to_float(&mu.min_weight());
    let bound = 1.0 - 0.5 * eps_sq * mu_e * min_w;
    let p = dense_p(rep, mu)?;
    let mut max_observed: f64 = 0.0;
    for _ in 0..samples {
        let mut v = DVector::from_fn(d, |_, _| StandardNormal.sample(&mut rng));
        if v.normalize_mut() == 0.0 {
            continue;
        }
        max_observed = max_observed.max((&p * &v).norm_squared());
    }
    Ok(GapAudit {
        epsilon: eps_sq.sqrt(),
        epsilon_upper: upper_sq.max(eps_sq).sqrt(),
        bound,
        samples,
        max_observed,
        passed: max_observed <= bound + AUDIT_SLACK,
    })
}
