//! Truncated spectral radii and gap verdicts.

use std::collections::HashMap;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::operator::Operator;
use super::MarkovError;
use crate::groups::{GenMeasure, GroupElem, GroupSpec, DEFAULT_BALL_CAP, DEFAULT_ORDER_CAP};
use crate::reps::{Rep, Scalar};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Successive raw estimates closer than this form a plateau.
pub const PLATEAU_TOL: f64 = 1e-6;
/// Any estimate at or above this value yields `NoGap`.
pub const NOGAP_TRIGGER: f64 = 1.0 - 1e-3;
/// Successive extrapolations closer than this form a plateau.
const EXTRAPOLATION_TOL: f64 = 1e-3;
/// Exact verdicts on finite groups: gap iff `λ₂ < 1 − FINITE_GAP_TOL`.
const FINITE_GAP_TOL: f64 = 1e-8;
const PERTURBATION_SEED: u64 = 0x5eed;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Power iteration on the positive semidefinite `(P + I)/2`, whose Rayleigh
/// quotients increase monotonically. Returns the Rayleigh quotient of `P` at
/// the final iterate together with that iterate.
pub fn power_iteration(
    op: &Operator,
    start: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<(f64, Vec<f64>), MarkovError> {
    let mut x = start.to_vec();
    if normalize(&mut x) == 0.0 {
        return Err(MarkovError::InvalidSchedule("zero start vector".to_string()));
    }
    let mut px = op.apply(&x);
    let mut rq = dot(&x, &px);
    for _ in 0..max_iter {
        let mut y: Vec<f64> = x.iter().zip(&px).map(|(a, b)| 0.5 * (a + b)).collect();
        if normalize(&mut y) == 0.0 {
            return Ok((rq, x));
        }
        let py = op.apply(&y);
        let next = dot(&y, &py);
        x = y;
        px = py;
        let done = (next - rq).abs() < tol;
        rq = next;
        if done {
            return Ok((rq, x));
        }
    }
    Err(MarkovError::NotConverged(max_iter))
}

fn start_vector<S: Scalar>(rep: &Rep<S>) -> Vec<f64> {
    let d = rep.dim();
    match rep {
        Rep::Regular(r) => {
            let mut e = vec![0.0; d];
            e[r.ball().position(&rep.group().identity()).unwrap_or(0)] = 1.0;
            e
        }
        _ => {
            // δ_0 plus a fixed pseudo-random perturbation, so the start is
            // not orthogonal to the top eigenvector.
            let mut rng = ChaCha8Rng::seed_from_u64(PERTURBATION_SEED);
            let mut e: Vec<f64> = (0..d)
                .map(|_| 0.1 * Distribution::<f64>::sample(&StandardNormal, &mut rng))
                .collect();
            if d > 0 {
                e[0] += 1.0;
            }
            e
        }
    }
}

/// Top eigenvalue of the truncated `P_μ`. Regular reps are rebuilt at radius
/// `r` when it differs from theirs; `r` is ignored for finite-dimensional reps.
pub fn spectral_radius_truncated<S: Scalar>(
    rep: &Rep<S>,
    mu: &GenMeasure,
    r: usize,
    tol: f64,
) -> Result<f64, MarkovError> {
    let rebuilt;
    let rep = match rep {
        Rep::Regular(reg) if reg.radius() != r => {
            rebuilt = Rep::<S>::regular(reg.group().clone(), r, DEFAULT_BALL_CAP)?;
            &rebuilt
        }
        _ => rep,
    };
    if rep.dim() == 0 {
        return Err(MarkovError::NotFiniteDimensional);
    }
    let op = Operator::new(rep, mu)?;
    Ok(power_iteration(&op, &start_vector(rep), tol, DEFAULT_MAX_ITER)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Gap,
    NoGap,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Gap => "Gap",
            Verdict::NoGap => "NoGap",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Diagnostics of a Kesten-style gap test.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub radii: Vec<usize>,
    /// Raw top eigenvalues of the truncations, one per radius.
    pub estimates: Vec<f64>,
    /// Limits of `ρ − c/(r + a)²` fitted through each three consecutive
    /// estimates, aligned with the last radius of the triple.
    pub extrapolations: Vec<Option<f64>>,
    pub verdict: Verdict,
    /// The value the verdict rests on: the plateau for `Gap`, the largest
    /// estimate for `NoGap`, the best available estimate otherwise.
    pub plateau: f64,
    /// `θ − plateau`; positive on the gap side.
    pub margin: f64,
    /// Finite groups: order and the exact top two eigenvalues.
    pub finite: Option<(usize, f64, f64)>,
}

/// Fits `e(r) = ρ − c/(r + a)²` through three points with increasing radii
/// and returns `ρ`, or `None` if no fit with `c > 0`, `r₁ + a > 0` exists.
pub fn extrapolate(points: [(f64, f64); 3]) -> Option<f64> {
    let [(r1, e1), (r2, e2), (r3, e3)] = points;
    let (d1, d2) = (e2 - e1, e3 - e2);
    if !(d1 > 0.0 && d2 > 0.0) {
        return None;
    }
    let target = d1 / d2;
    let u = |r: f64, a: f64| 1.0 / ((r + a) * (r + a));
    let ratio = |a: f64| (u(r1, a) - u(r2, a)) / (u(r2, a) - u(r3, a));
    // The ratio decreases from +∞ (a → −r₁) towards its a → ∞ limit.
    let mut lo = -r1 + 1e-9;
    let mut hi = 1e6;
    if ratio(hi) > target || ratio(lo) < target {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ratio(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    let c = d2 / (u(r2, a) - u(r3, a));
    Some(e3 + c * u(r3, a))
}

/// Gap test for `μ` on `ℓ²(G)`. Infinite groups: truncated estimates over the
/// radius schedule, each warm-started from the previous eigenvector so that
/// estimates increase with the radius. Finite permutation groups: exact dense
/// eigendecomposition, with the gap measured on the complement of constants.
pub fn kesten_verdict(
    group: &GroupSpec,
    mu: &GenMeasure,
    radii: &[usize],
    theta: f64,
    tol: f64,
    cap: usize,
) -> Result<SpectralReport, MarkovError> {
    if group.is_finite() {
        return finite_verdict(group, mu, theta, cap);
    }
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MarkovError::InvalidSchedule(
            "radii must be nonempty and strictly increasing".to_string(),
        ));
    }
    let mut estimates = Vec::with_capacity(radii.len());
    let mut previous: Option<(Rep<f64>, Vec<f64>)> = None;
    for &r in radii {
        let rep = Rep::<f64>::regular(group.clone(), r, cap)?;
        let start = match &previous {
            Some((Rep::Regular(old), x)) => {
                let Rep::Regular(new) = &rep else { unreachable!() };
                let mut s = vec![0.0; new.dim()];
                for (i, g) in old.ball().elems().iter().enumerate() {
                    if let Some(j) = new.ball().position(g) {
                        s[j] = x[i];
                    }
                }
                s
            }
            _ => start_vector(&rep),
        };
        let op = Operator::new(&rep, mu)?;
        let (rq, x) = power_iteration(&op, &start, tol, DEFAULT_MAX_ITER)?;
        estimates.push(rq);
        previous = Some((rep, x));
    }
    let mut extrapolations = vec![None; radii.len().min(2)];
    for i in 2..radii.len() {
        extrapolations.push(extrapolate([
            (radii[i - 2] as f64, estimates[i - 2]),
            (radii[i - 1] as f64, estimates[i - 1]),
            (radii[i] as f64, estimates[i]),
        ]));
    }
    let n = estimates.len();
    let max_est = estimates.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let last = estimates[n - 1];
    let raw_plateau = n >= 2 && (last - estimates[n - 2]).abs() < PLATEAU_TOL;
    let ext_plateau = match (n >= 2).then(|| (extrapolations[n - 2], extrapolations[n - 1])) {
        Some((Some(a), Some(b))) if (a - b).abs() < EXTRAPOLATION_TOL => Some(b),
        _ => None,
    };
    let (verdict, plateau) = if max_est >= NOGAP_TRIGGER {
        (Verdict::NoGap, max_est)
    } else if raw_plateau && last <= theta {
        (Verdict::Gap, last)
    } else if let Some(p) = ext_plateau.filter(|&p| p <= theta) {
        (Verdict::Gap, p)
    } else {
        (
            Verdict::Inconclusive,
            extrapolations[n - 1].unwrap_or(last).max(last),
        )
    };
    Ok(SpectralReport {
        radii: radii.to_vec(),
        estimates,
        extrapolations,
        verdict,
        plateau,
        margin: theta - plateau,
        finite: None,
    })
}

fn finite_verdict(
    group: &GroupSpec,
    mu: &GenMeasure,
    theta: f64,
    cap: usize,
) -> Result<SpectralReport, MarkovError> {
    let elems = group.elements(cap.min(DEFAULT_ORDER_CAP))?;
    let n = elems.len();
    let index: HashMap<&GroupElem, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut p = DMatrix::<f64>::zeros(n, n);
    for (h, w) in mu.support() {
        let w = Scalar::to_float(w);
        for (i, x) in elems.iter().enumerate() {
            let j = index[&group.multiply(h, x)?];
            p[(j, i)] += w;
        }
    }
    let mut eig: Vec<f64> = p.symmetric_eigen().eigenvalues.iter().cloned().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    let top = eig[0];
    let second = eig.get(1).cloned().unwrap_or(f64::NEG_INFINITY);
    // ‖P_μ‖ on the complement of constants; zero for the trivial group.
    let second_abs = eig[1..].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let verdict = if second < 1.0 - FINITE_GAP_TOL {
        Verdict::Gap
    } else {
        Verdict::NoGap
    };
    let plateau = second_abs;
    Ok(SpectralReport {
        radii: Vec::new(),
        estimates: Vec::new(),
        extrapolations: Vec::new(),
        verdict,
        plateau,
        margin: theta - plateau,
        finite: Some((n, top, second)),
    })
}
