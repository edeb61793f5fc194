//! Selection, rescaling and the witness vector for a defect schedule.

use super::{is_unit, AlmostInvError, UNIT_TOL};
use crate::groups::GenMeasure;
use crate::reps::{inner, invariance_defect, Rep, Scalar, VectorH};

/// The scaled sequence `w_n = v_n/√ε_n` and `w = ½ Σ ε_n w_n`.
#[derive(Clone, Debug)]
pub struct WitnessBundle<S: Scalar> {
    /// Selected source indices (1-based).
    pub indices: Vec<usize>,
    /// `ε_n = max_h ‖h v_n − v_n‖` of the selected vectors.
    pub epsilons: Vec<S>,
    pub scaled: Vec<VectorH<S>>,
    pub witness: VectorH<S>,
    /// `⟨w, w_n⟩`, each equal to one half.
    pub pairings: Vec<S>,
}

#[derive(Clone, Debug)]
pub enum WitnessOutcome<S: Scalar> {
    /// A vector with zero defect: it is invariant and serves as the witness.
    Invariant { index: usize, vector: VectorH<S> },
    Bundle(WitnessBundle<S>),
}

fn power_of_four_inverse<S: Scalar>(n: usize) -> S {
    let mut x = S::one();
    let quarter = S::one() / S::from_int(4);
    for _ in 0..n {
        x = x * quarter.clone();
    }
    x
}

/// Selects greedily, in order, `v_{k_1}, v_{k_2}, …` with `ε_n < 2^{-n}` (tested
/// as `ε_n² < 4^{-n}`), then scales. Short-circuits on an invariant vector.
pub fn scale_and_witness<S: Scalar>(
    rep: &Rep<S>,
    mu: &GenMeasure,
    seq: &[VectorH<S>],
    n: usize,
) -> Result<WitnessOutcome<S>, AlmostInvError> {
    if seq.is_empty() {
        return Err(AlmostInvError::EmptySequence);
    }
    for (i, v) in seq.iter().enumerate() {
        if !is_unit(v) {
            return Err(AlmostInvError::NotUnit(i + 1));
        }
        for (j, u) in seq.iter().enumerate().take(i) {
            let p = inner(u, v)?;
            let orthogonal = if S::EXACT { p.is_zero() } else { p.to_float().abs() <= UNIT_TOL };
            if !orthogonal {
                return Err(AlmostInvError::NotOrthogonal(j + 1, i + 1));
            }
        }
    }
    let mut defects_sq = Vec::with_capacity(seq.len());
    for (i, v) in seq.iter().enumerate() {
        let d = invariance_defect(rep, mu, v)?.max_defect_sq;
        if d.is_zero() {
            return Ok(WitnessOutcome::Invariant {
                index: i + 1,
                vector: v.clone(),
            });
        }
        defects_sq.push(d);
    }
    let mut indices = Vec::with_capacity(n);
    let mut next = 0;
    for step in 1..=n {
        let bound = power_of_four_inverse::<S>(step);
        match (next..seq.len()).find(|&i| defects_sq[i] < bound) {
            Some(i) => {
                indices.push(i);
                next = i + 1;
            }
            None => {
                return Err(AlmostInvError::SubsequenceExhausted {
                    found: indices.len(),
                    needed: n,
                })
            }
        }
    }
    let mut epsilons = Vec::with_capacity(n);
    let mut scaled = Vec::with_capacity(n);
    let mut witness = VectorH::zero();
    let half = S::one() / S::from_int(2);
    for &i in &indices {
        let eps = defects_sq[i]
            .sqrt_exact()
            .ok_or_else(|| AlmostInvError::Inexact(format!("ε of vector {} is irrational", i + 1)))?;
        let root = eps
            .sqrt_exact()
            .ok_or_else(|| AlmostInvError::Inexact(format!("√ε of vector {} is irrational", i + 1)))?;
        scaled.push(seq[i].scale(&(S::one() / root.clone())));
        witness = witness.axpy(&(half.clone() * root), &seq[i])?;
        epsilons.push(eps);
    }
    let mut pairings = Vec::with_capacity(n);
    for (pos, w_n) in scaled.iter().enumerate() {
        let p = inner(&witness, w_n)?;
        let ok = if S::EXACT { p == half } else { (p.to_float() - 0.5).abs() <= 1e-9 };
        if !ok {
            return Err(AlmostInvError::WitnessCheckFailed(pos + 1));
        }
        pairings.push(p);
    }
    Ok(WitnessOutcome::Bundle(WitnessBundle {
        indices: indices.into_iter().map(|i| i + 1).collect(),
        epsilons,
        scaled,
        witness,
        pairings,
    }))
}
