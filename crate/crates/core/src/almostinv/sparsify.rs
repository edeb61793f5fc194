//! Weak-null sparsification against a finite prefix of group elements.

use super::AlmostInvError;
use crate::exactalg::Rational;
use crate::groups::GroupElem;
use crate::reps::{inner, Rep, Scalar, VectorH};

/// One re-evaluable constraint `|⟨v_{k_n}, g w_j⟩| < 2^{-n²}`.
#[derive(Clone, Debug)]
pub struct SparsifyCheck<S: Scalar> {
    pub n: usize,
    pub j: usize,
    pub g: GroupElem,
    pub value: S,
    pub bound: S,
}

#[derive(Clone, Debug)]
pub struct Sparsified<S: Scalar> {
    /// Selected indices `k_1 < k_2 < …` (1-based).
    pub indices: Vec<usize>,
    pub checks: Vec<SparsifyCheck<S>>,
    /// `v = Σ_n 2^{-n} w_n` with `w_n = v_{k_n}`.
    pub combined: VectorH<S>,
}

fn two_pow_neg<S: Scalar>(e: u32) -> S {
    let den = num_bigint::BigInt::from(1u8) << e;
    S::from_rational(&Rational::new(1.into(), den))
}

/// Weak-null selection: `w_1 = v_1`; step `n` takes the smallest `k_n > k_{n−1}`
/// with `|⟨v_{k_n}, g w_j⟩| < 2^{-n²}` for every `j < n` and every `g` in
/// `{g_i, g_i^{-1}}` over the listed elements.
pub fn sparsify_weak_null<S: Scalar>(
    rep: &Rep<S>,
    seq: &[VectorH<S>],
    elems: &[GroupElem],
    n: usize,
) -> Result<Sparsified<S>, AlmostInvError> {
    if seq.is_empty() || n == 0 {
        return Err(AlmostInvError::EmptySequence);
    }
    let group = rep.group();
    let mut tests: Vec<GroupElem> = Vec::new();
    for g in elems {
        let inv = group.inverse(g).map_err(crate::reps::RepError::from)?;
        for h in [g.clone(), inv] {
            if !tests.contains(&h) {
                tests.push(h);
            }
        }
    }
    let mut indices = vec![0usize];
    // Translates g·w_j of the selected vectors.
    let mut translates: Vec<Vec<(GroupElem, VectorH<S>)>> = vec![translate(rep, &tests, &seq[0])?];
    let mut checks = Vec::new();
    for step in 2..=n {
        let bound = two_pow_neg::<S>((step * step) as u32);
        let start = indices[indices.len() - 1] + 1;
        let mut chosen = None;
        'scan: for (i, v) in seq.iter().enumerate().skip(start) {
            let mut local = Vec::new();
            for (j, list) in translates.iter().enumerate() {
                for (g, gw) in list {
                    let value = inner(v, gw)?.abs_val();
                    if value >= bound {
                        continue 'scan;
                    }
                    local.push(SparsifyCheck {
                        n: step,
                        j: j + 1,
                        g: g.clone(),
                        value,
                        bound: bound.clone(),
                    });
                }
            }
            chosen = Some((i, local));
            break;
        }
        let (i, local) = chosen.ok_or(AlmostInvError::SelectionFailed(step))?;
        checks.extend(local);
        indices.push(i);
        translates.push(translate(rep, &tests, &seq[i])?);
    }
    let mut combined = VectorH::zero();
    for (pos, &i) in indices.iter().enumerate() {
        combined = combined.axpy(&two_pow_neg::<S>(pos as u32 + 1), &seq[i])?;
    }
    Ok(Sparsified {
        indices: indices.into_iter().map(|i| i + 1).collect(),
        checks,
        combined,
    })
}

fn translate<S: Scalar>(
    rep: &Rep<S>,
    tests: &[GroupElem],
    w: &VectorH<S>,
) -> Result<Vec<(GroupElem, VectorH<S>)>, AlmostInvError> {
    tests
        .iter()
        .map(|g| Ok((g.clone(), rep.apply_g(g, w)?)))
        .collect()
}
