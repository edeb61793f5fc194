//! Constructions on sequences of almost-invariant vectors: Gram–Schmidt
//! orthogonalization with the per-step defect bound, the `ε_n`-scaled
//! witness whose pairings equal one half, and the weak-null sparsification
//! selection. Also the named input families.

mod families;
mod orthogonalize;
mod sparsify;
mod witness;

pub use families::{basis_family, householder_family, parse_sequence, windows_family, Family};
pub use orthogonalize::{orthogonalize, OrthoStep, Orthogonalized, StepDefect, PROJECTION_FLOOR};
pub use sparsify::{sparsify_weak_null, SparsifyCheck, Sparsified};
pub use witness::{scale_and_witness, WitnessBundle, WitnessOutcome};

use thiserror::Error;

use crate::reps::{invariance_defect, DefectReport, Rep, RepError, Scalar, VectorH};
use crate::groups::GenMeasure;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlmostInvError {
    #[error("the sequence is empty")]
    EmptySequence,
    #[error("vector {0} is not a unit vector")]
    NotUnit(usize),
    #[error("vectors {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("no admissible index for step {0} within the finite input")]
    NoAdmissibleIndex(usize),
    #[error("vector {0} lies in the span of the previous selections")]
    DegenerateProjection(usize),
    #[error("only {found} of {needed} vectors meet the defect schedule")]
    SubsequenceExhausted { found: usize, needed: usize },
    #[error("no admissible index for selection step {0}")]
    SelectionFailed(usize),
    #[error("no exact value: {0}")]
    Inexact(String),
    #[error("pairing check failed at position {0}")]
    WitnessCheckFailed(usize),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

impl AlmostInvError {
    pub fn name(&self) -> &'static str {
        match self {
            AlmostInvError::EmptySequence => "EmptySequence",
            AlmostInvError::NotUnit(_) => "NotUnit",
            AlmostInvError::NotOrthogonal(..) => "NotOrthogonal",
            AlmostInvError::NoAdmissibleIndex(_) => "NoAdmissibleIndex",
            AlmostInvError::DegenerateProjection(_) => "DegenerateProjection",
            AlmostInvError::SubsequenceExhausted { .. } => "SubsequenceExhausted",
            AlmostInvError::SelectionFailed(_) => "SelectionFailed",
            AlmostInvError::Inexact(_) => "Inexact",
            AlmostInvError::WitnessCheckFailed(_) => "WitnessCheckFailed",
            AlmostInvError::Rep(e) => e.name(),
            AlmostInvError::Parse { .. } => "ParseError",
        }
    }
}

/// Unit vectors with their defects under one shared measure.
#[derive(Clone, Debug)]
pub struct AlmostInvSeq<S: Scalar> {
    pub vectors: Vec<VectorH<S>>,
    pub defects: Vec<DefectReport<S>>,
}

/// Tolerance for unit norms and orthogonality in float mode.
pub const UNIT_TOL: f64 = 1e-10;

impl<S: Scalar> AlmostInvSeq<S> {
    pub fn new(rep: &Rep<S>, mu: &GenMeasure, vectors: Vec<VectorH<S>>) -> Result<Self, AlmostInvError> {
        if vectors.is_empty() {
            return Err(AlmostInvError::EmptySequence);
        }
        let mut defects = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.iter().enumerate() {
            if !is_unit(v) {
                return Err(AlmostInvError::NotUnit(i + 1));
            }
            defects.push(invariance_defect(rep, mu, v)?);
        }
        Ok(AlmostInvSeq { vectors, defects })
    }
}

pub(crate) fn is_unit<S: Scalar>(v: &VectorH<S>) -> bool {
    let n = v.norm_sq();
    if S::EXACT {
        n == S::one()
    } else {
        (n.to_float() - 1.0).abs() <= UNIT_TOL
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;
    use crate::groups::{GroupElem, GroupSpec};
    use crate::reps::{inner, sigma_eval, Label, Mat};
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn z(n: i64) -> GroupElem {
        GroupElem::Vector(vec![n])
    }

    fn z_measure() -> GenMeasure {
        GenMeasure::lazy_uniform(&GroupSpec::zpow(1))
    }

    fn gram_defect(vs: &[VectorH<f64>]) -> f64 {
        let n = vs.len();
        let g = DMatrix::from_fn(n, n, |i, j| inner(&vs[i], &vs[j]).unwrap());
        (g - DMatrix::identity(n, n)).norm()
    }

    #[test]
    fn family_names_round_trip() {
        for s in ["windows:40", "basis:7", "householder:3"] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
        assert!("windows:0".parse::<Family>().is_err());
        assert!("spiral:4".parse::<Family>().is_err());
    }

    #[test]
    fn orthonormal_input_is_unchanged() {
        let (rep, seq) = basis_family::<f64>(12).unwrap();
        let out = orthogonalize(&rep, &z_measure(), &seq, None).unwrap();
        assert_eq!(out.vectors, seq);
        assert_eq!(out.sources, (1..=12).collect::<Vec<_>>());
        assert!(out.steps.iter().all(|s| s.projection_norm == 0.0));
    }

    #[test]
    fn windows_are_orthogonalized_with_the_step_bound() {
        let (rep, seq) = windows_family(40).unwrap();
        let out = orthogonalize(&rep, &z_measure(), &seq, None).unwrap();
        assert!(out.vectors.len() >= 3);
        assert!(gram_defect(&out.vectors) <= 1e-10);
        for s in &out.steps {
            assert!(s.bound_holds(), "step {}: {:?}", s.k, s.defects);
            assert!(s.projection_norm < 1.0 / (s.k as f64).sqrt());
            assert!(s.m > out.sources[s.k - 1]);
        }
        assert!(out.exhausted_at.is_some());
        assert_eq!(
            orthogonalize(&rep, &z_measure(), &seq, Some(40)).unwrap_err(),
            AlmostInvError::NoAdmissibleIndex(out.vectors.len())
        );
    }

    #[test]
    fn non_unit_input_is_rejected() {
        let (rep, mut seq) = windows_family(3).unwrap();
        seq[1] = seq[1].scale(&2.0);
        assert_eq!(
            orthogonalize(&rep, &z_measure(), &seq, None).unwrap_err(),
            AlmostInvError::NotUnit(2)
        );
    }

    #[test]
    fn householder_defects_are_exact_powers() {
        let (rep, seq) = householder_family(4).unwrap();
        for (k, v) in seq.iter().enumerate() {
            let d = invariance_defect(&rep, &z_measure(), v).unwrap();
            let four = Rational::from_integer(num_bigint::BigInt::from(16u32).pow(k as u32 + 1));
            assert_eq!(d.max_defect_sq, q(1, 1) / four);
        }
    }

    #[test]
    fn witness_pairs_to_one_half_exactly() {
        let n = 6;
        let (rep, seq) = householder_family(n).unwrap();
        let WitnessOutcome::Bundle(b) = scale_and_witness(&rep, &z_measure(), &seq, n).unwrap() else {
            panic!("unexpected invariant vector");
        };
        assert_eq!(b.indices, (1..=n).collect::<Vec<_>>());
        for (k, (w_n, eps)) in b.scaled.iter().zip(&b.epsilons).enumerate() {
            let two_k = Rational::from_integer(num_bigint::BigInt::from(2u32).pow(k as u32 + 1));
            assert_eq!(*w_n, seq[k].scale(&two_k));
            assert_eq!(*eps, q(1, 1) / (&two_k * &two_k));
            assert_eq!(inner(&b.witness, w_n).unwrap(), q(1, 2));
            assert_eq!(w_n.norm_sq(), q(1, 1) / eps);
            assert_eq!(sigma_eval(w_n, &b.witness).unwrap().to_string(), "1/2");
        }
    }

    #[test]
    fn invariant_vectors_short_circuit() {
        let group = GroupSpec::zpow(1);
        let rep = Rep::direct_sum(vec![
            Rep::matrix(group.clone(), vec![Mat::from_rows(vec![vec![q(-1, 1)]]).unwrap()]).unwrap(),
            Rep::trivial(group.clone(), 1).unwrap(),
        ])
        .unwrap();
        let seq = vec![VectorH::basis_index(0), VectorH::basis_index(1)];
        match scale_and_witness(&rep, &z_measure(), &seq, 3).unwrap() {
            WitnessOutcome::Invariant { index, vector } => {
                assert_eq!(index, 2);
                assert_eq!(vector, seq[1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn large_defects_exhaust_the_schedule() {
        // Rotation by 60°: every unit vector moves by exactly 1.
        let (c, s) = (0.5, 3f64.sqrt() / 2.0);
        let rot = Mat::from_rows(vec![vec![c, -s], vec![s, c]]).unwrap();
        let rep = Rep::matrix(GroupSpec::zpow(1), vec![rot]).unwrap();
        let seq = vec![VectorH::basis_index(0), VectorH::basis_index(1)];
        assert_eq!(
            scale_and_witness(&rep, &z_measure(), &seq, 1).unwrap_err(),
            AlmostInvError::SubsequenceExhausted { found: 0, needed: 1 }
        );
    }

    #[test]
    fn orthogonalized_windows_give_witnesses() {
        let (rep, seq) = windows_family(400).unwrap();
        let mu = z_measure();
        let out = orthogonalize(&rep, &mu, &seq, None).unwrap();
        let WitnessOutcome::Bundle(b) = scale_and_witness(&rep, &mu, &out.vectors, 2).unwrap() else {
            panic!("unexpected invariant vector");
        };
        for w_n in &b.scaled {
            let s = sigma_eval(w_n, &b.witness).unwrap().as_f64();
            assert!((s - 0.5).abs() <= 1e-9);
        }
    }

    #[test]
    fn sparsify_examples() {
        let (rep, seq) = basis_family::<Rational>(30).unwrap();
        let res = sparsify_weak_null(&rep, &seq, &[z(1)], 6).unwrap();
        assert!(res.indices.windows(2).all(|w| w[0] < w[1]));
        assert!(res.checks.iter().all(|c| c.value < c.bound));
        for c in &res.checks {
            let gw = rep.apply_g(&c.g, &seq[res.indices[c.j - 1] - 1]).unwrap();
            assert_eq!(inner(&seq[res.indices[c.n - 1] - 1], &gw).unwrap().abs_val(), c.value);
        }
        // Shifts of ±1 rule out neighbours.
        assert_eq!(res.indices, vec![1, 3, 5, 7, 9, 11]);

        let free = sparsify_weak_null(&rep, &seq, &[], 5).unwrap();
        assert_eq!(free.indices, vec![1, 2, 3, 4, 5]);
        let mut expected = VectorH::zero();
        for n in 0..5 {
            expected.set(Label::Elem(z(n)), q(1, 1 << (n + 1)));
        }
        assert_eq!(free.combined, expected);

        let constant = vec![VectorH::<Rational>::basis_elem(z(0)); 10];
        assert_eq!(
            sparsify_weak_null(&rep, &constant, &[z(0)], 3).unwrap_err(),
            AlmostInvError::SelectionFailed(2)
        );
    }

    proptest! {
        #[test]
        fn orthogonalize_postconditions(n in 3usize..60, shift in 0usize..5) {
            let (rep, seq) = windows_family(n + shift).unwrap();
            let out = orthogonalize(&rep, &z_measure(), &seq[shift..], None).unwrap();
            prop_assert!(gram_defect(&out.vectors) <= 1e-10);
            prop_assert!(out.steps.iter().all(|s| s.bound_holds()));
        }

        #[test]
        fn sparsify_reports_are_reevaluable(n in 2usize..6, stride in 1i64..4) {
            let (rep, _) = basis_family::<Rational>(60).unwrap();
            let seq: Vec<VectorH<Rational>> = (0..20).map(|i| VectorH::basis_elem(z(i * stride))).collect();
            if let Ok(res) = sparsify_weak_null(&rep, &seq, &[z(1), z(2)], n) {
                prop_assert!(res.indices.windows(2).all(|w| w[0] < w[1]));
                for c in &res.checks {
                    let gw = rep.apply_g(&c.g, &seq[res.indices[c.j - 1] - 1]).unwrap();
                    let v = inner(&seq[res.indices[c.n - 1] - 1], &gw).unwrap().abs_val();
                    prop_assert!(v < c.bound);
                }
            }
        }
    }
}
