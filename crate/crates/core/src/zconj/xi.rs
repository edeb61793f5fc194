//! The conjugacy decision and the field isomorphism Ξ.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::unit::{AlgebraicUnit, UnitAlgebraic};
use super::ZconjError;
use crate::exactalg::{IntPoly, NumberField, NumberFieldElem};

/// `p(z)` as a residue modulo the minimal polynomial of `z`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    /// `None` for transcendental `z`, where no finite description exists.
    pub residue: Option<NumberFieldElem>,
    pub zero: bool,
}

pub fn eval_at(z: &UnitAlgebraic, p: &IntPoly) -> Evaluation {
    match z {
        UnitAlgebraic::Algebraic(a) => {
            let r = a.field().reduce_int(p);
            Evaluation {
                zero: r.is_zero(),
                residue: Some(r),
            }
        }
        UnitAlgebraic::Transcendental(_) => Evaluation {
            residue: None,
            zero: p.is_zero(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Both transcendental.
    BothTranscendental,
    /// The common minimal polynomial.
    SharedMinpoly(IntPoly),
    /// A polynomial vanishing at exactly one of the two numbers.
    Separating(IntPoly),
    /// One number is transcendental; the other's minimal polynomial
    /// separates them.
    Mixed(IntPoly),
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::BothTranscendental => write!(f, "transcendental"),
            Certificate::SharedMinpoly(p) | Certificate::Separating(p) | Certificate::Mixed(p) => {
                write!(f, "{p}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyVerdict {
    pub conjugate: bool,
    pub certificate: Certificate,
}

/// Multiplication by `z` and by `w` on `C` are additively conjugate iff both
/// are transcendental or both are algebraic with the same minimal polynomial.
pub fn decide_conjugacy(z: &UnitAlgebraic, w: &UnitAlgebraic) -> ConjugacyVerdict {
    match (z, w) {
        (UnitAlgebraic::Transcendental(_), UnitAlgebraic::Transcendental(_)) => ConjugacyVerdict {
            conjugate: true,
            certificate: Certificate::BothTranscendental,
        },
        (UnitAlgebraic::Algebraic(a), UnitAlgebraic::Transcendental(_))
        | (UnitAlgebraic::Transcendental(_), UnitAlgebraic::Algebraic(a)) => ConjugacyVerdict {
            conjugate: false,
            certificate: Certificate::Mixed(a.minpoly().clone()),
        },
        (UnitAlgebraic::Algebraic(a), UnitAlgebraic::Algebraic(b)) => {
            if a.minpoly() == b.minpoly() {
                ConjugacyVerdict {
                    conjugate: true,
                    certificate: Certificate::SharedMinpoly(a.minpoly().clone()),
                }
            } else {
                // minpoly(z) vanishes at z; it cannot vanish at w since both
                // are irreducible, normalized and distinct.
                debug_assert!(!eval_at(w, a.minpoly()).zero);
                ConjugacyVerdict {
                    conjugate: false,
                    certificate: Certificate::Separating(a.minpoly().clone()),
                }
            }
        }
    }
}

/// The field isomorphism `Q(z) → Q(w)` with `z ↦ w`. On residues modulo the
/// shared minimal polynomial it is the identity on coefficients.
#[derive(Clone, Debug)]
pub struct XiMap {
    z: AlgebraicUnit,
    w: AlgebraicUnit,
}

pub fn build_xi(z: &UnitAlgebraic, w: &UnitAlgebraic) -> Result<XiMap, ZconjError> {
    match (z, w) {
        (UnitAlgebraic::Algebraic(a), UnitAlgebraic::Algebraic(b)) => {
            if a.minpoly() != b.minpoly() {
                return Err(ZconjError::NotConjugate);
            }
            Ok(XiMap {
                z: a.clone(),
                w: b.clone(),
            })
        }
        _ => Err(ZconjError::TranscendentalInput),
    }
}

impl XiMap {
    pub fn modulus(&self) -> &IntPoly {
        self.z.minpoly()
    }

    pub fn domain(&self) -> &Arc<NumberField> {
        self.z.field()
    }

    pub fn codomain(&self) -> &Arc<NumberField> {
        self.w.field()
    }

    pub fn z(&self) -> &AlgebraicUnit {
        &self.z
    }

    pub fn w(&self) -> &AlgebraicUnit {
        &self.w
    }

    pub fn apply(&self, a: &NumberFieldElem) -> Result<NumberFieldElem, ZconjError> {
        if a.field().modulus() != self.modulus() {
            return Err(ZconjError::Exact(crate::exactalg::ExactError::FieldMismatch));
        }
        Ok(self.w.field().element(a.residue().to_vec()))
    }

    /// `Ξ(p(z)/q(z))`.
    pub fn apply_ratio(&self, p: &IntPoly, q: &IntPoly) -> Result<NumberFieldElem, ZconjError> {
        let f = self.z.field();
        let value = f.reduce_int(p).try_div(&f.reduce_int(q))?;
        self.apply(&value)
    }

    /// Componentwise transport on `Q(z)^k`.
    pub fn transport(&self, v: &[NumberFieldElem]) -> Result<Vec<NumberFieldElem>, ZconjError> {
        v.iter().map(|a| self.apply(a)).collect()
    }

    /// Numeric values of `a` at `z` and of `Ξ(a)` at `w`.
    pub fn trace(&self, a: &NumberFieldElem) -> Result<(Complex64, Complex64), ZconjError> {
        let b = self.apply(a)?;
        Ok((a.embed(self.z.approx()), b.embed(self.w.approx())))
    }
}
