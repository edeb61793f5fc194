//! Additive conjugacy of the `Z`-representations `n ↦ (multiplication by
//! z^n)` on `C` for unit-modulus `z`: exact root selection, evaluation in
//! `Q(z)`, the conjugacy decision, and the field isomorphism `Ξ`.

mod roots;
mod unit;
mod xi;

pub use roots::{count_roots, refine, refine_target, Rect};
pub use unit::{AlgebraicUnit, UnitAlgebraic, UNIT_TOLERANCE};
pub use xi::{build_xi, decide_conjugacy, eval_at, Certificate, ConjugacyVerdict, Evaluation, XiMap};

use thiserror::Error;

use crate::exactalg::ExactError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZconjError {
    #[error("rectangle contains {0} roots, expected exactly one")]
    NotIsolating(usize),
    #[error("a root lies on the rectangle boundary")]
    RootOnBoundary,
    #[error("isolated root has modulus {0}, not 1")]
    NotOnUnitCircle(f64),
    #[error("invalid rectangle {0}")]
    InvalidRect(String),
    #[error("cannot count roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("no finite description of Q(z) exists for a transcendental input")]
    TranscendentalInput,
    #[error("inputs have different minimal polynomials")]
    NotConjugate,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

impl ZconjError {
    pub fn name(&self) -> &'static str {
        match self {
            ZconjError::NotIsolating(_) => "NotIsolating",
            ZconjError::RootOnBoundary => "RootOnBoundary",
            ZconjError::NotOnUnitCircle(_) => "NotOnUnitCircle",
            ZconjError::InvalidRect(_) => "InvalidRect",
            ZconjError::ZeroPolynomial => "ZeroPolynomial",
            ZconjError::TranscendentalInput => "TranscendentalInput",
            ZconjError::NotConjugate => "NotConjugate",
            ZconjError::Exact(e) => e.name(),
            ZconjError::Parse { .. } => "ParseError",
        }
    }
}
