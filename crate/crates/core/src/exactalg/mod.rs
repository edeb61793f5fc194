//! Exact arithmetic: arbitrary-precision rationals, integer and rational
//! polynomials, cyclotomic polynomials, residue arithmetic in number fields
//! `Q[x]/(m)`, and values on the circle group `R/Z`.

mod cyclotomic;
mod irreducible;
mod numberfield;
mod poly;
mod qpoly;
mod rational;
mod torus;

pub use cyclotomic::{cyclotomic, cyclotomic_factor, divisors, euler_phi, mobius};
pub use irreducible::{poly_is_irreducible, poly_is_irreducible_capped, DEFAULT_DEGREE_CAP};
pub use numberfield::{NumberField, NumberFieldElem};
pub use poly::{poly_normalize, IntPoly};
pub use qpoly::QPoly;
pub use rational::{parse_rational, rational_sqrt_exact, Rational};
pub use torus::{TorusValue, FLOAT_SNAP};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("polynomial degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus is not irreducible over the rationals")]
    ReducibleModulus,
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("irreducibility of {0} could not be decided within the search budget")]
    IrreducibilityUndecided(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

impl ExactError {
    pub fn name(&self) -> &'static str {
        match self {
            ExactError::DegreeCapExceeded { .. } => "DegreeCapExceeded",
            ExactError::DivisionByZero => "DivisionByZero",
            ExactError::ReducibleModulus => "ReducibleModulus",
            ExactError::ConstantModulus => "ConstantModulus",
            ExactError::FieldMismatch => "FieldMismatch",
            ExactError::IrreducibilityUndecided(_) => "IrreducibilityUndecided",
            ExactError::Parse { .. } => "ParseError",
        }
    }
}
