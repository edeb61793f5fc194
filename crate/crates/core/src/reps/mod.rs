//! Orthogonal representation backends (truncated regular, matrix, rotation
//! by an algebraic unit, direct sums) and the vector operations on them:
//! group action, inner products, invariance defects, realification and the
//! evaluation map `σ_v(w) = ⟨v, w⟩ mod 1`.

mod matrix;
mod regular;
mod rep;
mod scalar;
mod vector;
mod zrot;

pub use matrix::{realify, realify_vector, ComplexMatrixRep, Mat, MatrixRep, ORTHO_TOL};
pub use regular::RegularRep;
pub use rep::{invariance_defect, DefectReport, Rep};
pub use scalar::Scalar;
pub use vector::{inner, sigma_eval, Label, VectorH};
pub use zrot::ZRotationAlg;

use thiserror::Error;

use crate::groups::GroupError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("{0} is not an element of the represented group")]
    UnknownGenerator(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the zero vector has no invariance defect")]
    ZeroVector,
    #[error("image of generator {0} is not orthogonal")]
    NotOrthogonal(String),
    #[error("image of generator {0} is not unitary")]
    NotUnitary(String),
    #[error("generator images violate a group relation: {0}")]
    NotHomomorphism(String),
    #[error("no exact representation: {0}")]
    NotExact(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

impl RepError {
    pub fn name(&self) -> &'static str {
        match self {
            RepError::UnknownGenerator(_) => "UnknownGenerator",
            RepError::DimensionMismatch(_) => "DimensionMismatch",
            RepError::ZeroVector => "ZeroVector",
            RepError::NotOrthogonal(_) => "NotOrthogonal",
            RepError::NotUnitary(_) => "NotUnitary",
            RepError::NotHomomorphism(_) => "NotHomomorphism",
            RepError::NotExact(_) => "NotExact",
            RepError::Group(e) => e.name(),
            RepError::Parse { .. } => "ParseError",
        }
    }
}
