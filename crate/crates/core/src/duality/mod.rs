//! Finite abelian groups and their Pontryagin duals: characters, actions by
//! automorphisms and the dual action, fixed-point counts, transport of
//! conjugacies to the dual, and the ergodicity test for toral automorphisms.

mod abelian;
mod action;
mod toral;

pub use abelian::{enumerate_dual, Character, FiniteAbelian};
pub use action::{
    dual_conjugacy_transport, fixed_counts, parse_matrices, AutoAction, DualTransport, IntMatrix,
};
pub use toral::{char_poly, toral_ergodicity, ErgodicVerdict, WITNESS_SUP_NORM};

use thiserror::Error;

use crate::exactalg::ExactError;
use crate::groups::GroupError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DualityError {
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: u128, cap: u64 },
    #[error("invalid invariant factors: {0}")]
    InvalidFactors(String),
    #[error("matrix does not define a map on the group: {0}")]
    NotWellDefined(String),
    #[error("map is not a bijection: {0}")]
    NotAutomorphism(String),
    #[error("generator maps violate a group relation: {0}")]
    NotHomomorphism(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("the map does not intertwine the actions at {0}")]
    NotIntertwining(String),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

impl DualityError {
    pub fn name(&self) -> &'static str {
        match self {
            DualityError::OrderCapExceeded { .. } => "OrderCapExceeded",
            DualityError::InvalidFactors(_) => "InvalidFactors",
            DualityError::NotWellDefined(_) => "NotWellDefined",
            DualityError::NotAutomorphism(_) => "NotAutomorphism",
            DualityError::NotHomomorphism(_) => "NotHomomorphism",
            DualityError::NotIsomorphism(_) => "NotIsomorphism",
            DualityError::NotIntertwining(_) => "NotIntertwining",
            DualityError::NotUnimodular(_) => "NotUnimodular",
            DualityError::Exact(e) => e.name(),
            DualityError::Group(e) => e.name(),
            DualityError::Parse { .. } => "ParseError",
        }
    }
}
