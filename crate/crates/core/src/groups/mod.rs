//! Finitely generated groups (free groups, `Z^d`, permutation groups),
//! symmetric generating measures, and Cayley-ball enumeration.

mod ball;
mod elem;
mod measure;
mod spec;

pub use ball::{cayley_ball, CayleyBall, DEFAULT_BALL_CAP};
pub use elem::{GroupElem, Letter, Perm, GENERATOR_NAMES};
pub use measure::{validate_measure, GenMeasure};
pub use spec::{GroupSpec, DEFAULT_ORDER_CAP};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("ball of radius {radius} exceeds the size cap {cap}")]
    BallTooLarge { radius: usize, cap: usize },
    #[error("generating set is not closed under inverses")]
    AsymmetricGenerators,
    #[error("measure is not symmetric: μ({elem}) ≠ μ({elem}⁻¹)")]
    NotSymmetric { elem: String },
    #[error("measure does not charge the identity")]
    MissingIdentity,
    #[error("weights must be positive and sum to 1 (sum is {sum})")]
    NotProbability { sum: String },
    #[error("support does not generate the group: {reason}")]
    NotGenerating { reason: String },
    #[error("element {0} does not belong to this group")]
    ForeignElement(String),
    #[error("group order exceeds the cap {0}")]
    OrderTooLarge(usize),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

impl GroupError {
    pub fn name(&self) -> &'static str {
        match self {
            GroupError::BallTooLarge { .. } => "BallTooLarge",
            GroupError::AsymmetricGenerators => "AsymmetricGenerators",
            GroupError::NotSymmetric { .. } => "NotSymmetric",
            GroupError::MissingIdentity => "MissingIdentity",
            GroupError::NotProbability { .. } => "NotProbability",
            GroupError::NotGenerating { .. } => "NotGenerating",
            GroupError::ForeignElement(_) => "ForeignElement",
            GroupError::OrderTooLarge(_) => "OrderTooLarge",
            GroupError::Parse { .. } => "ParseError",
        }
    }
}
