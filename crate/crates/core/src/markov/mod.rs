//! The averaging operator `P_μ = Σ μ(h) π_h` and `D_μ = I − P_μ`: spectral
//! estimates on truncated regular representations, Kesten-style gap
//! verdicts, the gap-bound audit, invariant subspaces and solves of `D_μ`.

mod audit;
mod dichotomy;
mod operator;
mod spectral;

pub use audit::{gap_bound_audit, GapAudit, AUDIT_SLACK};
pub use dichotomy::{invariant_subspace, solve_d, top_eigenvalue, SINGULAR_THRESHOLD};
pub use operator::{apply_d, apply_p, dense_p, Operator};
pub use spectral::{
    extrapolate, kesten_verdict, power_iteration, spectral_radius_truncated, SpectralReport,
    Verdict, DEFAULT_MAX_ITER, DEFAULT_TOL, NOGAP_TRIGGER, PLATEAU_TOL,
};

use thiserror::Error;

use crate::groups::GroupError;
use crate::reps::RepError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MarkovError {
    #[error("power iteration did not converge within {0} iterations")]
    NotConverged(usize),
    #[error("the representation has a {0}-dimensional space of invariant vectors")]
    HasInvariantVector(usize),
    #[error("D_μ is singular: residual {0:e} above tolerance")]
    SingularOperator(f64),
    #[error("operation needs a finite-dimensional representation")]
    NotFiniteDimensional,
    #[error("invalid radius schedule: {0}")]
    InvalidSchedule(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl MarkovError {
    pub fn name(&self) -> &'static str {
        match self {
            MarkovError::NotConverged(_) => "NotConverged",
            MarkovError::HasInvariantVector(_) => "HasInvariantVector",
            MarkovError::SingularOperator(_) => "SingularOperator",
            MarkovError::NotFiniteDimensional => "NotFiniteDimensional",
            MarkovError::InvalidSchedule(_) => "InvalidSchedule",
            MarkovError::Rep(e) => e.name(),
            MarkovError::Group(e) => e.name(),
        }
    }
}
