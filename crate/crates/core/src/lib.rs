//! Computable pieces of the correspondence between almost-invariant vectors
//! of orthogonal representations and fixed points of the dual action on the
//! Bohr compactification.
//!
//! - [`exactalg`]: rationals, integer polynomials, cyclotomics, number fields.
//! - [`groups`]: free groups, `Z^d`, permutation groups, generating measures.
//! - [`reps`]: orthogonal representation backends and vector operations.
//! - [`markov`]: the averaging operator `P_μ`, spectral estimates, gap audits.
//! - [`almostinv`]: orthogonalization, witness and sparsification sequences.
//! - [`duality`]: finite abelian groups, characters, toral ergodicity.
//! - [`zconj`]: additive conjugacy of irreducible `Z`-representations.
//! - [`cli`]: the batch command-line front end.

pub mod almostinv;
pub mod cli;
pub mod duality;
pub mod exactalg;
pub mod groups;
pub mod markov;
pub mod reps;
pub mod zconj;
