//! The averaging and difference operators of a measure.

use nalgebra::{DMatrix, DVector};

use super::MarkovError;
use crate::groups::GenMeasure;
use crate::reps::{Rep, Scalar, VectorH};

/// `P_μ v = Σ_h μ(h) π_h v`, exact in rational mode.
pub fn apply_p<S: Scalar>(rep: &Rep<S>, mu: &GenMeasure, v: &VectorH<S>) -> Result<VectorH<S>, MarkovError> {
    let mut out = VectorH::zero();
    for (h, w) in mu.support() {
        let w = S::from_rational(w);
        let hv = if h.is_identity() { v.clone() } else { rep.apply_g(h, v)? };
        out = out.axpy(&w, &hv)?;
    }
    Ok(out)
}

/// `D_μ v = v − P_μ v`.
pub fn apply_d<S: Scalar>(rep: &Rep<S>, mu: &GenMeasure, v: &VectorH<S>) -> Result<VectorH<S>, MarkovError> {
    Ok(v.sub(&apply_p(rep, mu, v)?)?)
}

/// The matrix of `P_μ` of a finite-dimensional rep, in floating point.
pub fn dense_p<S: Scalar>(rep: &Rep<S>, mu: &GenMeasure) -> Result<DMatrix<f64>, MarkovError> {
    if !rep.is_finite_dimensional() {
        return Err(MarkovError::NotFiniteDimensional);
    }
    let d = rep.dim();
    let mut p = DMatrix::zeros(d, d);
    for (h, w) in mu.support() {
        p += rep.dense_matrix(h)?.to_nalgebra() * Scalar::to_float(w);
    }
    Ok(p)
}

/// `P_μ` as a float operator on dense coordinates.
#[derive(Clone, Debug)]
pub enum Operator {
    /// Truncated regular rep: `tables[k] = (μ(h), i ↦ index of h·x_i)`.
    Regular {
        dim: usize,
        identity_weight: f64,
        tables: Vec<(f64, Vec<Option<u32>>)>,
    },
    Dense(DMatrix<f64>),
}

impl Operator {
    pub fn new<S: Scalar>(rep: &Rep<S>, mu: &GenMeasure) -> Result<Self, MarkovError> {
        match rep {
            Rep::Regular(r) => {
                let mut tables = Vec::new();
                for (h, w) in mu.non_identity() {
                    tables.push((Scalar::to_float(w), r.left_table(h)?));
                }
                Ok(Operator::Regular {
                    dim: r.dim(),
                    identity_weight: Scalar::to_float(&mu.identity_weight()),
                    tables,
                })
            }
            _ => Ok(Operator::Dense(dense_p(rep, mu)?)),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Operator::Regular { dim, .. } => *dim,
            Operator::Dense(m) => m.nrows(),
        }
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        match self {
            Operator::Regular {
                identity_weight,
                tables,
                ..
            } => {
                let mut out: Vec<f64> = v.iter().map(|x| identity_weight * x).collect();
                for (w, table) in tables {
                    for (x, target) in v.iter().zip(table) {
                        if let Some(j) = target {
                            out[*j as usize] += w * x;
                        }
                    }
                }
                out
            }
            Operator::Dense(m) => (m * DVector::from_column_slice(v)).as_slice().to_vec(),
        }
    }
}
