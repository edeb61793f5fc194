//! The regular representation on finitely supported functions.

use std::sync::Arc;

use super::vector::{Label, VectorH};
use super::{RepError, Scalar};
use crate::groups::{cayley_ball, CayleyBall, GroupElem, GroupSpec};

/// The left regular representation on `ℓ²(B_r)`, Dirichlet-truncated:
/// coefficients pushed outside the ball are dropped.
#[derive(Clone, Debug)]
pub struct RegularRep {
    group: GroupSpec,
    ball: Arc<CayleyBall>,
}

impl RegularRep {
    pub fn new(group: GroupSpec, radius: usize, cap: usize) -> Result<Self, RepError> {
        let gens = group.standard_generators();
        let ball = cayley_ball(&group, &gens, radius, cap)?;
        Ok(RegularRep {
            group,
            ball: Arc::new(ball),
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn ball(&self) -> &CayleyBall {
        &self.ball
    }

    pub fn radius(&self) -> usize {
        self.ball.radius()
    }

    pub fn dim(&self) -> usize {
        self.ball.len()
    }

    /// `table[i]` is the ball index of `h·x_i`, or `None` if it leaves the ball.
    pub fn left_table(&self, h: &GroupElem) -> Result<Vec<Option<u32>>, RepError> {
        if !self.group.owns(h) {
            return Err(RepError::UnknownGenerator(h.to_string()));
        }
        self.ball
            .elems()
            .iter()
            .map(|x| {
                let y = self.group.multiply(h, x)?;
                Ok(self.ball.position(&y).map(|i| i as u32))
            })
            .collect()
    }

    pub fn apply<S: Scalar>(&self, g: &GroupElem, v: &VectorH<S>) -> Result<VectorH<S>, RepError> {
        if !self.group.owns(g) {
            return Err(RepError::UnknownGenerator(g.to_string()));
        }
        let mut out = VectorH::zero();
        for (label, c) in v.entries() {
            let x = match label {
                Label::Elem(x) if self.ball.position(x).is_some() => x,
                _ => {
                    return Err(RepError::DimensionMismatch(format!(
                        "label {label} is not in the ball of radius {}",
                        self.radius()
                    )))
                }
            };
            let y = self.group.multiply(g, x)?;
            if self.ball.position(&y).is_some() {
                out.add_at(Label::Elem(y), c.clone());
            }
        }
        Ok(out)
    }

    /// Ball coordinates `0..dim` of a vector.
    pub fn to_dense<S: Scalar>(&self, v: &VectorH<S>) -> Result<Vec<S>, RepError> {
        let mut out = vec![S::zero(); self.dim()];
        for (label, c) in v.entries() {
            match label {
                Label::Elem(x) => match self.ball.position(x) {
                    Some(i) => out[i] = c.clone(),
                    None => {
                        return Err(RepError::DimensionMismatch(format!(
                            "label {label} is not in the ball"
                        )))
                    }
                },
                Label::Index(_) => {
                    return Err(RepError::DimensionMismatch(
                        "index label on a regular representation".to_string(),
                    ))
                }
            }
        }
        Ok(out)
    }

    pub fn from_dense<S: Scalar>(&self, coords: &[S]) -> VectorH<S> {
        let mut v = VectorH::zero();
        for (i, c) in coords.iter().enumerate() {
            v.set(Label::Elem(self.ball.get(i).clone()), c.clone());
        }
        v
    }
}
