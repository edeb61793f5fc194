//! Representations of Z by multiplication with a unit-modulus number.

use num_traits::{Signed, ToPrimitive};

use super::matrix::{Mat, MatrixRep};
use super::{RepError, Scalar};
use crate::exactalg::{rational_sqrt_exact, NumberFieldElem, Rational};
use crate::groups::GroupSpec;
use crate::zconj::{AlgebraicUnit, UnitAlgebraic};

/// The `Z`-representation `n ↦ multiplication by z^n` on `C ≅ R²`.
/// Exact action is available on `Q(z)` coordinates; the 2×2 rotation matrix
/// is exact only when `z ∈ Q(i)`.
#[derive(Clone, Debug)]
pub struct ZRotationAlg {
    z: AlgebraicUnit,
    exact: Option<(Rational, Rational)>,
    cos_sin: (f64, f64),
}

impl ZRotationAlg {
    pub fn new(z: &UnitAlgebraic) -> Result<Self, RepError> {
        let z = z
            .as_algebraic()
            .ok_or_else(|| RepError::NotExact("transcendental rotation".to_string()))?
            .clone();
        let exact = gaussian_rational(&z);
        let cos_sin = match &exact {
            Some((a, b)) => (a.to_f64().unwrap_or(f64::NAN), b.to_f64().unwrap_or(f64::NAN)),
            None => {
                let c = z.approx();
                let r = c.norm();
                (c.re / r, c.im / r)
            }
        };
        Ok(ZRotationAlg { z, exact, cos_sin })
    }

    pub fn unit(&self) -> &AlgebraicUnit {
        &self.z
    }

    /// `(cos θ, sin θ)` exactly, when `z` has rational coordinates.
    pub fn exact_cos_sin(&self) -> Option<&(Rational, Rational)> {
        self.exact.as_ref()
    }

    pub fn cos_sin(&self) -> (f64, f64) {
        self.cos_sin
    }

    /// `z^n · x` in `Q(z)`.
    pub fn act_exact(&self, n: i64, x: &NumberFieldElem) -> Result<NumberFieldElem, RepError> {
        if x.field().modulus() != self.z.minpoly() {
            return Err(RepError::DimensionMismatch(
                "element of a different number field".to_string(),
            ));
        }
        let zn = self
            .z
            .field()
            .generator()
            .pow(n)
            .map_err(|e| RepError::NotExact(e.to_string()))?;
        Ok(&zn * x)
    }

    pub fn matrix<S: Scalar>(&self) -> Result<Mat<S>, RepError> {
        let (c, s) = if S::EXACT {
            let (a, b) = self.exact.as_ref().ok_or_else(|| {
                RepError::NotExact(format!(
                    "rotation by a root of {} has irrational coordinates",
                    self.z.minpoly()
                ))
            })?;
            (S::from_rational(a), S::from_rational(b))
        } else {
            (
                S::from_float(self.cos_sin.0).expect("finite"),
                S::from_float(self.cos_sin.1).expect("finite"),
            )
        };
        Mat::from_rows(vec![vec![c.clone(), -s.clone()], vec![s, c]])
    }

    pub fn matrix_rep<S: Scalar>(&self) -> Result<MatrixRep<S>, RepError> {
        MatrixRep::new(GroupSpec::zpow(1), vec![self.matrix()?])
    }
}

/// `z = a + bi` with rational `a, b`, if it exists.
fn gaussian_rational(z: &AlgebraicUnit) -> Option<(Rational, Rational)> {
    let c: Vec<Rational> = z
        .minpoly()
        .coeffs()
        .iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect();
    match c.len() {
        2 => Some((-&c[0] / &c[1], Rational::from_integer(0.into()))),
        3 => {
            let disc = &c[1] * &c[1] - Rational::from_integer(4.into()) * &c[0] * &c[2];
            let root = rational_sqrt_exact(&-disc)?;
            let two_a = Rational::from_integer(2.into()) * &c[2];
            let re = -&c[1] / &two_a;
            let mut im = root / two_a;
            if z.approx().im < 0.0 {
                im = -im;
            }
            debug_assert!(im.is_positive() == (z.approx().im > 0.0));
            Some((re, im))
        }
        _ => None,
    }
}
