//! Scalar fields shared by exact and floating representations.

use std::fmt;
use std::ops::Neg;

use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::exactalg::{parse_rational, rational_sqrt_exact, Rational, TorusValue};

/// Coefficient field of a representation: `f64` (float mode) or
/// [`Rational`] (exact mode).
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialEq + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self;

    /// Exact conversion of a float; `None` only for non-finite input.
    fn from_float(x: f64) -> Option<Self>;

    fn to_float(&self) -> f64;

    fn to_torus(&self) -> TorusValue;

    fn abs_val(&self) -> Self;

    /// `|self| ≤ tol`, or exactly zero in exact mode.
    fn negligible(&self, tol: f64) -> bool;

    fn parse_scalar(text: &str) -> Option<Self>;

    /// Square root of a nonnegative value; `None` in exact mode when the root
    /// is irrational.
    fn sqrt_exact(&self) -> Option<Self>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_float(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn to_float(&self) -> f64 {
        *self
    }

    fn to_torus(&self) -> TorusValue {
        TorusValue::from_f64(*self)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        match text.trim().parse::<f64>() {
            Ok(x) => Some(x),
            Err(_) => parse_rational(text).ok().and_then(|q| q.to_f64()),
        }
    }

    fn sqrt_exact(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_int(n: i64) -> Self {
        Rational::from_integer(n.into())
    }

    fn from_float(x: f64) -> Option<Self> {
        Rational::from_float(x)
    }

    fn to_float(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_torus(&self) -> TorusValue {
        TorusValue::from_rational(self)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        parse_rational(text).ok()
    }

    fn sqrt_exact(&self) -> Option<Self> {
        rational_sqrt_exact(self)
    }
}
