//! Values in R/Z, exact where possible.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{ToPrimitive, Zero};

use super::rational::rational_floor;
use super::Rational;

/// Float-mode values within this distance of 1 are snapped to 0.
pub const FLOAT_SNAP: f64 = 1e-12;

/// An element of the circle group `R/Z`, stored as its representative in
/// `[0, 1)`.
#[derive(Clone, Debug)]
pub enum TorusValue {
    Exact(Rational),
    Float(f64),
}

impl TorusValue {
    pub fn zero_exact() -> Self {
        TorusValue::Exact(Rational::zero())
    }

    pub fn from_rational(q: &Rational) -> Self {
        let floor = Rational::from_integer(rational_floor(q));
        TorusValue::Exact(q - floor)
    }

    pub fn from_f64(x: f64) -> Self {
        let mut v = x - x.floor();
        if v >= 1.0 - FLOAT_SNAP || v < 0.0 {
            v = 0.0;
        }
        TorusValue::Float(v)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TorusValue::Exact(_))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            TorusValue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            TorusValue::Float(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            TorusValue::Exact(q) => Some(q),
            TorusValue::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            TorusValue::Exact(q) => q.is_zero(),
            TorusValue::Float(x) => *x == 0.0,
        }
    }

    /// Distance on the circle, in `[0, 1/2]`.
    pub fn circle_distance(&self, other: &TorusValue) -> f64 {
        let d = (self.as_f64() - other.as_f64()).abs();
        d.min(1.0 - d)
    }
}

impl PartialEq for TorusValue {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (TorusValue::Exact(a), TorusValue::Exact(b)) => a == b,
            _ => self.circle_distance(other) <= FLOAT_SNAP,
        }
    }
}

impl Add for &TorusValue {
    type Output = TorusValue;
    fn add(self, rhs: &TorusValue) -> TorusValue {
        match (self, rhs) {
            (TorusValue::Exact(a), TorusValue::Exact(b)) => TorusValue::from_rational(&(a + b)),
            _ => TorusValue::from_f64(self.as_f64() + rhs.as_f64()),
        }
    }
}

impl Neg for &TorusValue {
    type Output = TorusValue;
    fn neg(self) -> TorusValue {
        match self {
            TorusValue::Exact(a) => TorusValue::from_rational(&-a),
            TorusValue::Float(x) => TorusValue::from_f64(-x),
        }
    }
}

impl Sub for &TorusValue {
    type Output = TorusValue;
    fn sub(self, rhs: &TorusValue) -> TorusValue {
        self + &(-rhs)
    }
}

impl fmt::Display for TorusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusValue::Exact(q) => write!(f, "{q}"),
            TorusValue::Float(x) => write!(f, "{x}"),
        }
    }
}
