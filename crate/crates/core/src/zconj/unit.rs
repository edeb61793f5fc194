//! Parsed unit-modulus numbers, algebraic or transcendental.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::One;

use super::roots::{count_roots, dyadic, refine, Rect};
use super::ZconjError;
use crate::exactalg::{
    divisors, parse_rational, poly_normalize, IntPoly, NumberField, Rational,
};

/// Allowed distance of the refined root's modulus from 1.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// An algebraic number on the unit circle, named by its minimal polynomial
/// and a rectangle isolating it among the roots.
#[derive(Clone, Debug)]
pub struct AlgebraicUnit {
    minpoly: IntPoly,
    rect: Rect,
    refined: Rect,
    field: Arc<NumberField>,
}

impl AlgebraicUnit {
    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    /// The rectangle supplied at construction.
    pub fn rect(&self) -> &Rect {
        &self.rect
    }

    /// An isolating rectangle with sides at most `2^-40`.
    pub fn refined(&self) -> &Rect {
        &self.refined
    }

    /// `Q(z)` as `Q[x]/(minpoly)`.
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    pub fn approx(&self) -> Complex64 {
        self.refined.center()
    }
}

/// A unit-modulus complex number: algebraic with a root selector, or a
/// transcendental tag.
#[derive(Clone, Debug)]
pub enum UnitAlgebraic {
    Algebraic(AlgebraicUnit),
    Transcendental(String),
}

impl UnitAlgebraic {
    /// Checks irreducibility (degree cap applies), isolation, and that the
    /// isolated root lies on the unit circle.
    pub fn algebraic(minpoly: &IntPoly, rect: Rect) -> Result<Self, ZconjError> {
        let m = poly_normalize(minpoly);
        let field = NumberField::new(&m)?;
        Self::build(m, rect, field)
    }

    fn build(m: IntPoly, rect: Rect, field: Arc<NumberField>) -> Result<Self, ZconjError> {
        let n = count_roots(&m, &rect)?;
        if n != 1 {
            return Err(ZconjError::NotIsolating(n));
        }
        let refined = refine(&m, &rect)?;
        let (lo, hi) = refined.modulus_sq_range();
        let modulus = refined.center().norm();
        let one = Rational::one();
        if lo > one || hi < one || (modulus - 1.0).abs() > UNIT_TOLERANCE {
            return Err(ZconjError::NotOnUnitCircle(modulus));
        }
        Ok(UnitAlgebraic::Algebraic(AlgebraicUnit {
            minpoly: m,
            rect,
            refined,
            field,
        }))
    }

    /// `e^{2πia/n}`. The minimal polynomial is found by exact root counting:
    /// among `Φ_d` with `d | n`, the one with a root in a small box around
    /// the target.
    pub fn root_of_unity(n: u64, a: i64) -> Result<Self, ZconjError> {
        if n == 0 {
            return Err(ZconjError::Parse {
                what: "root of unity order",
                input: "0".to_string(),
            });
        }
        let angle = 2.0 * std::f64::consts::PI * (a.rem_euclid(n as i64) as f64) / n as f64;
        let c = Complex64::from_polar(1.0, angle);
        let h = Rational::new(1.into(), (4 * n as i64).into());
        let bits = 8 + (64 - n.leading_zeros());
        let center = (dyadic(c.re, bits), dyadic(c.im, bits));
        let rect = Rect::around(center, &h);
        for d in divisors(n) {
            let field = NumberField::cyclotomic(d);
            let phi = field.modulus().clone();
            if count_roots(&phi, &rect)? == 1 {
                return Self::build(phi, rect, field);
            }
        }
        Err(ZconjError::NotIsolating(0))
    }

    pub fn transcendental(label: &str) -> Self {
        UnitAlgebraic::Transcendental(label.to_string())
    }

    pub fn as_algebraic(&self) -> Option<&AlgebraicUnit> {
        match self {
            UnitAlgebraic::Algebraic(a) => Some(a),
            UnitAlgebraic::Transcendental(_) => None,
        }
    }

    pub fn minpoly(&self) -> Option<&IntPoly> {
        self.as_algebraic().map(|a| a.minpoly())
    }
}

impl FromStr for UnitAlgebraic {
    type Err = ZconjError;

    /// `alg:<coeffs>:<x0,x1,y0,y1>`, `trans:<label>` or `root:<n>:<a>`.
    fn from_str(text: &str) -> Result<Self, ZconjError> {
        let err = || ZconjError::Parse {
            what: "unit algebraic number",
            input: text.to_string(),
        };
        let t = text.trim();
        if let Some(label) = t.strip_prefix("trans:") {
            return Ok(UnitAlgebraic::transcendental(label));
        }
        if let Some(rest) = t.strip_prefix("root:") {
            let (n, a) = rest.split_once(':').ok_or_else(err)?;
            let n: u64 = n.trim().parse().map_err(|_| err())?;
            let a: i64 = a.trim().parse().map_err(|_| err())?;
            return UnitAlgebraic::root_of_unity(n, a);
        }
        let rest = t.strip_prefix("alg:").ok_or_else(err)?;
        let (coeffs, rect) = rest.rsplit_once(':').ok_or_else(err)?;
        let coeffs = coeffs.trim().trim_matches('"');
        let p: IntPoly = coeffs.parse().map_err(|_| err())?;
        let corners: Vec<Rational> = rect
            .split(',')
            .map(|s| parse_rational(s.trim()))
            .collect::<Result<_, _>>()
            .map_err(|_| err())?;
        if corners.len() != 4 {
            return Err(err());
        }
        let [x0, x1, y0, y1]: [Rational; 4] = corners.try_into().map_err(|_| err())?;
        UnitAlgebraic::algebraic(&p, Rect::new(x0, x1, y0, y1)?)
    }
}

impl fmt::Display for UnitAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitAlgebraic::Algebraic(a) => write!(f, "alg:{}:{}", a.minpoly, a.rect),
            UnitAlgebraic::Transcendental(l) => write!(f, "trans:{l}"),
        }
    }
}
