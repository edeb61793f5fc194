//! Integer polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::qpoly::QPoly;
use super::{ExactError, Rational};

/// Polynomial with arbitrary-precision integer coefficients, constant term
/// first. Trailing zero coefficients are never stored, so the zero
/// polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += BigInt::one();
        IntPoly::new(coeffs)
    }

    pub fn monomial(c: BigInt, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero()
            || (self.content().is_one() && self.leading().is_some_and(|l| l.is_positive()))
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(c.clone())
        })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
        })
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Quotient and remainder by a monic divisor; both stay integral.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        assert!(
            divisor.leading().is_some_and(|l| l.is_one()),
            "divisor must be monic"
        );
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &c * d;
            }
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// `true` iff `divisor` divides `self` in `Q[x]`.
    pub fn divisible_by(&self, divisor: &IntPoly) -> bool {
        if divisor.is_zero() {
            return self.is_zero();
        }
        self.to_qpoly().rem(&divisor.to_qpoly()).is_zero()
    }

    /// Human-readable form such as `x^2 - 3x + 1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{i}")),
            }
        }
        out
    }
}

/// Primitive associate with positive leading coefficient; zero stays zero.
pub fn poly_normalize(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return IntPoly::zero();
    }
    let content = p.content();
    let sign = if p.leading().is_some_and(|l| l.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let divisor = content * sign;
    IntPoly::new(p.coeffs.iter().map(|c| c / &divisor).collect())
}

impl fmt::Display for IntPoly {
    /// Text form: space-separated coefficients, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.pretty())
    }
}

impl FromStr for IntPoly {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs: Result<Vec<BigInt>, _> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<BigInt>())
            .collect();
        match coeffs {
            Ok(c) if !c.is_empty() => Ok(IntPoly::new(c)),
            _ => Err(ExactError::Parse {
                what: "integer polynomial",
                input: s.to_string(),
            }),
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(
            poly_normalize(&IntPoly::from_i64(&[-2, 0, 2])),
            IntPoly::from_i64(&[-1, 0, 1])
        );
        assert_eq!(
            poly_normalize(&IntPoly::from_i64(&[-1, 1])),
            IntPoly::from_i64(&[-1, 1])
        );
        assert_eq!(
            poly_normalize(&IntPoly::from_i64(&[3, -3])),
            IntPoly::from_i64(&[-1, 1])
        );
        assert_eq!(poly_normalize(&IntPoly::zero()), IntPoly::zero());
    }

    #[test]
    fn text_form_round_trip() {
        let p: IntPoly = "-1 0 1".parse().unwrap();
        assert_eq!(p, IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(p.to_string(), "-1 0 1");
        assert_eq!(p.pretty(), "x^2 - 1");
        assert_eq!(IntPoly::from_i64(&[1, -3, 1]).pretty(), "x^2 - 3x + 1");
        assert!("".parse::<IntPoly>().is_err());
        assert!("1 x".parse::<IntPoly>().is_err());
    }

    #[test]
    fn monic_division() {
        let p = IntPoly::x_pow_minus_one(5);
        let (q, r) = p.div_rem_monic(&IntPoly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, IntPoly::from_i64(&[1, 1, 1, 1, 1]));
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-6i64..=6, 0..6).prop_map(|c| IntPoly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(p in small_poly()) {
            let n = poly_normalize(&p);
            prop_assert_eq!(poly_normalize(&n), n.clone());
            prop_assert!(n.is_normalized());
        }

        #[test]
        fn normalize_is_multiplicative(p in small_poly(), q in small_poly()) {
            // Gauss's lemma: primitive times primitive is primitive.
            let lhs = poly_normalize(&(&p * &q));
            let rhs = &poly_normalize(&p) * &poly_normalize(&q);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
