//! Arithmetic in simple algebraic number fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::{cyclotomic, poly_is_irreducible, poly_normalize, ExactError, IntPoly, QPoly, Rational};

/// The field `Q[x]/(m)` for an irreducible, normalized modulus `m`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: IntPoly,
    modulus_q: QPoly,
}

impl NumberField {
    /// Checks irreducibility (subject to the default degree cap).
    pub fn new(modulus: &IntPoly) -> Result<Arc<Self>, ExactError> {
        let m = poly_normalize(modulus);
        match m.degree() {
            None | Some(0) => return Err(ExactError::ConstantModulus),
            _ => {}
        }
        if !poly_is_irreducible(&m)? {
            return Err(ExactError::ReducibleModulus);
        }
        Ok(Self::from_irreducible(m))
    }

    /// `Q(ζ_k)`; cyclotomic polynomials are irreducible, so no search is run.
    pub fn cyclotomic(k: u64) -> Arc<Self> {
        Self::from_irreducible(cyclotomic(k))
    }

    pub(crate) fn from_irreducible(m: IntPoly) -> Arc<Self> {
        let modulus_q = m.to_qpoly();
        Arc::new(NumberField {
            modulus: m,
            modulus_q,
        })
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn zero(self: &Arc<Self>) -> NumberFieldElem {
        NumberFieldElem::from_qpoly(self, &QPoly::zero())
    }

    pub fn one(self: &Arc<Self>) -> NumberFieldElem {
        self.rational(Rational::one())
    }

    pub fn rational(self: &Arc<Self>, q: Rational) -> NumberFieldElem {
        NumberFieldElem::from_qpoly(self, &QPoly::constant(q))
    }

    /// The class of `x`, i.e. the distinguished root of the modulus.
    pub fn generator(self: &Arc<Self>) -> NumberFieldElem {
        NumberFieldElem::from_qpoly(
            self,
            &QPoly::new(vec![Rational::zero(), Rational::one()]),
        )
    }

    pub fn reduce_int(self: &Arc<Self>, p: &IntPoly) -> NumberFieldElem {
        NumberFieldElem::from_qpoly(self, &p.to_qpoly())
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> NumberFieldElem {
        NumberFieldElem::from_qpoly(self, &QPoly::new(coeffs))
    }
}

/// Residue of a rational polynomial modulo the field's defining polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberFieldElem {
    field: Arc<NumberField>,
    residue: Vec<Rational>,
}

impl NumberFieldElem {
    pub fn from_qpoly(field: &Arc<NumberField>, p: &QPoly) -> Self {
        let r = p.rem(&field.modulus_q);
        let mut residue = r.into_coeffs();
        residue.resize(field.degree(), Rational::zero());
        NumberFieldElem {
            field: Arc::clone(field),
            residue,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Exactly `d` coefficients, constant term first.
    pub fn residue(&self) -> &[Rational] {
        &self.residue
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.residue.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.residue.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.residue[0].is_one() && self.residue[1..].iter().all(|c| c.is_zero())
    }

    pub fn same_field(&self, other: &NumberFieldElem) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.modulus == other.field.modulus
    }

    fn check(&self, other: &NumberFieldElem) -> Result<(), ExactError> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(ExactError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        Ok(NumberFieldElem {
            field: Arc::clone(&self.field),
            residue: self
                .residue
                .iter()
                .zip(&other.residue)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        Ok(NumberFieldElem::from_qpoly(
            &self.field,
            &(&self.to_qpoly() * &other.to_qpoly()),
        ))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        NumberFieldElem {
            field: Arc::clone(&self.field),
            residue: self.residue.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let (g, s, _) = self.to_qpoly().ext_gcd(&self.field.modulus_q);
        // g is 1 because the modulus is irreducible and self is nonzero.
        debug_assert_eq!(g.degree(), Some(0));
        Ok(NumberFieldElem::from_qpoly(&self.field, &s))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_mul(&other.inverse()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<Self, ExactError> {
        let mut base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Value under the embedding `x ↦ root`.
    pub fn embed(&self, root: Complex64) -> Complex64 {
        self.residue
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * root + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
            })
    }
}

impl fmt::Debug for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self, self.field.modulus.pretty())
    }
}

impl fmt::Display for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residue.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

// Operator forms panic on a field mismatch; use the `try_*` methods when the
// operands may come from different fields.
impl Add for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn add(self, rhs: &NumberFieldElem) -> NumberFieldElem {
        self.try_add(rhs).expect("number field mismatch")
    }
}

impl Sub for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn sub(self, rhs: &NumberFieldElem) -> NumberFieldElem {
        self.try_add(&-rhs).expect("number field mismatch")
    }
}

impl Neg for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn neg(self) -> NumberFieldElem {
        NumberFieldElem {
            field: Arc::clone(&self.field),
            residue: self.residue.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn mul(self, rhs: &NumberFieldElem) -> NumberFieldElem {
        self.try_mul(rhs).expect("number field mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn inverse_examples() {
        let gauss = NumberField::new(&IntPoly::from_i64(&[1, 0, 1])).unwrap();
        let x = gauss.generator();
        assert_eq!(x.inverse().unwrap(), -&x);
        assert_eq!(gauss.one().inverse().unwrap(), gauss.one());

        let q5 = NumberField::cyclotomic(5);
        let z = q5.generator();
        let expected = q5.element(vec![r(-1), r(-1), r(-1), r(-1)]);
        assert_eq!(z.inverse().unwrap(), expected);
        assert!(q5.zero().inverse().is_err());
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert_eq!(
            NumberField::new(&IntPoly::from_i64(&[-1, 0, 1])).unwrap_err(),
            ExactError::ReducibleModulus
        );
    }

    #[test]
    fn powers_close_up_in_cyclotomic_field() {
        let q5 = NumberField::cyclotomic(5);
        let z = q5.generator();
        assert!(z.pow(5).unwrap().is_one());
        assert_eq!(z.pow(-1).unwrap(), z.pow(4).unwrap());
    }

    proptest! {
        #[test]
        fn inverse_times_element_is_one(c in prop::collection::vec(-9i64..=9, 4)) {
            let q5 = NumberField::cyclotomic(5);
            let a = q5.element(c.iter().map(|&v| r(v)).collect());
            prop_assume!(!a.is_zero());
            prop_assert!((&a.inverse().unwrap() * &a).is_one());
        }

        #[test]
        fn field_axioms_hold(a in prop::collection::vec(-5i64..=5, 3),
                             b in prop::collection::vec(-5i64..=5, 3),
                             c in prop::collection::vec(-5i64..=5, 3)) {
            let k = NumberField::new(&IntPoly::from_i64(&[-2, 0, 0, 1])).unwrap();
            let a = k.element(a.iter().map(|&v| r(v)).collect());
            let b = k.element(b.iter().map(|&v| r(v)).collect());
            let c = k.element(c.iter().map(|&v| r(v)).collect());
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
