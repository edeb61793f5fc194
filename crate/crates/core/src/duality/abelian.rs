//! Finite abelian groups and their characters.

use std::fmt;
use std::str::FromStr;

use super::DualityError;
use crate::exactalg::{Rational, TorusValue};
use crate::groups::DEFAULT_ORDER_CAP;

/// `Z/n_1 × … × Z/n_r` with `n_1 | n_2 | … | n_r`, each `n_i ≥ 2`; no factors
/// is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelian {
    factors: Vec<u64>,
}

impl FiniteAbelian {
    pub fn new(factors: Vec<u64>) -> Result<Self, DualityError> {
        Self::with_cap(factors, DEFAULT_ORDER_CAP as u64)
    }

    pub fn with_cap(factors: Vec<u64>, cap: u64) -> Result<Self, DualityError> {
        if let Some(n) = factors.iter().find(|&&n| n < 2) {
            return Err(DualityError::InvalidFactors(format!("factor {n} is below 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(DualityError::InvalidFactors(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        let order = factors.iter().map(|&n| n as u128).product::<u128>();
        if order > cap as u128 {
            return Err(DualityError::OrderCapExceeded { order, cap });
        }
        Ok(FiniteAbelian { factors })
    }

    pub fn cyclic(n: u64) -> Result<Self, DualityError> {
        Self::new(if n == 1 { Vec::new() } else { vec![n] })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    /// Exponent `n_r` (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// Mixed-radix index, last coordinate fastest, so that indices follow
    /// lexicographic order.
    pub fn index_of(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&xi, &n)| acc * n as usize + xi as usize)
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut x = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.factors[i] as usize;
            x[i] = (index % n) as u64;
            index /= n;
        }
        x
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((a, b), n)| (a + b) % n)
            .collect()
    }

    pub fn basis(&self, i: usize) -> Vec<u64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }
}

impl FromStr for FiniteAbelian {
    type Err = DualityError;

    /// `abelian = 2,4,8`, or just `2,4,8`; factors equal to 1 are dropped.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = match t.split_once('=') {
            Some((key, rest)) if key.trim() == "abelian" => rest,
            Some(_) => {
                return Err(DualityError::Parse {
                    what: "finite abelian group",
                    input: s.to_string(),
                })
            }
            None => t,
        };
        let factors: Vec<u64> = t
            .split(',')
            .map(|p| p.trim())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<u64>().map_err(|_| DualityError::Parse {
                    what: "invariant factor",
                    input: p.to_string(),
                })
            })
            .collect::<Result<_, _>>()?;
        FiniteAbelian::new(factors.into_iter().filter(|&n| n != 1).collect())
    }
}

impl fmt::Display for FiniteAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
        if parts.is_empty() {
            write!(f, "abelian = 1")
        } else {
            write!(f, "abelian = {}", parts.join(","))
        }
    }
}

/// `χ(x) = Σ a_i x_i / n_i mod 1`, with `a_i` taken modulo `n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub coeffs: Vec<u64>,
}

impl Character {
    pub fn trivial(a: &FiniteAbelian) -> Self {
        Character { coeffs: vec![0; a.rank()] }
    }

    /// `χ(x)` as a numerator over the exponent `N`: `χ(x) = value/N`.
    pub fn eval_scaled(&self, a: &FiniteAbelian, x: &[u64]) -> u64 {
        let n = a.exponent() as u128;
        let mut acc: u128 = 0;
        for ((&c, &xi), &ni) in self.coeffs.iter().zip(x).zip(a.factors()) {
            acc += c as u128 * xi as u128 * (n / ni as u128);
        }
        (acc % n) as u64
    }

    pub fn eval(&self, a: &FiniteAbelian, x: &[u64]) -> TorusValue {
        TorusValue::from_rational(&Rational::new(
            self.eval_scaled(a, x).into(),
            a.exponent().into(),
        ))
    }

    /// The character with the given scaled values on the standard basis.
    pub fn from_basis_values(a: &FiniteAbelian, values: &[u64]) -> Self {
        let n = a.exponent();
        Character {
            coeffs: values
                .iter()
                .zip(a.factors())
                .map(|(&v, &ni)| (v / (n / ni)) % ni)
                .collect(),
        }
    }

    /// Order of `χ` in the dual group.
    pub fn order(&self, a: &FiniteAbelian) -> u64 {
        self.coeffs
            .iter()
            .zip(a.factors())
            .map(|(&c, &n)| n / num_integer::gcd(c, n))
            .fold(1, num_integer::lcm)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All characters, in lexicographic order of coefficients.
pub fn enumerate_dual(a: &FiniteAbelian) -> Vec<Character> {
    a.elements().map(|coeffs| Character { coeffs }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dual_examples() {
        assert_eq!(enumerate_dual(&FiniteAbelian::cyclic(4).unwrap()).len(), 4);
        let klein: FiniteAbelian = "abelian = 2,2".parse().unwrap();
        let dual = enumerate_dual(&klein);
        assert_eq!(dual.len(), 4);
        assert!(dual.iter().all(|c| c.order(&klein) <= 2));
        assert!(dual.windows(2).all(|w| w[0] < w[1]));
        let trivial = FiniteAbelian::cyclic(1).unwrap();
        assert_eq!(enumerate_dual(&trivial), vec![Character::trivial(&trivial)]);
    }

    #[test]
    fn factors_are_validated() {
        assert!(matches!(
            "abelian = 2,3".parse::<FiniteAbelian>(),
            Err(DualityError::InvalidFactors(_))
        ));
        assert!(matches!(
            FiniteAbelian::new(vec![1 << 11, 1 << 11]),
            Err(DualityError::OrderCapExceeded { .. })
        ));
        let a: FiniteAbelian = "2,4,8".parse().unwrap();
        assert_eq!(a.to_string(), "abelian = 2,4,8");
        assert_eq!(a.order(), 64);
    }

    #[test]
    fn evaluation_examples() {
        let a: FiniteAbelian = "abelian = 2,4".parse().unwrap();
        let chi = Character { coeffs: vec![1, 3] };
        // 1/2 + 3·3/4 = 11/4 ≡ 3/4.
        assert_eq!(chi.eval(&a, &[1, 3]).to_string(), "3/4");
        assert_eq!(chi.order(&a), 4);
    }

    proptest! {
        #[test]
        fn characters_are_homomorphisms(c in prop::collection::vec(0u64..12, 3),
                                        x in prop::collection::vec(0u64..12, 3),
                                        y in prop::collection::vec(0u64..12, 3)) {
            let a = FiniteAbelian::new(vec![2, 6, 12]).unwrap();
            let red = |v: &[u64]| v.iter().zip(a.factors()).map(|(x, n)| x % n).collect::<Vec<_>>();
            let chi = Character { coeffs: red(&c) };
            let (x, y) = (red(&x), red(&y));
            let n = a.exponent();
            let lhs = chi.eval_scaled(&a, &a.add(&x, &y));
            let rhs = (chi.eval_scaled(&a, &x) + chi.eval_scaled(&a, &y)) % n;
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.index_of(&a.element(a.index_of(&x))), a.index_of(&x));
        }
    }
}
