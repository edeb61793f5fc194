//! Built-in almost-invariant sequences and the sequence file parser.

use std::fmt;
use std::str::FromStr;

use super::AlmostInvError;
use crate::exactalg::Rational;
use crate::groups::{GroupElem, GroupSpec, DEFAULT_BALL_CAP};
use crate::reps::{Label, Mat, Rep, RepError, Scalar, VectorH};

/// Named input sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `v_n = n^{-1/2}·1_{[0,n)}` in `ℓ²(Z)`, `n = 1..N`.
    Windows(usize),
    /// `e_n = δ_{n−1}` in `ℓ²(Z)`, `n = 1..N`.
    Basis(usize),
    /// Orthonormal vectors with defects exactly `4^{-n}`, `n = 1..N`.
    Householder(usize),
}

impl FromStr for Family {
    type Err = AlmostInvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AlmostInvError::Parse {
            what: "sequence family",
            input: s.to_string(),
        };
        let (name, n) = s.trim().split_once(':').ok_or_else(err)?;
        let n: usize = n.trim().parse().map_err(|_| err())?;
        if n == 0 {
            return Err(err());
        }
        match name.trim() {
            "windows" => Ok(Family::Windows(n)),
            "basis" => Ok(Family::Basis(n)),
            "householder" => Ok(Family::Householder(n)),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Windows(n) => write!(f, "windows:{n}"),
            Family::Basis(n) => write!(f, "basis:{n}"),
            Family::Householder(n) => write!(f, "householder:{n}"),
        }
    }
}

fn z(n: i64) -> GroupElem {
    GroupElem::Vector(vec![n])
}

/// The regular rep of `Z` on a ball large enough that shifting any window by
/// one generator stays inside, and the normalized windows.
pub fn windows_family(n: usize) -> Result<(Rep<f64>, Vec<VectorH<f64>>), AlmostInvError> {
    let rep = Rep::regular(GroupSpec::zpow(1), n + 1, DEFAULT_BALL_CAP)?;
    let vectors = (1..=n)
        .map(|k| {
            let c = 1.0 / (k as f64).sqrt();
            let mut v = VectorH::zero();
            for i in 0..k {
                v.set(Label::Elem(z(i as i64)), c);
            }
            v
        })
        .collect();
    Ok((rep, vectors))
}

pub fn basis_family<S: Scalar>(n: usize) -> Result<(Rep<S>, Vec<VectorH<S>>), AlmostInvError> {
    let rep = Rep::regular(GroupSpec::zpow(1), n + 1, DEFAULT_BALL_CAP)?;
    let vectors = (0..n).map(|i| VectorH::basis_elem(z(i as i64))).collect();
    Ok((rep, vectors))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Rational Householder reflection sending `e₁` to the unit vector `u`.
fn householder(u: &[Rational]) -> Mat<Rational> {
    let d = u.len();
    let mut w: Vec<Rational> = u.iter().map(|x| -x).collect();
    w[0] += q(1, 1);
    let ww: Rational = w.iter().map(|x| x * x).sum();
    let mut m = Mat::identity(d);
    for i in 0..d {
        for j in 0..d {
            let x = m.get(i, j) - q(2, 1) * &w[i] * &w[j] / &ww;
            m.set(i, j, x);
        }
    }
    m
}

/// A direct sum over `Z` of blocks `B_n` (`n = 1..N`), each a reflection of
/// dimension `6n + 4` moving its first basis vector by exactly `δ = 4^{-n}`:
/// the image is `(1 − δ²/2, y)` where `y` repeats each of `δ·2^j/(2·4^n)`,
/// `j = 0..2n`, three times. The vectors are the first basis vectors of the
/// blocks.
pub fn householder_family(n: usize) -> Result<(Rep<Rational>, Vec<VectorH<Rational>>), AlmostInvError> {
    let group = GroupSpec::zpow(1);
    let mut blocks = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    let mut offset = 0;
    for k in 1..=n {
        let four_k = Rational::from_integer(num_bigint::BigInt::from(4u32).pow(k as u32));
        let delta = q(1, 1) / &four_k;
        let mut u = vec![q(1, 1) - &delta * &delta / q(2, 1)];
        for j in 0..=2 * k {
            let two_j = Rational::from_integer(num_bigint::BigInt::from(2u32).pow(j as u32));
            let y = &delta * two_j / (q(2, 1) * &four_k);
            u.extend(std::iter::repeat_n(y, 3));
        }
        let d = u.len();
        blocks.push(Rep::matrix(group.clone(), vec![householder(&u)])?);
        vectors.push(VectorH::basis_index(offset));
        offset += d;
    }
    Ok((Rep::direct_sum(blocks)?, vectors))
}

/// Blocks of vector text separated by blank lines.
pub fn parse_sequence<S: Scalar>(
    text: &str,
    label: impl Fn(&str) -> Result<Label, RepError>,
) -> Result<Vec<VectorH<S>>, AlmostInvError> {
    let mut out = Vec::new();
    let mut block = String::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !block.trim().is_empty() {
                out.push(VectorH::parse(&block, &label)?);
            }
            block.clear();
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    if out.is_empty() {
        return Err(AlmostInvError::EmptySequence);
    }
    Ok(out)
}
