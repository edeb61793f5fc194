//! Ergodicity of toral automorphisms via cyclotomic factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::action::IntMatrix;
use super::DualityError;
use crate::exactalg::{cyclotomic, cyclotomic_factor, IntPoly, Rational};

/// Witnesses are searched among primitive lattice vectors of at most this
/// sup-norm.
pub const WITNESS_SUP_NORM: i64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErgodicVerdict {
    Ergodic { char_poly: IntPoly },
    /// `Φ_k` divides the characteristic polynomial; the witness is a nonzero
    /// dual lattice vector with finite orbit under `Mᵀ`, and its orbit size.
    NotErgodic {
        k: u64,
        char_poly: IntPoly,
        witness: Option<(Vec<i64>, usize)>,
    },
}

type BigMat = Vec<Vec<BigInt>>;

fn to_big(m: &IntMatrix) -> BigMat {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn mat_mul(a: &BigMat, b: &BigMat) -> BigMat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

fn transpose(m: &IntMatrix) -> IntMatrix {
    let d = m.len();
    (0..d).map(|i| (0..d).map(|j| m[j][i]).collect()).collect()
}

/// Characteristic polynomial `det(xI − M)` by Faddeev–LeVerrier; all
/// divisions are exact over the integers.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly, DualityError> {
    let d = m.len();
    if m.iter().any(|r| r.len() != d) {
        return Err(DualityError::NotWellDefined("matrix is not square".to_string()));
    }
    let a = to_big(m);
    let mut coeffs = vec![BigInt::zero(); d + 1];
    coeffs[d] = BigInt::one();
    let mut mk: BigMat = vec![vec![BigInt::zero(); d]; d];
    for k in 1..=d {
        let mut next = mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[d - k + 1];
        }
        mk = next;
        let am = mat_mul(&a, &mk);
        let trace: BigInt = (0..d).map(|i| am[i][i].clone()).sum();
        coeffs[d - k] = -trace / BigInt::from(k);
    }
    Ok(IntPoly::new(coeffs))
}

/// `p(M)` by Horner's rule.
fn eval_matrix(p: &IntPoly, m: &IntMatrix) -> BigMat {
    let d = m.len();
    let a = to_big(m);
    let mut acc: BigMat = vec![vec![BigInt::zero(); d]; d];
    for c in p.coeffs().iter().rev() {
        acc = mat_mul(&acc, &a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

/// Rational null space basis (reduced row echelon form, one vector per free
/// column), scaled to primitive integer vectors.
fn integer_kernel(m: &BigMat) -> Vec<Vec<BigInt>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = Rational::one() / &a[row][col];
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let t = &f * &a[row][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ints.into_iter().map(|x| x / &g).collect()
        })
        .collect()
}

fn orbit_size(m: &IntMatrix, v: &[i64]) -> usize {
    let a = to_big(m);
    let start: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    let mut x = start.clone();
    for n in 1.. {
        x = a.iter().map(|row| row.iter().zip(&x).map(|(p, q)| p * q).sum()).collect();
        if x == start {
            return n;
        }
    }
    unreachable!()
}

/// Ergodicity of the toral automorphism `M`: ergodic iff no cyclotomic
/// polynomial divides the characteristic polynomial.
pub fn toral_ergodicity(m: &IntMatrix) -> Result<ErgodicVerdict, DualityError> {
    let cp = char_poly(m)?;
    let d = m.len();
    let det = if d % 2 == 0 { cp.coeffs()[0].clone() } else { -cp.coeffs()[0].clone() };
    if d == 0 || !det.abs().is_one() {
        return Err(DualityError::NotUnimodular(det.to_string()));
    }
    let Some(k) = cyclotomic_factor(&cp, d) else {
        return Ok(ErgodicVerdict::Ergodic { char_poly: cp });
    };
    let mt = transpose(m);
    let kernel = integer_kernel(&eval_matrix(&cyclotomic(k), &mt));
    let witness = kernel
        .into_iter()
        .filter_map(|v| {
            let small: Option<Vec<i64>> = v
                .iter()
                .map(|x| i64::try_from(x).ok().filter(|x| x.abs() <= WITNESS_SUP_NORM))
                .collect();
            small
        })
        .min_by_key(|v| v.iter().map(|x| x.abs()).max().unwrap_or(0))
        .map(|v| {
            let size = orbit_size(&mt, &v);
            (v, size)
        });
    Ok(ErgodicVerdict::NotErgodic {
        k,
        char_poly: cp,
        witness,
    })
}
