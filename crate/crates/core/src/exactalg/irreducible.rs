//! Irreducibility over the rationals by trial factorization: squarefree and
//! rational-root tests, factor-degree patterns modulo small primes, then a
//! Kronecker-style search for integer factors of each surviving degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::is_integral;
use super::{cyclotomic, euler_phi, poly_normalize, ExactError, IntPoly, QPoly, Rational};

pub const DEFAULT_DEGREE_CAP: usize = 24;

const PATTERN_PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];
const PATTERN_PRIME_COUNT: usize = 8;
const KRONECKER_BUDGET: u64 = 20_000_000;

pub fn poly_is_irreducible(p: &IntPoly) -> Result<bool, ExactError> {
    poly_is_irreducible_capped(p, DEFAULT_DEGREE_CAP)
}

/// Irreducibility over `Q`. Constants (including zero) are not irreducible.
pub fn poly_is_irreducible_capped(p: &IntPoly, cap: usize) -> Result<bool, ExactError> {
    let p = poly_normalize(p);
    let n = match p.degree() {
        None | Some(0) => return Ok(false),
        Some(n) => n,
    };
    if n > cap {
        return Err(ExactError::DegreeCapExceeded { degree: n, cap });
    }
    if n == 1 {
        return Ok(true);
    }
    if p.coeffs()[0].is_zero() {
        return Ok(false);
    }
    let pq = p.to_qpoly();
    if pq.gcd(&pq.derivative()).degree().unwrap_or(0) > 0 {
        return Ok(false);
    }
    if has_rational_root(&p)? {
        return Ok(false);
    }
    if is_cyclotomic(&p) {
        return Ok(true);
    }
    let candidates = candidate_factor_degrees(&p);
    for k in 2..=n / 2 {
        if candidates[k] && find_factor_of_degree(&p, k)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cyclotomic polynomials are irreducible; they are also the typical inputs
/// whose Galois group is not cyclic, which defeats the modular degree filter.
fn is_cyclotomic(p: &IntPoly) -> bool {
    let n = p.degree().unwrap_or(0) as u64;
    (1..=2 * n * n).any(|k| euler_phi(k) == n && cyclotomic(k) == *p)
}

// ---------------------------------------------------------------------------
// Integer helpers
// ---------------------------------------------------------------------------

/// Positive divisors of a nonzero integer, when it can be factored by trial
/// division up to 10^6 (any cofactor left below 10^12 is then prime).
fn int_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    if m.is_zero() {
        return None;
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &d * &d <= m && d <= limit {
        if (&m % &d).is_zero() {
            let mut e = 0;
            while (&m % &d).is_zero() {
                m /= &d;
                e += 1;
            }
            factors.push((d.clone(), e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        if &d * &d <= m {
            return None;
        }
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for base in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(base * &pw);
                pw *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

fn has_rational_root(p: &IntPoly) -> Result<bool, ExactError> {
    let a0 = &p.coeffs()[0];
    let an = p.leading().unwrap();
    let (num_divs, den_divs) = match (int_divisors(a0), int_divisors(an)) {
        (Some(a), Some(b)) => (a, b),
        // fall back to the degree-1 factor search
        _ => return Ok(find_factor_of_degree(p, 1)?.is_some()),
    };
    for a in &num_divs {
        for b in &den_divs {
            if !a.gcd(b).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let r = Rational::new(a * sign, b.clone());
                if p.eval_rational(&r).is_zero() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x] for small p
// ---------------------------------------------------------------------------

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_from_int(p: &IntPoly, q: u64) -> Fp {
    let qb = BigInt::from(q);
    fp_trim(
        p.coeffs()
            .iter()
            .map(|c| c.mod_floor(&qb).to_u64().unwrap())
            .collect(),
    )
}

fn fp_inv(a: u64, q: u64) -> u64 {
    fp_pow(a, q - 2, q)
}

fn fp_pow(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

fn fp_rem(a: &Fp, f: &Fp, q: u64) -> Fp {
    let mut r = a.clone();
    let df = f.len() - 1;
    let inv = fp_inv(*f.last().unwrap(), q);
    while r.len() > df {
        let c = r.last().unwrap() * inv % q;
        let shift = r.len() - 1 - df;
        for (j, &fj) in f.iter().enumerate() {
            r[shift + j] = (r[shift + j] + q * q - c * fj % q) % q;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_div(a: &Fp, f: &Fp, q: u64) -> Fp {
    let mut r = a.clone();
    let df = f.len() - 1;
    if r.len() <= df {
        return Vec::new();
    }
    let mut quot = vec![0; r.len() - df];
    let inv = fp_inv(*f.last().unwrap(), q);
    for i in (df..r.len()).rev() {
        let c = r[i] * inv % q;
        quot[i - df] = c;
        for (j, &fj) in f.iter().enumerate() {
            r[i - df + j] = (r[i - df + j] + q * q - c * fj % q) % q;
        }
    }
    fp_trim(quot)
}

fn fp_mul_mod(a: &Fp, b: &Fp, f: &Fp, q: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    fp_rem(&fp_trim(out), f, q)
}

fn fp_pow_mod(base: &Fp, mut e: u64, f: &Fp, q: u64) -> Fp {
    let mut result = vec![1u64];
    let mut b = fp_rem(base, f, q);
    while e > 0 {
        if e & 1 == 1 {
            result = fp_mul_mod(&result, &b, f, q);
        }
        b = fp_mul_mod(&b, &b, f, q);
        e >>= 1;
    }
    result
}

fn fp_sub(a: &Fp, b: &Fp, q: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + q - y) % q;
    }
    fp_trim(out)
}

fn fp_gcd(a: &Fp, b: &Fp, q: u64) -> Fp {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = fp_rem(&x, &y, q);
        x = y;
        y = r;
    }
    x
}

fn fp_derivative(a: &Fp, q: u64) -> Fp {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % q) % q)
            .collect(),
    )
}

/// Degrees of the irreducible factors of a squarefree `f` over `F_q`.
fn distinct_degree_pattern(f: &Fp, q: u64) -> Vec<usize> {
    let mut degrees = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1;
    while f.len() - 1 >= 2 * i {
        h = fp_pow_mod(&h, q, &f, q);
        let g = fp_gcd(&fp_sub(&h, &x, q), &f, q);
        let dg = g.len() - 1;
        if dg > 0 {
            degrees.extend(std::iter::repeat(i).take(dg / i));
            f = fp_div(&f, &g, q);
            h = fp_rem(&h, &f, q);
        }
        i += 1;
    }
    if f.len() > 1 {
        degrees.push(f.len() - 1);
    }
    degrees
}

/// `result[k]` is true when a factor of degree `k` is consistent with the
/// factorization patterns modulo several good primes.
fn candidate_factor_degrees(p: &IntPoly) -> Vec<bool> {
    let n = p.degree().unwrap();
    let mut allowed = vec![true; n + 1];
    let mut used = 0;
    for &q in PATTERN_PRIMES.iter() {
        if used == PATTERN_PRIME_COUNT {
            break;
        }
        let fp = fp_from_int(p, q);
        if fp.len() != n + 1 {
            continue;
        }
        if fp_gcd(&fp, &fp_derivative(&fp, q), q).len() > 1 {
            continue;
        }
        used += 1;
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in distinct_degree_pattern(&fp, q) {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for k in 0..=n {
            allowed[k] &= sums[k];
        }
    }
    allowed
}

// ---------------------------------------------------------------------------
// Kronecker search
// ---------------------------------------------------------------------------

fn find_factor_of_degree(p: &IntPoly, k: usize) -> Result<Option<IntPoly>, ExactError> {
    // Evaluation points with the fewest divisors of p(a).
    let mut pts: Vec<(usize, BigInt, Vec<BigInt>)> = Vec::new();
    for a in (0..=40i64).flat_map(|a| if a == 0 { vec![0] } else { vec![a, -a] }) {
        let a = BigInt::from(a);
        let v = p.eval_int(&a);
        if v.is_zero() {
            // a is a root: the linear factor x - a exists.
            if k == 1 {
                return Ok(Some(IntPoly::new(vec![-a, BigInt::one()])));
            }
            continue;
        }
        if let Some(divs) = int_divisors(&v) {
            pts.push((divs.len(), a, divs));
        }
    }
    if pts.len() < k + 1 {
        return Err(undecided(p));
    }
    pts.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.abs().cmp(&y.1.abs())));
    pts.truncate(k + 1);
    let budget: f64 = pts
        .iter()
        .enumerate()
        .map(|(i, (c, _, _))| if i == 0 { *c as f64 } else { 2.0 * *c as f64 })
        .product();
    if budget > KRONECKER_BUDGET as f64 {
        return Err(undecided(p));
    }
    let xs: Vec<BigInt> = pts.iter().map(|t| t.1.clone()).collect();
    let choices: Vec<Vec<BigInt>> = pts
        .iter()
        .enumerate()
        .map(|(i, (_, _, divs))| {
            if i == 0 {
                divs.clone()
            } else {
                divs.iter().flat_map(|d| [d.clone(), -d.clone()]).collect()
            }
        })
        .collect();
    let mut values: Vec<BigInt> = Vec::with_capacity(k + 1);
    Ok(kronecker_dfs(p, k, &xs, &choices, &mut values))
}

fn undecided(p: &IntPoly) -> ExactError {
    ExactError::IrreducibilityUndecided(p.pretty())
}

fn kronecker_dfs(
    p: &IntPoly,
    k: usize,
    xs: &[BigInt],
    choices: &[Vec<BigInt>],
    values: &mut Vec<BigInt>,
) -> Option<IntPoly> {
    let depth = values.len();
    if depth == k + 1 {
        let f = interpolate(&xs[..=k], values)?;
        if f.degree() != Some(k) {
            return None;
        }
        return if p.divisible_by(&f) { Some(f) } else { None };
    }
    for v in &choices[depth] {
        // integer polynomials satisfy (a - b) | (f(a) - f(b))
        let consistent = (0..depth).all(|j| {
            let dx = &xs[depth] - &xs[j];
            ((v - &values[j]) % dx).is_zero()
        });
        if !consistent {
            continue;
        }
        values.push(v.clone());
        if let Some(f) = kronecker_dfs(p, k, xs, choices, values) {
            return Some(f);
        }
        values.pop();
    }
    None
}

/// Lagrange interpolation; `None` unless all coefficients are integers.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Option<IntPoly> {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = QPoly::constant(Rational::from_integer(yi.clone()));
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = Rational::from_integer(xi - xj);
            let lin = QPoly::new(vec![
                Rational::from_integer(-xj.clone()) / &denom,
                Rational::one() / &denom,
            ]);
            basis = &basis * &lin;
        }
        acc = &acc + &basis;
    }
    if !acc.coeffs().iter().all(is_integral) {
        return None;
    }
    Some(IntPoly::new(
        acc.coeffs().iter().map(|c| c.to_integer()).collect(),
    ))
}
