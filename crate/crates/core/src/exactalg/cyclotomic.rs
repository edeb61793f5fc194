//! Cyclotomic polynomials and root-of-unity factors.

use super::IntPoly;

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i32 {
    let f = prime_factors(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The k-th cyclotomic polynomial, from `Φ_k = Π_{d|k} (x^d − 1)^{μ(k/d)}`.
pub fn cyclotomic(k: u64) -> IntPoly {
    assert!(k >= 1, "cyclotomic index must be positive");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in divisors(k) {
        match mobius(k / d) {
            1 => num = &num * &IntPoly::x_pow_minus_one(d as usize),
            -1 => den = &den * &IntPoly::x_pow_minus_one(d as usize),
            _ => {}
        }
    }
    // den is monic up to sign: (x^d - 1) has leading coefficient 1.
    let (q, r) = num.div_rem_monic(&den);
    debug_assert!(r.is_zero());
    q
}

/// Least `k` with `Φ_k | p` among all `k` whose `φ(k) ≤ d`, searching
/// `k ≤ 2d²` (enough because `φ(k) ≥ √(k/2)`).
pub fn cyclotomic_factor(p: &IntPoly, d: usize) -> Option<u64> {
    let deg = p.degree()?;
    if p.is_zero() || deg == 0 {
        return None;
    }
    let bound = 2 * (d as u64) * (d as u64);
    (1..=bound)
        .filter(|&k| euler_phi(k) as usize <= d.min(deg))
        .find(|&k| {
            let (_, r) = p.div_rem_monic(&cyclotomic(k));
            r.is_zero()
        })
}
