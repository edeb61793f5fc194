//! Exact root counting in axis-parallel rectangles via the argument
//! principle, with Cauchy indices computed from Sturm sequences over `Q`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ZconjError;
use crate::exactalg::{IntPoly, Rational};

/// A closed rectangle `[x0, x1] × [y0, y1]` in the complex plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl Rect {
    pub fn new(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> Result<Self, ZconjError> {
        if x0 >= x1 || y0 >= y1 {
            return Err(ZconjError::InvalidRect(format!("{x0},{x1},{y0},{y1}")));
        }
        Ok(Rect { x0, x1, y0, y1 })
    }

    /// Square of half-width `h` around `c`.
    pub fn around(c: (Rational, Rational), h: &Rational) -> Self {
        Rect {
            x0: &c.0 - h,
            x1: &c.0 + h,
            y0: &c.1 - h,
            y1: &c.1 + h,
        }
    }

    pub fn width(&self) -> Rational {
        &self.x1 - &self.x0
    }

    pub fn height(&self) -> Rational {
        &self.y1 - &self.y0
    }

    pub fn contains(&self, other: &Rect) -> bool {
        self.x0 <= other.x0 && other.x1 <= self.x1 && self.y0 <= other.y0 && other.y1 <= self.y1
    }

    pub fn center(&self) -> Complex64 {
        let two = Rational::from_integer(2.into());
        let cx = (&self.x0 + &self.x1) / &two;
        let cy = (&self.y0 + &self.y1) / &two;
        Complex64::new(cx.to_f64().unwrap_or(f64::NAN), cy.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact minimum and maximum of `|z|²` over the rectangle.
    pub fn modulus_sq_range(&self) -> (Rational, Rational) {
        fn range_sq(a: &Rational, b: &Rational) -> (Rational, Rational) {
            let lo = if a.is_positive() {
                a * a
            } else if b.is_negative() {
                b * b
            } else {
                Rational::zero()
            };
            let hi = std::cmp::max(a * a, b * b);
            (lo, hi)
        }
        let (xl, xh) = range_sq(&self.x0, &self.x1);
        let (yl, yh) = range_sq(&self.y0, &self.y1);
        (xl + yl, xh + yh)
    }

    fn corners(&self) -> [(Rational, Rational); 4] {
        [
            (self.x0.clone(), self.y0.clone()),
            (self.x1.clone(), self.y0.clone()),
            (self.x1.clone(), self.y1.clone()),
            (self.x0.clone(), self.y1.clone()),
        ]
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x0, self.x1, self.y0, self.y1)
    }
}

type Zx = Vec<BigInt>;

fn trim(mut a: Zx) -> Zx {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn primitive(a: Zx) -> Zx {
    let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return a;
    }
    a.into_iter().map(|c| c / &g).collect()
}

fn derivative(a: &Zx) -> Zx {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Remainder of `lc(b)^k · a` by `b`, scaled by a positive factor, where the
/// scaling never changes the sign relative to the true remainder.
fn signed_prem(a: &Zx, b: &Zx) -> Zx {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let mut flips = false;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        // r <- lb·r − lr·x^shift·b
        for c in r.iter_mut() {
            *c *= lb;
        }
        if lb.is_negative() {
            flips = !flips;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &lr * c;
        }
        r = trim(r);
    }
    let r = primitive(r);
    if flips {
        r.into_iter().map(|c| -c).collect()
    } else {
        r
    }
}

fn sturm_sequence(f0: Zx, f1: Zx) -> Vec<Zx> {
    let mut seq = vec![f0, f1];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            return seq;
        }
        let r = signed_prem(&seq[n - 2], &seq[n - 1]);
        seq.push(r.into_iter().map(|c| -c).collect());
    }
}

fn sign_at_zero(a: &Zx) -> i8 {
    a.first().map_or(0, sign)
}

fn sign_at_one(a: &Zx) -> i8 {
    sign(&a.iter().sum())
}

fn sign(s: &BigInt) -> i8 {
    if s.is_positive() {
        1
    } else if s.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> i64 {
    let nz: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

/// `V(0) − V(1)` for the Sturm sequence of `(f0, f1)`.
fn sturm_count(f0: Zx, f1: Zx) -> i64 {
    let seq = sturm_sequence(f0, f1);
    variations(seq.iter().map(sign_at_zero)) - variations(seq.iter().map(sign_at_one))
}

fn int_gcd(a: &Zx, b: &Zx) -> Zx {
    let (mut a, mut b) = (primitive(a.clone()), primitive(b.clone()));
    while !b.is_empty() {
        let r = signed_prem(&a, &b);
        a = b;
        b = r;
    }
    a
}

// Modular gcds: a trivial gcd modulo a prime not dividing the leading
// coefficients certifies a trivial gcd over Q.

const MOD_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353];

fn reduce_mod(a: &Zx, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    a.iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
        .collect()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn gcd_degree_mod(a: &[u64], b: &[u64], p: u64) -> usize {
    let trim = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let f = mulmod(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (j, &c) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - mulmod(f, c, p)) % p;
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// `false` certifies `gcd(a, b) = 1` over `Q`.
fn may_share_root(a: &Zx, b: &Zx) -> bool {
    if a.len() <= 1 || b.len() <= 1 {
        return a.is_empty() || b.is_empty();
    }
    for &p in &MOD_PRIMES {
        let (ra, rb) = (reduce_mod(a, p), reduce_mod(b, p));
        if ra.last() == Some(&0) || rb.last() == Some(&0) {
            continue;
        }
        if gcd_degree_mod(&ra, &rb, p) == 0 {
            return false;
        }
    }
    true
}

// Real root isolation on (0, 1) by Descartes' rule of signs. A piece is the
// interval [c/2^k, (c+1)/2^k] together with g(x) ∝ f((c + x)/2^k).

fn taylor_shift_one(a: &mut Zx) {
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
}

/// Sign variations of `(x+1)^n g(1/(x+1))`: an upper bound on the number of
/// roots of `g` in `(0, 1)` with the same parity.
fn descartes(g: &Zx) -> usize {
    let mut h: Zx = g.iter().rev().cloned().collect();
    taylor_shift_one(&mut h);
    variations(h.iter().map(sign)) as usize
}

fn halves(g: &Zx) -> (Zx, Zx) {
    let n = g.len() - 1;
    let left: Zx = g.iter().enumerate().map(|(i, c)| c << (n - i)).collect();
    let mut right = left.clone();
    taylor_shift_one(&mut right);
    (left, right)
}

/// `2^{k·n} f((c + x)/2^k)`.
fn restrict(f: &Zx, c: &BigInt, k: u32) -> Zx {
    let n = f.len() - 1;
    let mut g: Zx = f
        .iter()
        .enumerate()
        .map(|(i, a)| a << (k as usize * (n - i)))
        .collect();
    // shift by c: g(x + c)
    for i in 0..n {
        for j in (i..n).rev() {
            let t = &g[j + 1] * c;
            g[j] += t;
        }
    }
    g
}

/// Sign of `f(c/2^k)`.
fn sign_at(f: &Zx, c: &BigInt, k: u32) -> i8 {
    let n = f.len().saturating_sub(1);
    let mut acc = BigInt::zero();
    for (i, a) in f.iter().enumerate().rev() {
        acc = acc * c + (a << (k as usize * (n - i)));
    }
    sign(&acc)
}

enum RootLoc {
    Exact(BigInt, u32),
    Interval(BigInt, u32, Zx),
}

/// Isolates the roots of a squarefree `f` in `(0, 1)`.
fn isolate(f: &Zx) -> Option<Vec<RootLoc>> {
    let mut out = Vec::new();
    let mut stack = vec![(f.clone(), BigInt::zero(), 0u32)];
    while let Some((mut g, c, k)) = stack.pop() {
        if k > 4000 {
            return None;
        }
        if g[0].is_zero() {
            out.push(RootLoc::Exact(c.clone(), k));
            g.remove(0);
        }
        match descartes(&g) {
            0 => {}
            1 => out.push(RootLoc::Interval(c, k, g)),
            _ => {
                let (l, r) = halves(&g);
                let c2: BigInt = &c << 1;
                stack.push((r, &c2 + 1, k + 1));
                stack.push((l, c2, k + 1));
            }
        }
    }
    Some(out)
}

/// Cauchy index of `num/den` over `[0, 1]`; `den` must not vanish at 0 or 1.
fn cauchy_index(num: &Zx, den: &Zx) -> i64 {
    if den.len() <= 1 {
        return 0;
    }
    let fast = (!may_share_root(num, den) && !may_share_root(den, &derivative(den)))
        .then(|| cauchy_index_by_roots(num, den))
        .flatten();
    match fast {
        Some(v) => v,
        None => sturm_count(den.clone(), num.clone()),
    }
}

/// Sums `sign(num(τ)·den'(τ))` over the roots `τ` of a squarefree `den`
/// coprime to `num`.
fn cauchy_index_by_roots(num: &Zx, den: &Zx) -> Option<i64> {
    let dden = derivative(den);
    let mut total = 0i64;
    for loc in isolate(den)? {
        let (s_num, s_dden) = match loc {
            RootLoc::Exact(c, k) => (sign_at(num, &c, k), sign_at(&dden, &c, k)),
            RootLoc::Interval(mut c, mut k, mut g) => loop {
                if k > 4000 {
                    return None;
                }
                if descartes(&restrict(num, &c, k)) == 0 && descartes(&restrict(&dden, &c, k)) == 0 {
                    let mid: BigInt = (&c << 1) + 1;
                    break (sign_at(num, &mid, k + 1), sign_at(&dden, &mid, k + 1));
                }
                let (l, r) = halves(&g);
                let c2: BigInt = &c << 1;
                if r[0].is_zero() {
                    let mid = &c2 + 1;
                    break (sign_at(num, &mid, k + 1), sign_at(&dden, &mid, k + 1));
                }
                // The number of real roots in a piece has the parity of its
                // Descartes count.
                if descartes(&l) % 2 == 1 {
                    g = l;
                    c = c2;
                } else {
                    g = r;
                    c = c2 + 1;
                }
                k += 1;
            },
        };
        total += (s_num * s_dden) as i64;
    }
    Some(total)
}

/// Number of distinct real roots of `g` in `[0, 1]`.
fn roots_in_unit_interval(g: &Zx) -> usize {
    if g.len() <= 1 {
        return 0;
    }
    if sign_at_zero(g) == 0 || sign_at_one(g) == 0 {
        return 1;
    }
    sturm_count(g.clone(), derivative(g)).max(0) as usize
}

/// `p(a + t·d)` split into real and imaginary parts as polynomials in `t`.
/// A positive multiple of `p(a + t·d)`, split into real and imaginary
/// parts as integer polynomials in `t`.
fn edge_polys(p: &IntPoly, a: &(Rational, Rational), d: &(Rational, Rational)) -> (Zx, Zx) {
    let l = [&a.0, &a.1, &d.0, &d.1]
        .iter()
        .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let scaled = |q: &Rational| q.numer() * (&l / q.denom());
    let (ar, ai, dr, di) = (scaled(&a.0), scaled(&a.1), scaled(&d.0), scaled(&d.1));
    let n = p.coeffs().len();
    let mut re: Zx = Vec::with_capacity(n);
    let mut im: Zx = Vec::with_capacity(n);
    let mut lpow = BigInt::one();
    for c in p.coeffs().iter().rev() {
        // (re + i·im)·((ar + t·dr) + i·(ai + t·di)) + c·L^k
        let m = re.len();
        let mut nr = vec![BigInt::zero(); m + 1];
        let mut ni = vec![BigInt::zero(); m + 1];
        for j in 0..m {
            nr[j] += &re[j] * &ar - &im[j] * &ai;
            nr[j + 1] += &re[j] * &dr - &im[j] * &di;
            ni[j] += &re[j] * &ai + &im[j] * &ar;
            ni[j + 1] += &re[j] * &di + &im[j] * &dr;
        }
        nr[0] += c * &lpow;
        re = nr;
        im = ni;
        lpow *= &l;
    }
    (trim(re), trim(im))
}

fn lin_comb(a: &Zx, b: &Zx, c: &BigInt) -> Zx {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    primitive(trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + c * b.get(i).unwrap_or(&zero))
            .collect(),
    ))
}

fn eval_gauss(p: &IntPoly, z: &(Rational, Rational)) -> (Rational, Rational) {
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    for c in p.coeffs().iter().rev() {
        let nr = &re * &z.0 - &im * &z.1 + Rational::from_integer(c.clone());
        let ni = &re * &z.1 + &im * &z.0;
        re = nr;
        im = ni;
    }
    (re, im)
}

/// Number of roots of `p` (with multiplicity) strictly inside `rect`.
/// Fails with `RootOnBoundary` if a root lies on the boundary.
pub fn count_roots(p: &IntPoly, rect: &Rect) -> Result<usize, ZconjError> {
    if p.is_zero() {
        return Err(ZconjError::ZeroPolynomial);
    }
    let corners = rect.corners();
    let values: Vec<(Rational, Rational)> = corners.iter().map(|c| eval_gauss(p, c)).collect();
    if values.iter().any(|(r, i)| r.is_zero() && i.is_zero()) {
        return Err(ZconjError::RootOnBoundary);
    }
    // Multiply p by (1 + ci) so the imaginary part is nonzero at every corner.
    let c = (0i64..=4)
        .map(BigInt::from)
        .find(|c| {
            let c = Rational::from_integer(c.clone());
            values.iter().all(|(r, i)| !(i + &c * r).is_zero())
        })
        .expect("at most four values of c are excluded");
    let mut total = 0i64;
    for k in 0..4 {
        let a = &corners[k];
        let b = &corners[(k + 1) % 4];
        let d = (&b.0 - &a.0, &b.1 - &a.1);
        let (re_z, im_z) = edge_polys(p, a, &d);
        if may_share_root(&primitive(re_z.clone()), &primitive(im_z.clone())) {
            let g = if re_z.is_empty() {
                im_z.clone()
            } else if im_z.is_empty() {
                re_z.clone()
            } else {
                int_gcd(&re_z, &im_z)
            };
            if roots_in_unit_interval(&g) > 0 {
                return Err(ZconjError::RootOnBoundary);
            }
        }
        let r2 = lin_comb(&re_z, &im_z, &-&c);
        let i2 = lin_comb(&im_z, &re_z, &c);
        // Cauchy index of r2/i2 on [0, 1]; i2 is nonzero at both ends.
        total += cauchy_index(&r2, &i2);
    }
    debug_assert!(total >= 0 && total % 2 == 0);
    Ok((total / 2) as usize)
}

/// Side length below which a refined rectangle is accepted: `2^-40`.
pub fn refine_target() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 40)
}

fn newton(p: &IntPoly, start: Complex64) -> Option<Complex64> {
    let dp = p.derivative();
    let mut z = start;
    for _ in 0..200 {
        let f = p.eval_complex(z);
        let df = dp.eval_complex(z);
        if df.norm() == 0.0 {
            return None;
        }
        let step = f / df;
        z -= step;
        if step.norm() <= 1e-17 * z.norm().max(1.0) {
            break;
        }
    }
    z.is_finite().then_some(z)
}

/// Nearest multiple of `2^-bits`.
pub(crate) fn dyadic(x: f64, bits: u32) -> Rational {
    let scaled = (x * 2f64.powi(bits as i32)).round();
    Rational::new(
        BigInt::from(scaled as i128),
        BigInt::one() << bits,
    )
}

/// Shrinks a rectangle holding exactly one root of `p` until both sides
/// are at most `2^-40`. A floating-point Newton step proposes a tiny box
/// that is accepted only after an exact count; otherwise the rectangle is
/// bisected exactly.
pub fn refine(p: &IntPoly, rect: &Rect) -> Result<Rect, ZconjError> {
    let target = refine_target();
    if rect.width() <= target && rect.height() <= target {
        return Ok(rect.clone());
    }
    if let Some(z) = newton(p, rect.center()) {
        let h = Rational::new(BigInt::one(), BigInt::one() << 42);
        let tiny = Rect::around((dyadic(z.re, 48), dyadic(z.im, 48)), &h);
        if rect.contains(&tiny) && matches!(count_roots(p, &tiny), Ok(1)) {
            return Ok(tiny);
        }
    }
    let fractions = [(1, 2), (3, 7), (4, 7), (5, 11), (6, 11)];
    let mut cur = rect.clone();
    while cur.width() > target || cur.height() > target {
        let split_x = cur.width() >= cur.height();
        let mut next = None;
        for &(a, b) in &fractions {
            let f = Rational::new(a.into(), b.into());
            let (lo, hi) = if split_x {
                let m = &cur.x0 + cur.width() * &f;
                (
                    Rect { x1: m.clone(), ..cur.clone() },
                    Rect { x0: m, ..cur.clone() },
                )
            } else {
                let m = &cur.y0 + cur.height() * &f;
                (
                    Rect { y1: m.clone(), ..cur.clone() },
                    Rect { y0: m, ..cur.clone() },
                )
            };
            match count_roots(p, &lo) {
                Ok(1) => next = Some(lo),
                Ok(_) => next = Some(hi),
                Err(ZconjError::RootOnBoundary) => continue,
                Err(e) => return Err(e),
            }
            break;
        }
        cur = next.ok_or(ZconjError::RootOnBoundary)?;
    }
    Ok(cur)
}
