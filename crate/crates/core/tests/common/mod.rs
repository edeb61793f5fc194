//! Independent oracles and corpus generators shared by the integration tests.
//! Nothing here calls into the library routine it is used to check.

#![allow(dead_code)]

use std::f64::consts::PI;

use bohrgap::exactalg::Rational;
use bohrgap::groups::GroupSpec;
use bohrgap::reps::{Mat, Rep};
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Spectral radius of the lazy walk on the free group of rank `k` that puts
/// weight `1/(2k+1)` on the identity and on each generator and inverse.
pub fn kesten_lazy_free(k: usize) -> f64 {
    let w = 1.0 / (2 * k + 1) as f64;
    let simple = ((2 * k - 1) as f64).sqrt() / k as f64;
    w + (1.0 - w) * simple
}

/// Top eigenvalue of the 1/3-lazy walk on the path with `2r + 1` vertices
/// and Dirichlet boundary.
pub fn path_top(r: usize) -> f64 {
    1.0 / 3.0 + 2.0 / 3.0 * (PI / (2 * r + 2) as f64).cos()
}

/// A finite-dimensional orthogonal rep with its known invariant dimension.
pub struct CorpusRep {
    pub name: String,
    pub rep: Rep<f64>,
    pub invariant_dim: usize,
}

fn rotation(theta: f64) -> DMatrix<f64> {
    let (s, c) = theta.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
}

fn random_orthogonal(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(d, d, |_, _| StandardNormal.sample(rng));
    g.qr().q()
}

fn to_mat(m: &DMatrix<f64>) -> Mat<f64> {
    let rows = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect();
    Mat::from_rows(rows).expect("rectangular")
}

/// Block-diagonal generator for a random rep: rotation blocks with angles
/// drawn by `angle`, `−1` blocks when allowed, and `+1` blocks (at least one)
/// only when `invariant` is set. Returns the matrix and its number of `+1`
/// blocks.
fn blocks(
    d: usize,
    invariant: bool,
    minus_one: bool,
    rng: &mut ChaCha8Rng,
    mut angle: impl FnMut(&mut ChaCha8Rng) -> f64,
) -> (DMatrix<f64>, usize) {
    let mut m = DMatrix::zeros(d, d);
    let mut ones = 0;
    let mut i = 0;
    if invariant {
        m[(0, 0)] = 1.0;
        ones = 1;
        i = 1;
    }
    while i < d {
        let mut singles = Vec::new();
        if minus_one {
            singles.push(-1.0);
        }
        if invariant {
            singles.push(1.0);
        }
        let rotate = d - i >= 2 && (singles.is_empty() || rng.random_bool(0.5));
        if rotate {
            m.view_mut((i, i), (2, 2)).copy_from(&rotation(angle(rng)));
            i += 2;
        } else {
            assert!(!singles.is_empty(), "no admissible 1×1 block");
            let x = singles[rng.random_range(0..singles.len())];
            if x > 0.0 {
                ones += 1;
            }
            m[(i, i)] = x;
            i += 1;
        }
    }
    (m, ones)
}

/// Random orthogonal reps of `Z` in dimensions `1..=8`: rotation blocks with
/// angle in `[0.05, 2π − 0.05]`, `±1` blocks, conjugated by a random
/// orthogonal matrix. About half carry invariant vectors.
pub fn z_corpus(count: usize, seed: u64) -> Vec<CorpusRep> {
    let mut rng = rng(seed);
    let z = GroupSpec::zpow(1);
    (0..count)
        .map(|i| {
            let d = rng.random_range(1..=8);
            let invariant = rng.random_bool(0.5);
            let (b, ones) = blocks(d, invariant, true, &mut rng, |r| r.random_range(0.05..2.0 * PI - 0.05));
            let qm = random_orthogonal(d, &mut rng);
            let m = &qm * b * qm.transpose();
            CorpusRep {
                name: format!("z#{i} dim {d}"),
                rep: Rep::matrix(z.clone(), vec![to_mat(&m)]).expect("orthogonal"),
                invariant_dim: ones,
            }
        })
        .collect()
}

/// Random orthogonal reps of `Z/n`, `n ∈ 2..=12`, built from rotations by
/// `2πk/n` with `k ≠ 0`, `−1` blocks for even `n`, and `+1` blocks.
pub fn cyclic_corpus(count: usize, seed: u64) -> Vec<CorpusRep> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let n = rng.random_range(2..=12usize);
            let d = rng.random_range(1..=8);
            let invariant = rng.random_bool(0.5);
            let even = n % 2 == 0;
            let (b, ones) = if !even && !invariant && d % 2 == 1 {
                // Odd dimension with no real −1 eigenvalue forces a +1 block.
                blocks(d, true, false, &mut rng, |r| 2.0 * PI * r.random_range(1..n) as f64 / n as f64)
            } else {
                blocks(d, invariant, even, &mut rng, |r| 2.0 * PI * r.random_range(1..n) as f64 / n as f64)
            };
            let qm = random_orthogonal(d, &mut rng);
            let m = &qm * b * qm.transpose();
            CorpusRep {
                name: format!("z/{n}#{i} dim {d}"),
                rep: Rep::matrix(GroupSpec::cyclic(n), vec![to_mat(&m)]).expect("orthogonal"),
                invariant_dim: ones,
            }
        })
        .collect()
}

/// Both corpora, `count` reps each.
pub fn orthogonal_corpus(count: usize, seed: u64) -> Vec<CorpusRep> {
    let mut out = z_corpus(count, seed);
    out.extend(cyclic_corpus(count, seed.wrapping_add(1)));
    out
}

/// A random vector with standard Gaussian coordinates.
pub fn gaussian(d: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    DVector::from_fn(d, |_, _| StandardNormal.sample(rng))
}

pub type IntMatrix = Vec<Vec<i64>>;

fn identity(d: usize) -> IntMatrix {
    (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// A random product of elementary unimodular operations and its inverse.
fn elementary_product(d: usize, steps: usize, rng: &mut ChaCha8Rng) -> (IntMatrix, IntMatrix) {
    let mut p = identity(d);
    let mut p_inv = identity(d);
    for _ in 0..steps {
        let mut e = identity(d);
        let mut e_inv = identity(d);
        match rng.random_range(0..3) {
            0 => {
                let i = rng.random_range(0..d);
                let j = (i + rng.random_range(1..d)) % d;
                let c = [-2, -1, 1, 2][rng.random_range(0..4)];
                e[i][j] = c;
                e_inv[i][j] = -c;
            }
            1 => {
                let i = rng.random_range(0..d);
                let j = (i + rng.random_range(1..d)) % d;
                e.swap(i, j);
                e_inv.swap(i, j);
            }
            _ => {
                let i = rng.random_range(0..d);
                e[i][i] = -1;
                e_inv[i][i] = -1;
            }
        }
        p = mat_mul(&e, &p);
        p_inv = mat_mul(&p_inv, &e_inv);
    }
    (p, p_inv)
}

fn finite_order_seeds(d: usize) -> Vec<IntMatrix> {
    match d {
        2 => vec![
            vec![vec![0, -1], vec![1, 0]],
            vec![vec![0, -1], vec![1, -1]],
            vec![vec![1, -1], vec![1, 0]],
            vec![vec![-1, 0], vec![0, -1]],
            vec![vec![1, 1], vec![0, 1]],
        ],
        _ => vec![
            vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
            vec![vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, 1]],
            vec![vec![0, -1, 0], vec![1, -1, 0], vec![0, 0, -1]],
            vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, -1]],
            vec![vec![2, 1, 0], vec![1, 1, 0], vec![0, 0, -1]],
        ],
    }
}

/// Random unimodular `d × d` matrices with entries bounded by 60: random
/// elementary products, and conjugates of finite-order or partly periodic
/// seeds by such products. Seeds that are not unimodular are skipped.
pub fn random_unimodular(d: usize, rng: &mut ChaCha8Rng) -> IntMatrix {
    loop {
        let (p, p_inv) = elementary_product(d, rng.random_range(1..=6), rng);
        let m = if rng.random_bool(0.4) {
            let seeds: Vec<IntMatrix> = finite_order_seeds(d)
                .into_iter()
                .filter(|s| det(s).abs() == 1)
                .collect();
            let s = &seeds[rng.random_range(0..seeds.len())];
            mat_mul(&mat_mul(&p, s), &p_inv)
        } else {
            // Shears only: swaps and sign flips alone give finite order.
            let mut a = identity(d);
            for _ in 0..rng.random_range(2..=8) {
                let i = rng.random_range(0..d);
                let j = (i + rng.random_range(1..d)) % d;
                let mut e = identity(d);
                e[i][j] = [-2, -1, 1, 2][rng.random_range(0..4)];
                a = mat_mul(&e, &a);
            }
            a
        };
        if m.iter().flatten().all(|x| x.abs() <= 60) {
            return m;
        }
    }
}

pub fn det(m: &IntMatrix) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            (0..m.len())
                .map(|j| {
                    let minor: IntMatrix = m[1..]
                        .iter()
                        .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * m[0][j] * det(&minor)
                })
                .sum()
        }
    }
}

/// Eigenvalues with clusters closer than 1e−5 replaced by their mean, so a
/// defective eigenvalue resolved only to about √ε is recovered.
pub fn clustered_eigenvalues(m: &IntMatrix) -> Vec<Complex64> {
    let d = m.len();
    let a = DMatrix::from_fn(d, d, |i, j| m[i][j] as f64);
    let raw: Vec<Complex64> = a.complex_eigenvalues().iter().cloned().collect();
    let mut used = vec![false; raw.len()];
    let mut out = Vec::new();
    for i in 0..raw.len() {
        if used[i] {
            continue;
        }
        let members: Vec<usize> = (i..raw.len())
            .filter(|&j| !used[j] && (raw[j] - raw[i]).norm() < 1e-5)
            .collect();
        let mean = members.iter().map(|&j| raw[j]).sum::<Complex64>() / members.len() as f64;
        for j in members {
            used[j] = true;
            out.push(mean);
        }
    }
    out
}

/// Least `k ≤ 2d²` such that some eigenvalue lies within 1e−9 of a
/// `k`-th root of unity.
pub fn numeric_root_of_unity_order(m: &IntMatrix) -> Option<u64> {
    let d = m.len() as u64;
    let eig = clustered_eigenvalues(m);
    (1..=2 * d * d).find(|&k| {
        eig.iter().any(|l| {
            (0..k).any(|j| {
                let root = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64);
                (l - root).norm() < 1e-9
            })
        })
    })
}

/// Least `k ≤ 2d²` with `det(Mᵏ − I) = 0`, computed exactly; this is the
/// least order of a root of unity among the eigenvalues of `M`.
pub fn root_of_unity_order_oracle(m: &IntMatrix) -> Option<u64> {
    let d = m.len();
    let a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut power = a.clone();
    for k in 1..=2 * (d * d) as u64 {
        let mut shifted = power.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= 1;
        }
        if bareiss_det(shifted).is_zero() {
            return Some(k);
        }
        power = (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|l| &power[i][l] * &a[l][j]).sum()).collect())
            .collect();
    }
    None
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order of `ζ_n^a` as a root of unity.
pub fn primitive_order(n: u64, a: u64) -> u64 {
    n / gcd(a % n, n)
}

/// Brute-force fixed points of `x ↦ ux` on `Z/n` and of the dual action
/// on characters `x ↦ cx/n`.
pub fn cyclic_fixed_counts(n: u64, u: u64) -> (usize, usize) {
    let fixed = (0..n).filter(|&x| (u * x) % n == x).count();
    // χ_c is fixed iff χ_c ∘ g = χ_c, i.e. c·u ≡ c.
    let dual = (0..n).filter(|&c| (c * u) % n == c).count();
    (fixed, dual)
}

/// Brute-force fixed points of `x ↦ Mx` on `(Z/p)²` and of the dual action
/// on characters `x ↦ ⟨c, x⟩/p`: `c` is fixed iff `Mᵀc = c`.
pub fn matrix_fixed_counts(p: i64, m: &IntMatrix) -> (usize, usize) {
    let modp = |x: i64| x.rem_euclid(p);
    let mut fixed = 0;
    let mut dual = 0;
    for a in 0..p {
        for b in 0..p {
            if modp(m[0][0] * a + m[0][1] * b) == a && modp(m[1][0] * a + m[1][1] * b) == b {
                fixed += 1;
            }
            if modp(m[0][0] * a + m[1][0] * b) == a && modp(m[0][1] * a + m[1][1] * b) == b {
                dual += 1;
            }
        }
    }
    (fixed, dual)
}

/// A random matrix invertible modulo `p`, entries in `0..p`.
pub fn random_invertible_mod(p: i64, rng: &mut ChaCha8Rng) -> IntMatrix {
    loop {
        let m: IntMatrix = (0..2).map(|_| (0..2).map(|_| rng.random_range(0..p)).collect()).collect();
        if det(&m).rem_euclid(p) != 0 {
            return m;
        }
    }
}
