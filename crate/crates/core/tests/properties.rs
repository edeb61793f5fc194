//! Property suites for cross-module invariants, each checked against an
//! oracle from `common`.

mod common;

use bohrgap::almostinv::{householder_family, AlmostInvError, orthogonalize, scale_and_witness, windows_family, WitnessOutcome};
use bohrgap::duality::{dual_conjugacy_transport, enumerate_dual, toral_ergodicity, AutoAction, ErgodicVerdict, FiniteAbelian};
use bohrgap::exactalg::{cyclotomic_factor, IntPoly, Rational, TorusValue};
use bohrgap::groups::{cayley_ball, GenMeasure, GroupSpec, Letter};
use bohrgap::markov::{invariant_subspace, solve_d, top_eigenvalue, MarkovError, DEFAULT_TOL};
use bohrgap::reps::{realify, sigma_eval, ComplexMatrixRep, Mat, VectorH};
use bohrgap::zconj::{build_xi, decide_conjugacy, eval_at, UnitAlgebraic};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational(), k in 1i64..=9) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if a != q(0, 1) {
            prop_assert_eq!(&a * &a.recip(), q(1, 1));
        }
        // Canonical form: scaling numerator and denominator changes nothing.
        let scaled = Rational::new(a.numer() * k, a.denom() * k);
        prop_assert_eq!(scaled.to_string(), a.to_string());
    }
}

const CYCLOTOMICS: &[(u64, &[i64])] = &[
    (1, &[-1, 1]),
    (2, &[1, 1]),
    (3, &[1, 1, 1]),
    (4, &[1, 0, 1]),
    (5, &[1, 1, 1, 1, 1]),
    (6, &[1, -1, 1]),
    (8, &[1, 0, 0, 0, 1]),
    (10, &[1, -1, 1, -1, 1]),
    (12, &[1, 0, -1, 0, 1]),
];

/// Monic factors with no root of unity among their roots.
const OTHERS: &[&[i64]] = &[
    &[1, -3, 1],
    &[-1, -1, 1],
    &[-1, -1, 0, 1],
    &[2, -1, 1],
    &[-2, 1],
    &[3, 1],
    &[1, 3, 1],
    &[-2, 0, 0, 1],
];

fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn companion(p: &[i64]) -> IntMatrix {
    let d = p.len() - 1;
    let mut m = vec![vec![0; d]; d];
    for i in 1..d {
        m[i][i - 1] = 1;
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[d - 1] = -p[i];
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cyclotomic_factor_matches_numeric_roots(
        picks in prop::collection::vec((any::<bool>(), 0usize..9), 1..=2),
    ) {
        let mut p = vec![1i64];
        let mut least: Option<u64> = None;
        for (cyc, i) in &picks {
            let f = if *cyc {
                let (k, f) = CYCLOTOMICS[i % CYCLOTOMICS.len()];
                least = Some(least.map_or(k, |l| l.min(k)));
                f
            } else {
                OTHERS[i % OTHERS.len()]
            };
            p = convolve(&p, f);
        }
        let deg = p.len() - 1;
        let got = cyclotomic_factor(&IntPoly::from_i64(&p), deg);
        prop_assert_eq!(got, least, "p = {:?}", p);
        if deg <= 4 {
            prop_assert_eq!(got, root_of_unity_order_oracle(&companion(&p)), "p = {:?}", p);
        }
    }

    #[test]
    fn balls_are_inverse_closed(r in 0usize..6, which in 0usize..3) {
        let group: GroupSpec = ["free:2", "z:2", "perm:4:(0 1),(0 1 2 3)"][which].parse().unwrap();
        let gens = group.standard_generators();
        let mut sym = gens.clone();
        for g in &gens {
            let inv = group.inverse(g).unwrap();
            if !sym.contains(&inv) {
                sym.push(inv);
            }
        }
        let ball = cayley_ball(&group, &sym, r, 1 << 20).unwrap();
        for g in ball.elems() {
            let inv = group.inverse(g).unwrap();
            prop_assert!(ball.position(&inv).is_some(), "{} in ball but not its inverse", g);
        }
    }

    #[test]
    fn realification_is_exactly_orthogonal(ts in prop::collection::vec((-20i64..=20, 1i64..=7), 1..=3), swap in any::<bool>()) {
        // Diagonal unitary with entries ((1 − t²) + 2ti)/(1 + t²), optionally
        // composed with a coordinate swap.
        let d = ts.len();
        let mut re = Mat::<Rational>::zeros(d, d);
        let mut im = Mat::<Rational>::zeros(d, d);
        for (j, (n, den)) in ts.iter().enumerate() {
            let t = q(*n, *den);
            let norm = &q(1, 1) + &(&t * &t);
            let target = if swap && d > 1 { (j + 1) % d } else { j };
            re.set(target, j, &(&q(1, 1) - &(&t * &t)) / &norm);
            im.set(target, j, &(&q(2, 1) * &t) / &norm);
        }
        let z = GroupSpec::zpow(1);
        let real = realify(&ComplexMatrixRep { group: z, gens: vec![(re, im)] }).unwrap();
        let m = &real.generators()[0];
        prop_assert_eq!(m.transpose().mul(m), Mat::identity(2 * d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn finite_dichotomy_agrees(seed in any::<u64>(), cyclic in any::<bool>()) {
        let c = if cyclic { cyclic_corpus(1, seed) } else { z_corpus(1, seed) }.remove(0);
        let mu = GenMeasure::lazy_uniform(c.rep.group());
        let kernel = invariant_subspace(&c.rep, &mu).unwrap();
        let mut g = rng(seed ^ 0x5a5a);
        let b = VectorH::from_dense(gaussian(c.rep.dim(), &mut g).as_slice());
        let singular = matches!(solve_d(&c.rep, &mu, &b, 1e-10), Err(MarkovError::SingularOperator(_)));
        let top = top_eigenvalue(&c.rep, &mu, DEFAULT_TOL).unwrap();
        prop_assert_eq!(kernel.len(), c.invariant_dim, "{}", c.name);
        prop_assert_eq!(singular, c.invariant_dim > 0, "{}", c.name);
        prop_assert_eq!(top >= 1.0 - 1e-8, c.invariant_dim > 0, "{}: top {}", c.name, top);
    }

    #[test]
    fn toral_verdict_matches_eigenvalues(seed in any::<u64>(), d in 2usize..=3) {
        let m = random_unimodular(d, &mut rng(seed));
        let got = match toral_ergodicity(&m).unwrap() {
            ErgodicVerdict::Ergodic { .. } => None,
            ErgodicVerdict::NotErgodic { k, witness, .. } => {
                // The witness orbit under Mᵀ closes up after exactly its size.
                if let Some((v, size)) = witness {
                    let mut x = v.clone();
                    for step in 1..=size {
                        x = (0..d).map(|i| (0..d).map(|j| m[j][i] * x[j]).sum()).collect();
                        prop_assert_eq!(x == v, step == size);
                    }
                }
                Some(k)
            }
        };
        prop_assert_eq!(got, root_of_unity_order_oracle(&m), "M = {:?}", m);
    }

    #[test]
    fn transport_intertwines(seed in any::<u64>(), pi in 0usize..4) {
        let p = [3i64, 5, 7, 11][pi];
        let mut g = rng(seed);
        let m = random_invertible_mod(p, &mut g);
        let xi = random_invertible_mod(p, &mut g);
        let det_inv = (1..p).find(|x| (det(&xi) * x).rem_euclid(p) == 1).unwrap();
        let xi_inv = vec![
            vec![(xi[1][1] * det_inv).rem_euclid(p), (-xi[0][1] * det_inv).rem_euclid(p)],
            vec![(-xi[1][0] * det_inv).rem_euclid(p), (xi[0][0] * det_inv).rem_euclid(p)],
        ];
        let m2: IntMatrix = mat_mul(&mat_mul(&xi, &m), &xi_inv)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.rem_euclid(p)).collect())
            .collect();
        let a = FiniteAbelian::new(vec![p as u64, p as u64]).unwrap();
        let act = AutoAction::with_default_group(a.clone(), vec![m]).unwrap();
        let act2 = AutoAction::with_default_group(a.clone(), vec![m2]).unwrap();
        let t = dual_conjugacy_transport(&xi, &act, &act2).unwrap();
        prop_assert_eq!(t.verified, (p * p) as usize);
        let l = Letter::new(0, false);
        for chi in enumerate_dual(&a) {
            prop_assert_eq!(t.apply(&act.dual_apply(l, &chi)), act2.dual_apply(l, &t.apply(&chi)));
        }
    }

    #[test]
    fn xi_is_a_ring_map(seed in any::<u64>(), which in 0usize..3) {
        let (zs, ws) = [
            ("root:12:1", "root:12:5"),
            ("root:9:2", "root:9:4"),
            ("alg:5 -6 5:1/2,7/10,7/10,9/10", "alg:5 -6 5:1/2,7/10,-9/10,-7/10"),
        ][which];
        let z: UnitAlgebraic = zs.parse().unwrap();
        let w: UnitAlgebraic = ws.parse().unwrap();
        let xi = build_xi(&z, &w).unwrap();
        let f = xi.domain();
        let mut g = rng(seed);
        let mut elem = || {
            f.element((0..f.degree()).map(|_| q(g.random_range(-9..=9), g.random_range(1..=5))).collect())
        };
        let (a, b) = (elem(), elem());
        let (xa, xb) = (xi.apply(&a).unwrap(), xi.apply(&b).unwrap());
        prop_assert_eq!(xi.apply(&(&a + &b)).unwrap(), &xa + &xb);
        prop_assert_eq!(xi.apply(&(&a * &b)).unwrap(), &xa * &xb);
        // Ξ sends z to w, so its value at w matches the numeric value of Ξa.
        let (_, at_w) = xi.trace(&a).unwrap();
        let direct = xa.embed(w.as_algebraic().unwrap().approx());
        prop_assert!((at_w - direct).norm() < 1e-9);
    }
}

#[test]
fn conjugacy_is_an_equivalence_on_roots_of_unity() {
    let family: Vec<UnitAlgebraic> = (1..=12u64)
        .flat_map(|n| (0..n).map(move |a| UnitAlgebraic::root_of_unity(n, a as i64).unwrap()))
        .collect();
    let rel: Vec<Vec<bool>> = family
        .iter()
        .map(|x| family.iter().map(|y| decide_conjugacy(x, y).conjugate).collect())
        .collect();
    let n = family.len();
    for i in 0..n {
        assert!(rel[i][i]);
        for j in 0..n {
            assert_eq!(rel[i][j], rel[j][i]);
            if rel[i][j] {
                for k in 0..n {
                    assert!(!rel[j][k] || rel[i][k]);
                }
            }
        }
    }
}

#[test]
fn witness_pairings_are_half() {
    for n in 1..=8 {
        let (rep, seq) = householder_family(n).unwrap();
        let mu = GenMeasure::lazy_uniform(rep.group());
        let WitnessOutcome::Bundle(b) = scale_and_witness(&rep, &mu, &seq, n).unwrap() else {
            panic!("householder vectors are not invariant");
        };
        for (i, w_n) in b.scaled.iter().enumerate() {
            let pairing: Rational = b.witness.entries().map(|(l, x)| x * w_n.get(l)).sum();
            assert_eq!(pairing, q(1, 2));
            let norm_sq: Rational = w_n.entries().map(|(_, x)| x * x).sum();
            assert_eq!(norm_sq, b.epsilons[i].recip());
        }
    }
}

#[test]
fn minimal_polynomials_vanish() {
    let mut inputs: Vec<UnitAlgebraic> = (1..=30u64)
        .flat_map(|n| (0..n).map(move |a| UnitAlgebraic::root_of_unity(n, a as i64).unwrap()))
        .collect();
    inputs.push("alg:5 -6 5:1/2,7/10,7/10,9/10".parse().unwrap());
    inputs.push("alg:1 -1 1:0,1,1/2,1".parse().unwrap());
    for z in &inputs {
        let p = z.minpoly().unwrap().clone();
        assert!(eval_at(z, &p).zero, "{z}");
    }
}

#[test]
fn orthogonalized_windows_pair_to_one_half() {
    let (rep, seq) = windows_family(400).unwrap();
    let mu = GenMeasure::lazy_uniform(rep.group());
    let out = orthogonalize(&rep, &mu, &seq, None).unwrap();
    // Take the longest prefix of the defect schedule the outputs support.
    let n = match scale_and_witness(&rep, &mu, &out.vectors, out.vectors.len()) {
        Err(AlmostInvError::SubsequenceExhausted { found, .. }) => found,
        _ => out.vectors.len(),
    };
    assert!(n >= 2, "only {n} selectable outputs");
    let WitnessOutcome::Bundle(b) = scale_and_witness(&rep, &mu, &out.vectors, n).unwrap() else {
        panic!("windows are not invariant");
    };
    assert_eq!(b.scaled.len(), n);
    let half = TorusValue::from_rational(&q(1, 2));
    for w_n in &b.scaled {
        let s = sigma_eval(w_n, &b.witness).unwrap();
        assert!(s.circle_distance(&half) < 1e-9, "σ = {}", s.as_f64());
    }
    // The scaled vectors stay in the represented ball.
    assert!(b.scaled.iter().all(|w| rep.to_dense(w).is_ok()));
}
