//! The representation enum and invariance defects.

use super::matrix::{Mat, MatrixRep};
use super::regular::RegularRep;
use super::vector::{Label, VectorH};
use super::zrot::ZRotationAlg;
use super::{RepError, Scalar};
use crate::groups::{GenMeasure, GroupElem, GroupSpec};

/// An orthogonal representation backend.
#[derive(Clone, Debug)]
pub enum Rep<S: Scalar> {
    Regular(RegularRep),
    Matrix(MatrixRep<S>),
    ZRotation(ZRotationAlg, MatrixRep<S>),
    /// Finite-dimensional summands over one group; coordinates are
    /// concatenated in order.
    DirectSum(Vec<Rep<S>>),
}

impl<S: Scalar> Rep<S> {
    pub fn regular(group: GroupSpec, radius: usize, cap: usize) -> Result<Self, RepError> {
        Ok(Rep::Regular(RegularRep::new(group, radius, cap)?))
    }

    pub fn matrix(group: GroupSpec, gens: Vec<Mat<S>>) -> Result<Self, RepError> {
        Ok(Rep::Matrix(MatrixRep::new(group, gens)?))
    }

    pub fn zrotation(alg: ZRotationAlg) -> Result<Self, RepError> {
        let m = alg.matrix_rep()?;
        Ok(Rep::ZRotation(alg, m))
    }

    pub fn direct_sum(parts: Vec<Rep<S>>) -> Result<Self, RepError> {
        let group = parts
            .first()
            .map(|p| p.group().clone())
            .ok_or_else(|| RepError::DimensionMismatch("empty direct sum".to_string()))?;
        for p in &parts {
            if !p.is_finite_dimensional() {
                return Err(RepError::DimensionMismatch(
                    "direct sums take finite-dimensional summands".to_string(),
                ));
            }
            if *p.group() != group {
                return Err(RepError::DimensionMismatch(
                    "summands represent different groups".to_string(),
                ));
            }
        }
        Ok(Rep::DirectSum(parts))
    }

    /// The same representation with floating-point coefficients.
    pub fn to_f64(&self) -> Result<Rep<f64>, RepError> {
        match self {
            Rep::Regular(r) => Ok(Rep::Regular(r.clone())),
            Rep::Matrix(m) => Rep::matrix(
                m.group().clone(),
                m.generators().iter().map(Mat::to_f64).collect(),
            ),
            Rep::ZRotation(alg, _) => Rep::zrotation(alg.clone()),
            Rep::DirectSum(parts) => Rep::direct_sum(
                parts.iter().map(Rep::to_f64).collect::<Result<_, _>>()?,
            ),
        }
    }

    /// The trivial representation on `R^d`.
    pub fn trivial(group: GroupSpec, d: usize) -> Result<Self, RepError> {
        let gens = vec![Mat::identity(d); group.rank()];
        Self::matrix(group, gens)
    }

    pub fn group(&self) -> &GroupSpec {
        match self {
            Rep::Regular(r) => r.group(),
            Rep::Matrix(m) | Rep::ZRotation(_, m) => m.group(),
            Rep::DirectSum(parts) => parts[0].group(),
        }
    }

    pub fn is_finite_dimensional(&self) -> bool {
        !matches!(self, Rep::Regular(_))
    }

    /// Dimension; for regular reps, the size of the truncation ball.
    pub fn dim(&self) -> usize {
        match self {
            Rep::Regular(r) => r.dim(),
            Rep::Matrix(m) | Rep::ZRotation(_, m) => m.dim(),
            Rep::DirectSum(parts) => parts.iter().map(|p| p.dim()).sum(),
        }
    }

    /// Basis labels in coordinate order.
    pub fn labels(&self) -> Vec<Label> {
        match self {
            Rep::Regular(r) => r.ball().elems().iter().cloned().map(Label::Elem).collect(),
            _ => (0..self.dim()).map(Label::Index).collect(),
        }
    }

    pub fn to_dense(&self, v: &VectorH<S>) -> Result<Vec<S>, RepError> {
        match self {
            Rep::Regular(r) => r.to_dense(v),
            _ => v.to_dense(self.dim()),
        }
    }

    pub fn from_dense(&self, coords: &[S]) -> VectorH<S> {
        match self {
            Rep::Regular(r) => r.from_dense(coords),
            _ => VectorH::from_dense(coords),
        }
    }

    /// `π_g` on dense coordinates of a finite-dimensional rep.
    pub fn apply_dense(&self, g: &GroupElem, v: &[S]) -> Result<Vec<S>, RepError> {
        match self {
            Rep::Regular(r) => {
                let w = r.apply(g, &r.from_dense(v))?;
                r.to_dense(&w)
            }
            Rep::Matrix(m) | Rep::ZRotation(_, m) => m.apply_dense(g, v),
            Rep::DirectSum(parts) => {
                if v.len() != self.dim() {
                    return Err(RepError::DimensionMismatch(format!(
                        "vector of length {} for a rep of dimension {}",
                        v.len(),
                        self.dim()
                    )));
                }
                let mut out = Vec::with_capacity(v.len());
                let mut start = 0;
                for p in parts {
                    let d = p.dim();
                    out.extend(p.apply_dense(g, &v[start..start + d])?);
                    start += d;
                }
                Ok(out)
            }
        }
    }

    /// `π_g v`.
    pub fn apply_g(&self, g: &GroupElem, v: &VectorH<S>) -> Result<VectorH<S>, RepError> {
        if !self.group().owns(g) {
            return Err(RepError::UnknownGenerator(g.to_string()));
        }
        match self {
            Rep::Regular(r) => r.apply(g, v),
            _ => {
                let dense = v.to_dense(self.dim())?;
                Ok(VectorH::from_dense(&self.apply_dense(g, &dense)?))
            }
        }
    }

    /// The matrix of `π_g` in the coordinate basis.
    pub fn dense_matrix(&self, g: &GroupElem) -> Result<Mat<S>, RepError> {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for j in 0..d {
            let mut e = vec![S::zero(); d];
            e[j] = S::one();
            let col = self.apply_dense(g, &e)?;
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }
}

/// Per-generator invariance defects `‖hv − v‖` over `supp(μ) \ {e}`.
#[derive(Clone, Debug)]
pub struct DefectReport<S: Scalar> {
    pub norm: f64,
    pub norm_sq: S,
    /// `(h, ‖hv − v‖²)`, exact in exact mode.
    pub defects_sq: Vec<(GroupElem, S)>,
    pub defects: Vec<(GroupElem, f64)>,
    pub max_defect: f64,
    pub max_defect_sq: S,
}

pub fn invariance_defect<S: Scalar>(
    rep: &Rep<S>,
    mu: &GenMeasure,
    v: &VectorH<S>,
) -> Result<DefectReport<S>, RepError> {
    if v.is_zero() {
        return Err(RepError::ZeroVector);
    }
    let mut defects_sq = Vec::new();
    for (h, _) in mu.non_identity() {
        let hv = rep.apply_g(h, v)?;
        defects_sq.push((h.clone(), hv.sub(v)?.norm_sq()));
    }
    let defects: Vec<(GroupElem, f64)> = defects_sq
        .iter()
        .map(|(h, d)| (h.clone(), d.to_float().sqrt()))
        .collect();
    let max_defect_sq = defects_sq
        .iter()
        .map(|(_, d)| d.clone())
        .fold(S::zero(), |a, b| if b > a { b } else { a });
    let max_defect = max_defect_sq.to_float().sqrt();
    let norm_sq = v.norm_sq();
    Ok(DefectReport {
        norm: norm_sq.to_float().sqrt(),
        norm_sq,
        defects_sq,
        defects,
        max_defect,
        max_defect_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;
    use crate::groups::{Perm, DEFAULT_BALL_CAP};
    use crate::reps::{inner, realify, realify_vector, ComplexMatrixRep, RepError};
    use crate::zconj::UnitAlgebraic;
    use crate::reps::ZRotationAlg;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn zvec(n: i64) -> GroupElem {
        GroupElem::Vector(vec![n])
    }

    fn rot90() -> Mat<Rational> {
        Mat::from_rows(vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap()
    }

    fn pythagorean() -> Mat<Rational> {
        Mat::from_rows(vec![vec![q(3, 5), q(-4, 5)], vec![q(4, 5), q(3, 5)]]).unwrap()
    }

    fn perm_matrix(p: &Perm) -> Mat<Rational> {
        let n = p.degree();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(p.apply(i), i, q(1, 1));
        }
        m
    }

    fn s3() -> GroupSpec {
        GroupSpec::perm(
            3,
            vec![Perm::from_cycles(3, "(0 1 2)").unwrap(), Perm::from_cycles(3, "(0 1)").unwrap()],
        )
        .unwrap()
    }

    fn s3_rep() -> Rep<Rational> {
        let g = s3();
        let gens = match &g {
            GroupSpec::Perm { gens, .. } => gens.iter().map(perm_matrix).collect(),
            _ => unreachable!(),
        };
        Rep::matrix(g, gens).unwrap()
    }

    #[test]
    fn apply_examples() {
        let z = GroupSpec::zpow(1);
        let reg = Rep::<Rational>::regular(z.clone(), 3, DEFAULT_BALL_CAP).unwrap();
        let out = reg.apply_g(&zvec(1), &VectorH::basis_elem(zvec(0))).unwrap();
        assert_eq!(out, VectorH::basis_elem(zvec(1)));

        let rot = Rep::matrix(z.clone(), vec![rot90()]).unwrap();
        let out = rot.apply_g(&zvec(1), &VectorH::basis_index(0)).unwrap();
        assert_eq!(out, VectorH::basis_index(1));
    }

    #[test]
    fn dirichlet_truncation_drops_mass() {
        let reg = Rep::<Rational>::regular(GroupSpec::zpow(1), 2, DEFAULT_BALL_CAP).unwrap();
        let out = reg.apply_g(&zvec(1), &VectorH::basis_elem(zvec(2))).unwrap();
        assert!(out.is_zero());
        let outside = VectorH::basis_elem(zvec(5));
        assert!(matches!(
            reg.apply_g(&zvec(1), &outside),
            Err(RepError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let rot = Rep::matrix(GroupSpec::zpow(1), vec![rot90()]).unwrap();
        let g = GroupElem::Vector(vec![1, 1]);
        assert!(matches!(
            rot.apply_g(&g, &VectorH::basis_index(0)),
            Err(RepError::UnknownGenerator(_))
        ));
    }

    #[test]
    fn rotation_by_fifth_root_closes_up() {
        let z5 = UnitAlgebraic::root_of_unity(5, 1).unwrap();
        let alg = ZRotationAlg::new(&z5).unwrap();
        let field = alg.unit().field().clone();
        let one = field.one();
        let mut x = one.clone();
        for _ in 0..5 {
            x = alg.act_exact(1, &x).unwrap();
        }
        assert_eq!(x, one);
        assert_ne!(alg.act_exact(1, &one).unwrap(), one);
        assert!(matches!(alg.matrix::<Rational>(), Err(RepError::NotExact(_))));

        let rep = Rep::<f64>::zrotation(alg).unwrap();
        let mut v = vec![1.0, 0.0];
        for _ in 0..5 {
            v = rep.apply_dense(&zvec(1), &v).unwrap();
        }
        assert!((v[0] - 1.0).abs() < 1e-9 && v[1].abs() < 1e-9);
        let w = rep.apply_dense(&zvec(5), &[1.0, 0.0]).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-9 && w[1].abs() < 1e-9);
    }

    #[test]
    fn gaussian_rotation_is_exact() {
        let z: UnitAlgebraic = "alg:25 -30 25:0,1,0,1".parse().unwrap();
        let alg = ZRotationAlg::new(&z).unwrap();
        assert_eq!(alg.exact_cos_sin(), Some(&(q(3, 5), q(4, 5))));
        assert_eq!(alg.matrix::<Rational>().unwrap(), pythagorean());
    }

    #[test]
    fn defect_examples() {
        let c2 = GroupSpec::cyclic(2);
        let a = c2.standard_generators()[0].clone();
        let sign = Rep::matrix(c2.clone(), vec![Mat::from_rows(vec![vec![q(-1, 1)]]).unwrap()]).unwrap();
        let mu = GenMeasure::lazy_uniform(&c2);
        let rep = invariance_defect(&sign, &mu, &VectorH::basis_index(0)).unwrap();
        assert_eq!(rep.max_defect_sq, q(4, 1));
        assert_eq!(rep.max_defect, 2.0);
        assert_eq!(rep.defects_sq[0].0, a);

        let z = GroupSpec::zpow(1);
        let reg = Rep::<Rational>::regular(z.clone(), 3, DEFAULT_BALL_CAP).unwrap();
        let mu = GenMeasure::lazy_uniform(&z);
        let rep = invariance_defect(&reg, &mu, &VectorH::basis_elem(zvec(0))).unwrap();
        assert_eq!(rep.defects_sq.len(), 2);
        assert!(rep.defects_sq.iter().all(|(_, d)| *d == q(2, 1)));
        assert!((rep.max_defect - 2f64.sqrt()).abs() < 1e-15);

        let triv = Rep::<Rational>::trivial(z.clone(), 3).unwrap();
        let rep = invariance_defect(&triv, &mu, &VectorH::from_dense(&[q(1, 1), q(2, 1), q(0, 1)])).unwrap();
        assert_eq!(rep.max_defect, 0.0);
        assert_eq!(
            invariance_defect(&triv, &mu, &VectorH::zero()).unwrap_err(),
            RepError::ZeroVector
        );
    }

    #[test]
    fn realify_examples() {
        let z = GroupSpec::zpow(1);
        let zero = Mat::from_rows(vec![vec![q(0, 1)]]).unwrap();
        let one = Mat::from_rows(vec![vec![q(1, 1)]]).unwrap();
        let by_i = ComplexMatrixRep { group: z.clone(), gens: vec![(zero.clone(), one.clone())] };
        assert_eq!(realify(&by_i).unwrap().generators()[0], rot90());
        let by_one = ComplexMatrixRep { group: z.clone(), gens: vec![(one.clone(), zero.clone())] };
        assert_eq!(realify(&by_one).unwrap().generators()[0], Mat::identity(2));
        let not_unitary = ComplexMatrixRep {
            group: z.clone(),
            gens: vec![(one.clone(), one.clone())],
        };
        assert!(matches!(realify(&not_unitary), Err(RepError::NotUnitary(_))));
    }

    #[test]
    fn realification_preserves_defects() {
        // z = (3 + 4i)/5 acting on C; complex defect of v = 1 + 2i is |z − 1|·|v|.
        let z = GroupSpec::zpow(1);
        let a = Mat::from_rows(vec![vec![q(3, 5)]]).unwrap();
        let b = Mat::from_rows(vec![vec![q(4, 5)]]).unwrap();
        let rep = Rep::Matrix(realify(&ComplexMatrixRep { group: z.clone(), gens: vec![(a, b)] }).unwrap());
        let v = VectorH::from_dense(&realify_vector(&[q(1, 1)], &[q(2, 1)]));
        let report = invariance_defect(&rep, &GenMeasure::lazy_uniform(&z), &v).unwrap();
        // |z − 1|² = (4 + 16)/25, |v|² = 5.
        assert!(report.defects_sq.iter().all(|(_, d)| *d == q(4, 1)));
        let Rep::Matrix(m) = &rep else { unreachable!() };
        let g = &m.generators()[0];
        assert_eq!(g.transpose().mul(g), Mat::identity(2));
    }

    #[test]
    fn relations_are_checked() {
        let z2 = GroupSpec::zpow(2);
        let flip = Mat::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(-1, 1)]]).unwrap();
        assert!(matches!(
            Rep::matrix(z2.clone(), vec![rot90(), flip]),
            Err(RepError::NotHomomorphism(_))
        ));
        // A rotation of infinite order cannot represent Z/3.
        assert!(matches!(
            Rep::matrix(GroupSpec::cyclic(3), vec![pythagorean()]),
            Err(RepError::NotHomomorphism(_))
        ));
        let skew = Mat::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
        assert!(matches!(
            Rep::matrix(GroupSpec::zpow(1), vec![skew]),
            Err(RepError::NotOrthogonal(_))
        ));
        assert!(s3_rep().dim() == 3);
    }

    #[test]
    fn direct_sums_concatenate() {
        let z = GroupSpec::zpow(1);
        let sum = Rep::direct_sum(vec![
            Rep::matrix(z.clone(), vec![rot90()]).unwrap(),
            Rep::trivial(z.clone(), 1).unwrap(),
        ])
        .unwrap();
        assert_eq!(sum.dim(), 3);
        let out = sum.apply_dense(&zvec(1), &[q(1, 1), q(0, 1), q(5, 1)]).unwrap();
        assert_eq!(out, vec![q(0, 1), q(1, 1), q(5, 1)]);
        let reg = Rep::<Rational>::regular(z.clone(), 1, DEFAULT_BALL_CAP).unwrap();
        assert!(Rep::direct_sum(vec![reg]).is_err());
    }

    fn small_vec(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-20i64..=20, 1i64..=6), dim).prop_map(|v| v.into_iter().map(|(n, d)| q(n, d)).collect())
    }

    /// Places coefficients on the ball elements of length at most `inner`.
    fn on_inner_ball(rep: &Rep<Rational>, inner: usize, c: Vec<Rational>) -> VectorH<Rational> {
        let Rep::Regular(r) = rep else { unreachable!() };
        let mut v = VectorH::zero();
        let ball = r.ball();
        let inside = (0..ball.len()).filter(|&i| ball.length_of(i) <= inner).map(|i| ball.get(i));
        for (g, x) in inside.zip(c) {
            v.set(Label::Elem(g.clone()), x);
        }
        v
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn matrix_action_preserves_inner_products(v in small_vec(3), w in small_vec(3), k in 0usize..4) {
            let rep = s3_rep();
            let g = &rep.group().standard_generators()[k % 3];
            let (v, w) = (VectorH::from_dense(&v), VectorH::from_dense(&w));
            let gv = rep.apply_g(g, &v).unwrap();
            let gw = rep.apply_g(g, &w).unwrap();
            prop_assert_eq!(inner(&gv, &gw).unwrap(), inner(&v, &w).unwrap());
        }

        #[test]
        fn rotation_preserves_inner_products(v in small_vec(2), w in small_vec(2), n in -3i64..=3) {
            let rep = Rep::matrix(GroupSpec::zpow(1), vec![pythagorean()]).unwrap();
            let (v, w) = (VectorH::from_dense(&v), VectorH::from_dense(&w));
            let gv = rep.apply_g(&zvec(n), &v).unwrap();
            let gw = rep.apply_g(&zvec(n), &w).unwrap();
            prop_assert_eq!(inner(&gv, &gw).unwrap(), inner(&v, &w).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn regular_action_preserves_inner_products(v in small_vec(53), w in small_vec(53), k in 0usize..4) {
            // Radius-3 support inside a radius-4 ball: one generator step stays inside.
            let rep = Rep::<Rational>::regular(GroupSpec::free(2), 4, DEFAULT_BALL_CAP).unwrap();
            let (v, w) = (on_inner_ball(&rep, 3, v), on_inner_ball(&rep, 3, w));
            let g = &rep.group().standard_generators()[k];
            let gv = rep.apply_g(g, &v).unwrap();
            let gw = rep.apply_g(g, &w).unwrap();
            prop_assert_eq!(inner(&gv, &gw).unwrap(), inner(&v, &w).unwrap());
        }

        #[test]
        fn action_composes(word_g in prop::collection::vec(0usize..4, 0..=4),
                           word_h in prop::collection::vec(0usize..4, 0..=4),
                           c in small_vec(5)) {
            static REP: std::sync::OnceLock<Rep<Rational>> = std::sync::OnceLock::new();
            let group = GroupSpec::free(2);
            let rep = REP.get_or_init(|| Rep::regular(GroupSpec::free(2), 9, DEFAULT_BALL_CAP).unwrap());
            let gens = group.standard_generators();
            let word = |w: &[usize]| {
                w.iter().fold(group.identity(), |acc, &i| group.multiply(&acc, &gens[i]).unwrap())
            };
            let (g, h) = (word(&word_g), word(&word_h));
            let mut v = VectorH::zero();
            for (x, coef) in gens.iter().chain([&group.identity()]).zip(c) {
                v.set(Label::Elem(x.clone()), coef);
            }
            let lhs = rep.apply_g(&g, &rep.apply_g(&h, &v).unwrap()).unwrap();
            let rhs = rep.apply_g(&group.multiply(&g, &h).unwrap(), &v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
