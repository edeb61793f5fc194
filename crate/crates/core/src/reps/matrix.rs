//! Dense matrices, orthogonal matrix reps and realification.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{RepError, Scalar};
use crate::groups::{GroupElem, GroupSpec, Letter, Perm, DEFAULT_ORDER_CAP};

/// Orthogonality tolerance for float-mode generator images.
pub const ORTHO_TOL: f64 = 1e-10;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, RepError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(RepError::DimensionMismatch("ragged matrix rows".to_string()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: S) {
        self.data[i * self.cols + j] = x;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(S::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone())
            })
            .collect()
    }

    /// Entrywise agreement: exact in exact mode, within `tol` otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a.clone() - b.clone()).negligible(tol))
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.is_square() && self.transpose().mul(self).approx_eq(&Self::identity(self.rows), tol)
    }

    pub fn to_f64(&self) -> Mat<f64> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_float()).collect(),
        }
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_float())
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[Mat<S>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A finite-dimensional orthogonal representation given by generator images.
#[derive(Clone, Debug)]
pub struct MatrixRep<S: Scalar> {
    group: GroupSpec,
    dim: usize,
    gens: Vec<Mat<S>>,
    inverses: Vec<Mat<S>>,
    perm_words: HashMap<Perm, Vec<Letter>>,
}

impl<S: Scalar> MatrixRep<S> {
    /// Checks shapes, orthogonality of every generator image, and the group
    /// relations: commutation for `Z^d`, and consistency on every Cayley
    /// graph edge for permutation groups.
    pub fn new(group: GroupSpec, gens: Vec<Mat<S>>) -> Result<Self, RepError> {
        if gens.len() != group.rank() {
            return Err(RepError::DimensionMismatch(format!(
                "{} generator images for a group of rank {}",
                gens.len(),
                group.rank()
            )));
        }
        let dim = gens.first().map_or(0, |m| m.rows());
        for (i, m) in gens.iter().enumerate() {
            if !m.is_square() || m.rows() != dim {
                return Err(RepError::DimensionMismatch(format!(
                    "generator {} is {}x{}, expected {dim}x{dim}",
                    Letter::new(i, false),
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_orthogonal(ORTHO_TOL) {
                return Err(RepError::NotOrthogonal(Letter::new(i, false).to_string()));
            }
        }
        let inverses = gens.iter().map(|m| m.transpose()).collect();
        let mut rep = MatrixRep {
            group,
            dim,
            gens,
            inverses,
            perm_words: HashMap::new(),
        };
        rep.check_relations()?;
        Ok(rep)
    }

    fn check_relations(&mut self) -> Result<(), RepError> {
        let tol = 10.0 * ORTHO_TOL;
        match &self.group {
            GroupSpec::Free { .. } => Ok(()),
            GroupSpec::ZPow { .. } => {
                for i in 0..self.gens.len() {
                    for j in i + 1..self.gens.len() {
                        let ab = self.gens[i].mul(&self.gens[j]);
                        let ba = self.gens[j].mul(&self.gens[i]);
                        if !ab.approx_eq(&ba, tol) {
                            return Err(RepError::NotHomomorphism(format!(
                                "images of {} and {} do not commute",
                                Letter::new(i, false),
                                Letter::new(j, false)
                            )));
                        }
                    }
                }
                Ok(())
            }
            GroupSpec::Perm { .. } => {
                let letters: Vec<Letter> = (0..self.gens.len())
                    .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
                    .collect();
                let id = match self.group.identity() {
                    GroupElem::Perm(p) => p,
                    _ => unreachable!(),
                };
                let mut images: HashMap<Perm, Mat<S>> = HashMap::new();
                let mut words: HashMap<Perm, Vec<Letter>> = HashMap::new();
                images.insert(id.clone(), Mat::identity(self.dim));
                words.insert(id.clone(), Vec::new());
                let mut queue = VecDeque::from([id]);
                while let Some(x) = queue.pop_front() {
                    for &l in &letters {
                        let s = match self.group.letter(l) {
                            GroupElem::Perm(p) => p,
                            _ => unreachable!(),
                        };
                        let y = x.compose(&s);
                        let m = images[&x].mul(self.letter_matrix(l));
                        match images.get(&y) {
                            Some(existing) => {
                                if !existing.approx_eq(&m, tol) {
                                    return Err(RepError::NotHomomorphism(format!(
                                        "two words for {} have different images",
                                        y.cycle_notation()
                                    )));
                                }
                            }
                            None => {
                                if images.len() >= DEFAULT_ORDER_CAP {
                                    return Err(RepError::NotHomomorphism(
                                        "group too large to verify".to_string(),
                                    ));
                                }
                                let mut w = words[&x].clone();
                                w.push(l);
                                words.insert(y.clone(), w);
                                images.insert(y.clone(), m);
                                queue.push_back(y);
                            }
                        }
                    }
                }
                self.perm_words = words;
                Ok(())
            }
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Mat<S>] {
        &self.gens
    }

    pub fn letter_matrix(&self, l: Letter) -> &Mat<S> {
        if l.inverse {
            &self.inverses[l.gen as usize]
        } else {
            &self.gens[l.gen as usize]
        }
    }

    /// A word `l_1 … l_k` with `g = l_1 ⋯ l_k`.
    pub fn word_for(&self, g: &GroupElem) -> Result<Vec<Letter>, RepError> {
        if !self.group.owns(g) {
            return Err(RepError::UnknownGenerator(g.to_string()));
        }
        match g {
            GroupElem::Word(w) => Ok(w.clone()),
            GroupElem::Vector(v) => Ok(v
                .iter()
                .enumerate()
                .flat_map(|(i, &n)| {
                    std::iter::repeat_n(Letter::new(i, n < 0), n.unsigned_abs() as usize)
                })
                .collect()),
            GroupElem::Perm(p) => self
                .perm_words
                .get(p)
                .cloned()
                .ok_or_else(|| RepError::UnknownGenerator(g.to_string())),
        }
    }

    /// `π_g` applied to dense coordinates.
    pub fn apply_dense(&self, g: &GroupElem, v: &[S]) -> Result<Vec<S>, RepError> {
        if v.len() != self.dim {
            return Err(RepError::DimensionMismatch(format!(
                "vector of length {} for a rep of dimension {}",
                v.len(),
                self.dim
            )));
        }
        let word = self.word_for(g)?;
        let mut out = v.to_vec();
        for &l in word.iter().rev() {
            out = self.letter_matrix(l).apply(&out);
        }
        Ok(out)
    }

    pub fn matrix_of(&self, g: &GroupElem) -> Result<Mat<S>, RepError> {
        let word = self.word_for(g)?;
        Ok(word
            .iter()
            .fold(Mat::identity(self.dim), |acc, &l| acc.mul(self.letter_matrix(l))))
    }

    /// Parses `gen <name>` headers each followed by `d` rows of `d` entries.
    pub fn parse(group: GroupSpec, text: &str) -> Result<Self, RepError> {
        let mut blocks: Vec<(String, Vec<Vec<S>>)> = Vec::new();
        for line in text.lines() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if let Some(name) = t.strip_prefix("gen") {
                blocks.push((name.trim().to_string(), Vec::new()));
                continue;
            }
            let row: Vec<S> = t
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    S::parse_scalar(s).ok_or_else(|| RepError::Parse {
                        what: "matrix entry",
                        input: s.to_string(),
                    })
                })
                .collect::<Result<_, _>>()?;
            match blocks.last_mut() {
                Some((_, rows)) => rows.push(row),
                None => {
                    return Err(RepError::Parse {
                        what: "matrix rep (missing gen header)",
                        input: line.to_string(),
                    })
                }
            }
        }
        let mut gens: Vec<Option<Mat<S>>> = vec![None; group.rank()];
        for (name, rows) in blocks {
            let mut chars = name.chars();
            let idx = match (chars.next(), chars.next()) {
                (Some(c), None) => crate::groups::GENERATOR_NAMES.chars().position(|x| x == c),
                _ => None,
            }
            .filter(|&i| i < group.rank())
            .ok_or_else(|| RepError::UnknownGenerator(name.clone()))?;
            gens[idx] = Some(Mat::from_rows(rows)?);
        }
        let gens = gens
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| RepError::UnknownGenerator(Letter::new(i, false).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(group, gens)
    }
}

/// A finite-dimensional unitary representation: generator images `A + iB`.
#[derive(Clone, Debug)]
pub struct ComplexMatrixRep<S: Scalar> {
    pub group: GroupSpec,
    pub gens: Vec<(Mat<S>, Mat<S>)>,
}

/// Realification: each entry `a + bi` becomes the block `[[a, −b], [b, a]]`.
/// Complex coordinate `j` maps to real coordinates `2j` (real part) and
/// `2j + 1` (imaginary part).
pub fn realify<S: Scalar>(unitary: &ComplexMatrixRep<S>) -> Result<MatrixRep<S>, RepError> {
    let mut real_gens = Vec::new();
    for (i, (a, b)) in unitary.gens.iter().enumerate() {
        let d = a.rows();
        if !a.is_square() || b.rows() != d || b.cols() != d {
            return Err(RepError::DimensionMismatch("complex generator shape".to_string()));
        }
        // (A + iB)*(A + iB) = AᵀA + BᵀB + i(AᵀB − BᵀA)
        let re = a.transpose().mul(a).add(&b.transpose().mul(b));
        let im = a.transpose().mul(b).sub(&b.transpose().mul(a));
        if !re.approx_eq(&Mat::identity(d), ORTHO_TOL) || !im.approx_eq(&Mat::zeros(d, d), ORTHO_TOL) {
            return Err(RepError::NotUnitary(Letter::new(i, false).to_string()));
        }
        let mut m = Mat::zeros(2 * d, 2 * d);
        for j in 0..d {
            for k in 0..d {
                let (x, y) = (a.get(j, k).clone(), b.get(j, k).clone());
                m.set(2 * j, 2 * k, x.clone());
                m.set(2 * j, 2 * k + 1, -y.clone());
                m.set(2 * j + 1, 2 * k, y);
                m.set(2 * j + 1, 2 * k + 1, x);
            }
        }
        real_gens.push(m);
    }
    MatrixRep::new(unitary.group.clone(), real_gens)
}

/// Real coordinates of a complex vector under [`realify`].
pub fn realify_vector<S: Scalar>(re: &[S], im: &[S]) -> Vec<S> {
    re.iter()
        .zip(im)
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect()
}
