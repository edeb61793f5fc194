//! Sparse labelled vectors and the pairings between them.

use std::collections::BTreeMap;
use std::fmt;

use super::{RepError, Scalar};
use crate::exactalg::TorusValue;
use crate::groups::GroupElem;

/// Basis label: a coordinate index (matrix reps) or a group element
/// (regular reps).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Index(usize),
    Elem(GroupElem),
}

impl Label {
    fn same_kind(&self, other: &Label) -> bool {
        matches!(
            (self, other),
            (Label::Index(_), Label::Index(_)) | (Label::Elem(_), Label::Elem(_))
        )
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Index(i) => write!(f, "{i}"),
            Label::Elem(g) => write!(f, "{g}"),
        }
    }
}

/// A finitely supported vector. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorH<S: Scalar> {
    entries: BTreeMap<Label, S>,
}

impl<S: Scalar> Default for VectorH<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> VectorH<S> {
    pub fn zero() -> Self {
        VectorH {
            entries: BTreeMap::new(),
        }
    }

    pub fn from_dense(coords: &[S]) -> Self {
        let mut v = Self::zero();
        for (i, c) in coords.iter().enumerate() {
            v.set(Label::Index(i), c.clone());
        }
        v
    }

    pub fn basis(label: Label) -> Self {
        let mut v = Self::zero();
        v.set(label, S::one());
        v
    }

    pub fn basis_index(i: usize) -> Self {
        Self::basis(Label::Index(i))
    }

    pub fn basis_elem(g: GroupElem) -> Self {
        Self::basis(Label::Elem(g))
    }

    pub fn get(&self, label: &Label) -> S {
        self.entries.get(label).cloned().unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, label: Label, value: S) {
        if value.is_zero() {
            self.entries.remove(&label);
        } else {
            self.entries.insert(label, value);
        }
    }

    /// Adds `value` to the coordinate at `label`.
    pub fn add_at(&mut self, label: Label, value: S) {
        let cur = self.get(&label);
        self.set(label, cur + value);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Label, &S)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest index label plus one; zero for vectors without index labels.
    pub fn index_extent(&self) -> usize {
        self.entries
            .keys()
            .filter_map(|l| match l {
                Label::Index(i) => Some(i + 1),
                Label::Elem(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    fn kind(&self) -> Option<&Label> {
        self.entries.keys().next()
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<(), RepError> {
        match (self.kind(), other.kind()) {
            (Some(a), Some(b)) if !a.same_kind(b) => Err(RepError::DimensionMismatch(
                "vectors live on different basis label spaces".to_string(),
            )),
            _ => Ok(()),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (l, x) in &self.entries {
            out.set(l.clone(), x.clone() * c.clone());
        }
        out
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &S, other: &Self) -> Result<Self, RepError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (l, x) in &other.entries {
            out.add_at(l.clone(), x.clone() * c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, RepError> {
        self.axpy(&S::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RepError> {
        self.axpy(&-S::one(), other)
    }

    pub fn norm_sq(&self) -> S {
        self.entries
            .values()
            .fold(S::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().to_float().sqrt()
    }

    /// Dense coordinates `0..dim` of an index-labelled vector.
    pub fn to_dense(&self, dim: usize) -> Result<Vec<S>, RepError> {
        let mut out = vec![S::zero(); dim];
        for (l, x) in &self.entries {
            match l {
                Label::Index(i) if *i < dim => out[*i] = x.clone(),
                _ => {
                    return Err(RepError::DimensionMismatch(format!(
                        "label {l} outside dimension {dim}"
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn to_f64(&self) -> VectorH<f64> {
        let mut out = VectorH::zero();
        for (l, x) in &self.entries {
            out.set(l.clone(), x.to_float());
        }
        out
    }

    /// Parses lines `label<TAB>coefficient`; `label` is interpreted by
    /// `parse_label`. Lines starting with `#` are ignored.
    pub fn parse(
        text: &str,
        mut parse_label: impl FnMut(&str) -> Result<Label, RepError>,
    ) -> Result<Self, RepError> {
        let mut v = Self::zero();
        for line in text.lines() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (label, value) = match line.split_once('\t') {
                Some(p) => p,
                None => t.rsplit_once(char::is_whitespace).ok_or_else(|| RepError::Parse {
                    what: "vector line",
                    input: line.to_string(),
                })?,
            };
            let x = S::parse_scalar(value.trim()).ok_or_else(|| RepError::Parse {
                what: "vector coefficient",
                input: value.to_string(),
            })?;
            v.add_at(parse_label(label.trim())?, x);
        }
        Ok(v)
    }
}

impl<S: Scalar> fmt::Display for VectorH<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, x) in &self.entries {
            writeln!(f, "{l}\t{x}")?;
        }
        Ok(())
    }
}

/// Standard real inner product.
pub fn inner<S: Scalar>(v: &VectorH<S>, w: &VectorH<S>) -> Result<S, RepError> {
    v.check_compatible(w)?;
    let (small, large) = if v.nnz() <= w.nnz() { (v, w) } else { (w, v) };
    Ok(small.entries.iter().fold(S::zero(), |acc, (l, x)| match large.entries.get(l) {
        Some(y) => acc + x.clone() * y.clone(),
        None => acc,
    }))
}

/// `σ_v(w) = ⟨v, w⟩ mod 1`.
pub fn sigma_eval<S: Scalar>(v: &VectorH<S>, w: &VectorH<S>) -> Result<TorusValue, RepError> {
    Ok(inner(v, w)?.to_torus())
}
