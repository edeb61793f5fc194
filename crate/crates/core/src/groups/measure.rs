//! Symmetric generating probability measures.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elem::GroupElem;
use super::spec::{closure, GroupSpec, DEFAULT_ORDER_CAP};
use super::GroupError;
use crate::exactalg::{parse_rational, Rational};

/// A finitely supported measure on a group with exact rational weights.
/// Construction merges duplicate support entries; [`validate_measure`]
/// checks the probability, symmetry and generation conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMeasure {
    support: Vec<(GroupElem, Rational)>,
}

impl GenMeasure {
    pub fn new(entries: impl IntoIterator<Item = (GroupElem, Rational)>) -> Self {
        let mut merged: BTreeMap<GroupElem, Rational> = BTreeMap::new();
        for (g, w) in entries {
            *merged.entry(g).or_insert_with(Rational::zero) += w;
        }
        GenMeasure {
            support: merged.into_iter().collect(),
        }
    }

    /// Uniform weight `1/(|S|+1)` on the identity and the standard
    /// symmetric generators.
    pub fn lazy_uniform(group: &GroupSpec) -> Self {
        let mut elems = vec![group.identity()];
        for g in group.standard_generators() {
            if !elems.contains(&g) {
                elems.push(g);
            }
        }
        let w = Rational::new(1.into(), (elems.len() as i64).into());
        GenMeasure::new(elems.into_iter().map(|g| (g, w.clone())))
    }

    /// Parses lines `elem weight`, e.g. `a b' 1/5`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse(group: &GroupSpec, text: &str) -> Result<Self, GroupError> {
        let mut entries = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (elem, weight) = line.rsplit_once(char::is_whitespace).ok_or_else(|| {
                GroupError::Parse {
                    what: "measure line",
                    input: line.to_string(),
                }
            })?;
            let w = parse_rational(weight).map_err(|_| GroupError::Parse {
                what: "measure weight",
                input: weight.to_string(),
            })?;
            entries.push((group.parse_elem(elem)?, w));
        }
        Ok(GenMeasure::new(entries))
    }

    /// Support entries in canonical-form order.
    pub fn support(&self) -> &[(GroupElem, Rational)] {
        &self.support
    }

    /// Support entries other than the identity.
    pub fn non_identity(&self) -> impl Iterator<Item = &(GroupElem, Rational)> {
        self.support.iter().filter(|(g, _)| !g.is_identity())
    }

    pub fn weight(&self, g: &GroupElem) -> Rational {
        self.support
            .iter()
            .find(|(h, _)| h == g)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn identity_weight(&self) -> Rational {
        self.support
            .iter()
            .find(|(h, _)| h.is_identity())
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Smallest weight over the whole support, identity included.
    pub fn min_weight(&self) -> Rational {
        self.support
            .iter()
            .map(|(_, w)| w.clone())
            .min()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total(&self) -> Rational {
        self.support.iter().map(|(_, w)| w.clone()).sum()
    }

    /// Support as `(element, f64 weight)`.
    pub fn weights_f64(&self) -> Vec<(GroupElem, f64)> {
        self.support
            .iter()
            .map(|(g, w)| (g.clone(), w.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }
}

impl fmt::Display for GenMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, w) in &self.support {
            writeln!(f, "{g} {w}")?;
        }
        Ok(())
    }
}

/// Checks that `mu` is a symmetric probability measure charging the
/// identity whose support generates `group`. Free groups and `Z^d` require
/// the support minus the identity to be exactly the standard generators.
pub fn validate_measure(group: &GroupSpec, mu: &GenMeasure) -> Result<GenMeasure, GroupError> {
    for (g, _) in mu.support() {
        if !group.owns(g) {
            return Err(GroupError::ForeignElement(g.to_string()));
        }
    }
    let sum = mu.total();
    if mu.support().iter().any(|(_, w)| !w.is_positive()) {
        return Err(GroupError::NotProbability {
            sum: sum.to_string(),
        });
    }
    if !mu.identity_weight().is_positive() {
        return Err(GroupError::MissingIdentity);
    }
    for (g, w) in mu.support() {
        if mu.weight(&group.inverse(g)?) != *w {
            return Err(GroupError::NotSymmetric { elem: g.to_string() });
        }
    }
    if !sum.is_one() {
        return Err(GroupError::NotProbability {
            sum: sum.to_string(),
        });
    }
    let support: Vec<GroupElem> = mu.non_identity().map(|(g, _)| g.clone()).collect();
    match group {
        GroupSpec::Free { .. } | GroupSpec::ZPow { .. } => {
            let mut want = group.standard_generators();
            let mut have = support;
            want.sort();
            have.sort();
            if want != have {
                return Err(GroupError::NotGenerating {
                    reason: "support must consist of the identity and the standard generators"
                        .to_string(),
                });
            }
        }
        GroupSpec::Perm { .. } => {
            let whole = group.elements(DEFAULT_ORDER_CAP)?;
            if let Some(g) = support.iter().find(|g| !whole.contains(g)) {
                return Err(GroupError::ForeignElement(g.to_string()));
            }
            let generated = closure(group, &support, DEFAULT_ORDER_CAP)?;
            if generated.len() < whole.len() {
                return Err(GroupError::NotGenerating {
                    reason: format!(
                        "support generates a subgroup of order {} in a group of order {}",
                        generated.len(),
                        whole.len()
                    ),
                });
            }
        }
    }
    Ok(mu.clone())
}
