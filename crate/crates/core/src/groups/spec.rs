//! Group specifications and their operations.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::elem::{generator_index, GroupElem, Letter, Perm};
use super::GroupError;

/// Default cap on the order of an enumerated permutation group.
pub const DEFAULT_ORDER_CAP: usize = 1 << 20;

/// A finitely generated group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Free { rank: usize },
    ZPow { dim: usize },
    Perm { degree: usize, gens: Vec<Perm> },
}

impl GroupSpec {
    pub fn free(rank: usize) -> Self {
        GroupSpec::Free { rank }
    }

    pub fn zpow(dim: usize) -> Self {
        GroupSpec::ZPow { dim }
    }

    pub fn perm(degree: usize, gens: Vec<Perm>) -> Result<Self, GroupError> {
        for g in &gens {
            if g.degree() != degree || !g.is_bijection() {
                return Err(GroupError::ForeignElement(format!("{:?}", g.0)));
            }
        }
        Ok(GroupSpec::Perm { degree, gens })
    }

    /// `Z/n` as the cyclic permutation group generated by `(0 1 … n−1)`.
    pub fn cyclic(n: usize) -> Self {
        let images = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        GroupSpec::Perm {
            degree: n,
            gens: vec![Perm(images)],
        }
    }

    /// Number of named generators.
    pub fn rank(&self) -> usize {
        match self {
            GroupSpec::Free { rank } => *rank,
            GroupSpec::ZPow { dim } => *dim,
            GroupSpec::Perm { gens, .. } => gens.len(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupSpec::Perm { .. })
    }

    pub fn identity(&self) -> GroupElem {
        match self {
            GroupSpec::Free { .. } => GroupElem::Word(Vec::new()),
            GroupSpec::ZPow { dim } => GroupElem::Vector(vec![0; *dim]),
            GroupSpec::Perm { degree, .. } => GroupElem::Perm(Perm::identity(*degree)),
        }
    }

    /// The element named by a single letter.
    pub fn letter(&self, l: Letter) -> GroupElem {
        let i = l.gen as usize;
        match self {
            GroupSpec::Free { .. } => GroupElem::Word(vec![l]),
            GroupSpec::ZPow { dim } => {
                let mut v = vec![0; *dim];
                v[i] = if l.inverse { -1 } else { 1 };
                GroupElem::Vector(v)
            }
            GroupSpec::Perm { gens, .. } => {
                let p = &gens[i];
                GroupElem::Perm(if l.inverse { p.inverse() } else { p.clone() })
            }
        }
    }

    /// Generators and their inverses, `a, a', b, b', …`, without repeats.
    pub fn standard_generators(&self) -> Vec<GroupElem> {
        let mut out: Vec<GroupElem> = Vec::new();
        for i in 0..self.rank() {
            for inverse in [false, true] {
                let g = self.letter(Letter::new(i, inverse));
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// Whether `g` has the canonical form of an element of this group.
    /// For permutation groups this only checks the degree; use
    /// [`GroupSpec::elements`] for membership.
    pub fn owns(&self, g: &GroupElem) -> bool {
        match (self, g) {
            (GroupSpec::Free { rank }, GroupElem::Word(w)) => {
                w.iter().all(|l| (l.gen as usize) < *rank)
                    && w.windows(2).all(|p| p[0] != p[1].inv())
            }
            (GroupSpec::ZPow { dim }, GroupElem::Vector(v)) => v.len() == *dim,
            (GroupSpec::Perm { degree, .. }, GroupElem::Perm(p)) => {
                p.degree() == *degree && p.is_bijection()
            }
            _ => false,
        }
    }

    fn check(&self, g: &GroupElem) -> Result<(), GroupError> {
        if self.owns(g) {
            Ok(())
        } else {
            Err(GroupError::ForeignElement(g.to_string()))
        }
    }

    pub fn multiply(&self, g: &GroupElem, h: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(match (g, h) {
            (GroupElem::Word(a), GroupElem::Word(b)) => {
                GroupElem::reduced_word(a.iter().chain(b.iter()).copied())
            }
            (GroupElem::Vector(a), GroupElem::Vector(b)) => {
                GroupElem::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupElem::Perm(a), GroupElem::Perm(b)) => GroupElem::Perm(a.compose(b)),
            _ => unreachable!("checked above"),
        })
    }

    pub fn inverse(&self, g: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check(g)?;
        Ok(match g {
            GroupElem::Word(w) => GroupElem::Word(w.iter().rev().map(|l| l.inv()).collect()),
            GroupElem::Vector(v) => GroupElem::Vector(v.iter().map(|x| -x).collect()),
            GroupElem::Perm(p) => GroupElem::Perm(p.inverse()),
        })
    }

    /// Evaluates a word such as `a b' a`, `a^3 b^-2` or `e`. Permutation
    /// groups also accept cycle notation such as `(0 1)(2 3)`.
    pub fn parse_elem(&self, text: &str) -> Result<GroupElem, GroupError> {
        let t = text.trim();
        if let GroupSpec::Perm { degree, .. } = self {
            if t.starts_with('(') {
                return Perm::from_cycles(*degree, t).map(GroupElem::Perm);
            }
        }
        let err = || GroupError::Parse {
            what: "group word",
            input: text.to_string(),
        };
        let mut acc = self.identity();
        for tok in t.split_whitespace() {
            if tok == "e" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| err())?),
                None => (tok, 1),
            };
            let mut chars = base.chars();
            let c = chars.next().ok_or_else(err)?;
            let primes = chars.clone().filter(|&ch| ch == '\'').count();
            if chars.any(|ch| ch != '\'') || primes > 1 {
                return Err(err());
            }
            let idx = generator_index(c).ok_or_else(err)?;
            if idx >= self.rank() {
                return Err(err());
            }
            let inverse = (primes == 1) != (exp < 0);
            let letter = self.letter(Letter::new(idx, inverse));
            for _ in 0..exp.unsigned_abs() {
                acc = self.multiply(&acc, &letter)?;
            }
        }
        Ok(acc)
    }

    /// All elements of a permutation group, in BFS order from the identity.
    pub fn elements(&self, cap: usize) -> Result<Vec<GroupElem>, GroupError> {
        let gens = self.standard_generators();
        closure(self, &gens, cap)
    }

    /// Group order of a permutation group; `None` for infinite groups.
    pub fn order(&self, cap: usize) -> Result<Option<usize>, GroupError> {
        if !self.is_finite() {
            return Ok(None);
        }
        Ok(Some(self.elements(cap)?.len()))
    }
}

/// Subgroup generated by `gens`, BFS from the identity.
pub(crate) fn closure(
    group: &GroupSpec,
    gens: &[GroupElem],
    cap: usize,
) -> Result<Vec<GroupElem>, GroupError> {
    let id = group.identity();
    let mut seen: HashSet<GroupElem> = HashSet::new();
    let mut order = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = group.multiply(&x, s)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(GroupError::OrderTooLarge(cap));
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// `free:k`, `z:d` or `perm:n:<cycles>,<cycles>,…`; an optional
    /// `group =` prefix is accepted.
    fn from_str(text: &str) -> Result<Self, GroupError> {
        let err = || GroupError::Parse {
            what: "group spec",
            input: text.to_string(),
        };
        let mut t = text.trim();
        if let Some(rest) = t.strip_prefix("group") {
            if let Some(rest) = rest.trim_start().strip_prefix('=') {
                t = rest.trim();
            }
        }
        let mut parts = t.splitn(3, ':');
        let kind = parts.next().ok_or_else(err)?.trim();
        let n: usize = parts
            .next()
            .ok_or_else(err)?
            .trim()
            .parse()
            .map_err(|_| err())?;
        if n == 0 {
            return Err(err());
        }
        match kind {
            "free" => Ok(GroupSpec::free(n)),
            "z" => Ok(GroupSpec::zpow(n)),
            "perm" => {
                let gens_text = parts.next().unwrap_or("").trim();
                let mut gens = Vec::new();
                for g in gens_text.split(',').map(str::trim).filter(|g| !g.is_empty()) {
                    gens.push(Perm::from_cycles(n, g)?);
                }
                if gens.is_empty() {
                    return Err(err());
                }
                GroupSpec::perm(n, gens)
            }
            _ => Err(err()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Free { rank } => write!(f, "free:{rank}"),
            GroupSpec::ZPow { dim } => write!(f, "z:{dim}"),
            GroupSpec::Perm { degree, gens } => {
                let g: Vec<String> = gens.iter().map(|p| p.cycle_notation()).collect();
                write!(f, "perm:{degree}:{}", g.join(","))
            }
        }
    }
}
