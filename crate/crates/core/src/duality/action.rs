//! Automorphism actions with their fixed-point counts and conjugacy transport.

use std::collections::{HashMap, VecDeque};

use super::abelian::{enumerate_dual, Character, FiniteAbelian};
use super::DualityError;
use crate::groups::{GroupElem, GroupSpec, Letter, Perm};

/// Integer matrix, one inner vector per row.
pub type IntMatrix = Vec<Vec<i64>>;

/// A homomorphism between finite abelian groups, stored by the images of the
/// standard basis vectors of its domain.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Hom {
    images: Vec<Vec<u64>>,
}

impl Hom {
    /// Column `j` of `m`, reduced modulo the target factors, is the image of
    /// `e_j`; it must be killed by the source factor `n_j`.
    fn from_matrix(m: &IntMatrix, source: &FiniteAbelian, target: &FiniteAbelian) -> Result<Self, DualityError> {
        let (r, c) = (target.rank(), source.rank());
        if m.len() != r || m.iter().any(|row| row.len() != c) {
            return Err(DualityError::NotWellDefined(format!(
                "expected a {r}x{c} matrix"
            )));
        }
        let mut images = Vec::with_capacity(c);
        for j in 0..c {
            let col: Vec<u64> = (0..r)
                .map(|i| m[i][j].rem_euclid(target.factors()[i] as i64) as u64)
                .collect();
            let nj = source.factors()[j];
            let killed = col
                .iter()
                .zip(target.factors())
                .all(|(&x, &n)| (x as u128 * nj as u128) % n as u128 == 0);
            if !killed {
                return Err(DualityError::NotWellDefined(format!(
                    "column {j} has order not dividing {nj}"
                )));
            }
            images.push(col);
        }
        Ok(Hom { images })
    }

    fn identity(a: &FiniteAbelian) -> Self {
        Hom {
            images: (0..a.rank()).map(|j| a.basis(j)).collect(),
        }
    }

    fn apply(&self, target: &FiniteAbelian, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; target.rank()];
        for (xj, img) in x.iter().zip(&self.images) {
            for ((o, &v), &n) in out.iter_mut().zip(img).zip(target.factors()) {
                *o = ((*o as u128 + *xj as u128 * v as u128) % n as u128) as u64;
            }
        }
        out
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Hom, target: &FiniteAbelian) -> Hom {
        Hom {
            images: other.images.iter().map(|y| self.apply(target, y)).collect(),
        }
    }

    /// Brute-force inverse of a bijection `source → target`, or the first
    /// collision.
    fn invert(&self, source: &FiniteAbelian, target: &FiniteAbelian) -> Result<Hom, String> {
        if source.order() != target.order() {
            return Err(format!("orders {} and {} differ", source.order(), target.order()));
        }
        let mut seen = vec![false; target.order()];
        let mut inverse: Vec<Option<Vec<u64>>> = vec![None; target.rank()];
        for x in source.elements() {
            let y = self.apply(target, &x);
            let idx = target.index_of(&y);
            if seen[idx] {
                return Err(format!("two elements map to {y:?}"));
            }
            seen[idx] = true;
            if let Some(j) = (0..target.rank()).find(|&j| y == target.basis(j)) {
                inverse[j] = Some(x);
            }
        }
        Ok(Hom {
            images: inverse.into_iter().map(|x| x.expect("bijection hits the basis")).collect(),
        })
    }

    /// `χ ∘ self` as a character of the source.
    fn pull_back(&self, chi: &Character, source: &FiniteAbelian, target: &FiniteAbelian) -> Character {
        // Scaled values over the target exponent, rescaled to the source exponent.
        let (nt, ns) = (target.exponent(), source.exponent());
        // χ(h e_j) is killed by n_j, which divides n_s, so the rescaling is exact.
        let values: Vec<u64> = self
            .images
            .iter()
            .map(|img| (chi.eval_scaled(target, img) as u128 * ns as u128 / nt as u128) as u64)
            .collect();
        Character::from_basis_values(source, &values)
    }
}

/// A group acting on a finite abelian group by automorphisms, given by one
/// integer matrix per generator.
#[derive(Clone, Debug)]
pub struct AutoAction {
    group: GroupSpec,
    a: FiniteAbelian,
    matrices: Vec<IntMatrix>,
    maps: Vec<Hom>,
    inverses: Vec<Hom>,
}

impl AutoAction {
    /// Checks well-definedness, bijectivity (brute force) and the group's
    /// relations: commutation for `Z^d`, and consistency over the Cayley
    /// graph for permutation groups.
    pub fn new(group: GroupSpec, a: FiniteAbelian, matrices: Vec<IntMatrix>) -> Result<Self, DualityError> {
        if matrices.len() != group.rank() {
            return Err(DualityError::NotHomomorphism(format!(
                "{} generator maps for a group of rank {}",
                matrices.len(),
                group.rank()
            )));
        }
        let mut maps = Vec::new();
        let mut inverses = Vec::new();
        for (i, m) in matrices.iter().enumerate() {
            let h = Hom::from_matrix(m, &a, &a)?;
            let inv = h.invert(&a, &a).map_err(|e| {
                DualityError::NotAutomorphism(format!("generator {}: {e}", Letter::new(i, false)))
            })?;
            maps.push(h);
            inverses.push(inv);
        }
        let act = AutoAction {
            group,
            a,
            matrices,
            maps,
            inverses,
        };
        act.check_relations()?;
        Ok(act)
    }

    /// `z:1` for a single generator map, `free:k` otherwise.
    pub fn with_default_group(a: FiniteAbelian, matrices: Vec<IntMatrix>) -> Result<Self, DualityError> {
        let group = if matrices.len() == 1 {
            GroupSpec::zpow(1)
        } else {
            GroupSpec::free(matrices.len().max(1))
        };
        Self::new(group, a, matrices)
    }

    fn letter_map(&self, l: Letter) -> &Hom {
        let i = l.gen as usize;
        if l.inverse {
            &self.inverses[i]
        } else {
            &self.maps[i]
        }
    }

    fn check_relations(&self) -> Result<(), DualityError> {
        match &self.group {
            GroupSpec::Free { .. } => Ok(()),
            GroupSpec::ZPow { .. } => {
                for i in 0..self.maps.len() {
                    for j in i + 1..self.maps.len() {
                        let ab = self.maps[i].compose(&self.maps[j], &self.a);
                        let ba = self.maps[j].compose(&self.maps[i], &self.a);
                        if ab != ba {
                            return Err(DualityError::NotHomomorphism(format!(
                                "maps of {} and {} do not commute",
                                Letter::new(i, false),
                                Letter::new(j, false)
                            )));
                        }
                    }
                }
                Ok(())
            }
            GroupSpec::Perm { .. } => {
                let GroupElem::Perm(id) = self.group.identity() else { unreachable!() };
                let letters: Vec<Letter> = (0..self.maps.len())
                    .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
                    .collect();
                let mut images: HashMap<Perm, Hom> = HashMap::from([(id.clone(), Hom::identity(&self.a))]);
                let mut queue = VecDeque::from([id]);
                while let Some(x) = queue.pop_front() {
                    for &l in &letters {
                        let GroupElem::Perm(s) = self.group.letter(l) else { unreachable!() };
                        let y = x.compose(&s);
                        let m = images[&x].compose(self.letter_map(l), &self.a);
                        match images.get(&y) {
                            Some(existing) if *existing != m => {
                                return Err(DualityError::NotHomomorphism(format!(
                                    "two words for {} act differently",
                                    y.cycle_notation()
                                )))
                            }
                            Some(_) => {}
                            None => {
                                images.insert(y.clone(), m);
                                queue.push_back(y);
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn abelian(&self) -> &FiniteAbelian {
        &self.a
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn generator_count(&self) -> usize {
        self.maps.len()
    }

    pub fn apply(&self, l: Letter, x: &[u64]) -> Vec<u64> {
        self.letter_map(l).apply(&self.a, x)
    }

    /// `(gχ)(x) = χ(g^{-1}x)`.
    pub fn dual_apply(&self, l: Letter, chi: &Character) -> Character {
        self.letter_map(l.inv()).pull_back(chi, &self.a, &self.a)
    }
}

/// `(#fixed elements, #fixed characters)` under all generators, by brute force.
pub fn fixed_counts(act: &AutoAction) -> (usize, usize) {
    let a = act.abelian();
    let gens: Vec<Letter> = (0..act.generator_count()).map(|i| Letter::new(i, false)).collect();
    let elements = a
        .elements()
        .filter(|x| gens.iter().all(|&l| act.apply(l, x) == *x))
        .count();
    let characters = enumerate_dual(a)
        .into_iter()
        .filter(|chi| gens.iter().all(|&l| act.dual_apply(l, chi) == *chi))
        .count();
    (elements, characters)
}

/// `ξ^* χ = χ ∘ ξ^{-1}` for an intertwining isomorphism `ξ: A → A'`.
#[derive(Clone, Debug)]
pub struct DualTransport {
    source: FiniteAbelian,
    target: FiniteAbelian,
    xi_inverse: Hom,
    /// Number of `(χ, g)` pairs on which `ξ^*(gχ) = g(ξ^*χ)` was verified.
    pub verified: usize,
}

impl DualTransport {
    pub fn apply(&self, chi: &Character) -> Character {
        self.xi_inverse.pull_back(chi, &self.target, &self.source)
    }
}

pub fn dual_conjugacy_transport(
    xi: &IntMatrix,
    act: &AutoAction,
    act2: &AutoAction,
) -> Result<DualTransport, DualityError> {
    let (a, b) = (act.abelian(), act2.abelian());
    if act.group() != act2.group() {
        return Err(DualityError::NotIntertwining(
            "actions of different groups".to_string(),
        ));
    }
    let h = Hom::from_matrix(xi, a, b)?;
    let h_inv = h.invert(a, b).map_err(DualityError::NotIsomorphism)?;
    let letters: Vec<Letter> = (0..act.generator_count()).map(|i| Letter::new(i, false)).collect();
    for x in a.elements() {
        for &l in &letters {
            if h.apply(b, &act.apply(l, &x)) != act2.apply(l, &h.apply(b, &x)) {
                return Err(DualityError::NotIntertwining(format!("x = {x:?}, generator {l}")));
            }
        }
    }
    let transport = DualTransport {
        source: a.clone(),
        target: b.clone(),
        xi_inverse: h_inv,
        verified: 0,
    };
    let mut seen = vec![false; b.order()];
    let mut verified = 0;
    for chi in enumerate_dual(a) {
        let image = transport.apply(&chi);
        let idx = b.index_of(&image.coeffs);
        if seen[idx] {
            return Err(DualityError::NotIsomorphism(format!("dual map collides at {image}")));
        }
        seen[idx] = true;
        for &l in &letters {
            if transport.apply(&act.dual_apply(l, &chi)) != act2.dual_apply(l, &image) {
                return Err(DualityError::NotIntertwining(format!("character {chi}, generator {l}")));
            }
            verified += 1;
        }
    }
    Ok(DualTransport { verified, ..transport })
}

/// Integer matrices, one row per line, `--` between matrices.
pub fn parse_matrices(text: &str) -> Result<Vec<IntMatrix>, DualityError> {
    let mut out = Vec::new();
    let mut current: IntMatrix = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if t.starts_with('#') {
            continue;
        }
        if t == "--" {
            out.push(std::mem::take(&mut current));
            continue;
        }
        if t.is_empty() {
            continue;
        }
        let row = t
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<i64>().map_err(|_| DualityError::Parse {
                    what: "matrix entry",
                    input: s.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        current.push(row);
    }
    if !current.is_empty() || out.is_empty() {
        out.push(current);
    }
    Ok(out)
}
