//! Cayley balls by breadth-first enumeration.

use std::collections::HashMap;

use super::elem::GroupElem;
use super::spec::GroupSpec;
use super::GroupError;

/// Default cap on the number of elements in an enumerated ball.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;

/// The Cayley ball `B_r`, ordered by word length and then by canonical form.
/// Index 0 is the identity.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    radius: usize,
    elems: Vec<GroupElem>,
    index: HashMap<GroupElem, usize>,
    layer_ends: Vec<usize>,
}

impl CayleyBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[GroupElem] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &GroupElem {
        &self.elems[i]
    }

    pub fn position(&self, g: &GroupElem) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Number of elements of word length exactly `k`, for `k = 0..=radius`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        self.layer_ends
            .iter()
            .map(|&end| {
                let n = end - prev;
                prev = end;
                n
            })
            .collect()
    }

    /// Word length of the element at index `i`.
    pub fn length_of(&self, i: usize) -> usize {
        self.layer_ends.partition_point(|&end| end <= i)
    }
}

/// Breadth-first enumeration of all elements of word length at most `r`
/// with respect to the symmetric generating set `gens`.
pub fn cayley_ball(
    group: &GroupSpec,
    gens: &[GroupElem],
    r: usize,
    cap: usize,
) -> Result<CayleyBall, GroupError> {
    for g in gens {
        let inv = group.inverse(g)?;
        if !gens.contains(&inv) {
            return Err(GroupError::AsymmetricGenerators);
        }
    }
    let id = group.identity();
    let mut elems = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut layer_ends = vec![1];
    let mut start = 0;
    for radius in 1..=r {
        let end = elems.len();
        let mut layer = Vec::new();
        for i in start..end {
            for s in gens {
                let y = group.multiply(&elems[i], s)?;
                if !index.contains_key(&y) {
                    index.insert(y.clone(), usize::MAX);
                    layer.push(y);
                }
            }
        }
        if end + layer.len() > cap {
            return Err(GroupError::BallTooLarge { radius, cap });
        }
        layer.sort();
        for y in layer {
            index.insert(y.clone(), elems.len());
            elems.push(y);
        }
        layer_ends.push(elems.len());
        start = end;
    }
    Ok(CayleyBall {
        radius: r,
        elems,
        index,
        layer_ends,
    })
}
