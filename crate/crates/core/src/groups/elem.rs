//! Group elements and their parsing.

use std::fmt;

use super::GroupError;

/// Generator names in order; `e` is reserved for the identity.
pub const GENERATOR_NAMES: &str = "abcdfghijklmnopqrstuvwxyz";

/// A generator or its inverse. Orders as `a < a' < b < b' < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter {
            gen: gen as u16,
            inverse,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn name(self) -> char {
        GENERATOR_NAMES
            .chars()
            .nth(self.gen as usize)
            .unwrap_or('?')
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name(), if self.inverse { "'" } else { "" })
    }
}

pub(crate) fn generator_index(c: char) -> Option<usize> {
    GENERATOR_NAMES.chars().position(|x| x == c)
}

/// A permutation of `{0, …, n−1}` given by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `(self · other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &x in &self.0 {
            match seen.get_mut(x as usize) {
                Some(s) if !*s => *s = true,
                _ => return false,
            }
        }
        true
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` on `{0..n-1}`.
    pub fn from_cycles(n: usize, text: &str) -> Result<Perm, GroupError> {
        let err = || GroupError::Parse {
            what: "permutation in cycle notation",
            input: text.to_string(),
        };
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut rest = text.trim();
        if rest.is_empty() || rest == "()" {
            return Ok(Perm(images));
        }
        let mut seen = vec![false; n];
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(err)?;
            let close = open.find(')').ok_or_else(err)?;
            let cycle: Result<Vec<usize>, _> = open[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>())
                .collect();
            let cycle = cycle.map_err(|_| err())?;
            for &x in &cycle {
                if x >= n || seen[x] {
                    return Err(err());
                }
                seen[x] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(Perm(images))
    }

    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.0[start] as usize;
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.0[x] as usize;
            }
            let parts: Vec<String> = cyc.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("({})", parts.join(" ")));
        }
        if out.is_empty() {
            "()".to_string()
        } else {
            out
        }
    }
}

/// Canonical element forms: reduced words (free groups), integer vectors
/// (`Z^d`) and permutations. Each element has exactly one encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    Word(Vec<Letter>),
    Vector(Vec<i64>),
    Perm(Perm),
}

impl GroupElem {
    pub fn is_identity(&self) -> bool {
        match self {
            GroupElem::Word(w) => w.is_empty(),
            GroupElem::Vector(v) => v.iter().all(|&x| x == 0),
            GroupElem::Perm(p) => p.is_identity(),
        }
    }

    /// Freely reduces a word.
    pub fn reduced_word(letters: impl IntoIterator<Item = Letter>) -> GroupElem {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupElem::Word(out)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        match self {
            GroupElem::Word(w) => {
                let parts: Vec<String> = w.iter().map(|l| l.to_string()).collect();
                write!(f, "{}", parts.join(" "))
            }
            GroupElem::Vector(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| {
                        let name = Letter::new(i, false).name();
                        match x {
                            1 => name.to_string(),
                            -1 => format!("{name}'"),
                            _ => format!("{name}^{x}"),
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join(" "))
            }
            GroupElem::Perm(p) => write!(f, "{}", p.cycle_notation()),
        }
    }
}
