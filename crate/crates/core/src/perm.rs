//! Permutations of `{0, .., n-1}` and generated groups.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}` stored by its images.
///
/// Composition follows function notation: `a.compose(&b)` is `a ∘ b`, i.e.
/// `x ↦ a(b(x))`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if !is_bijection(&images) {
            return Err(Error::MalformedTable(format!(
                "{images:?} is not a permutation"
            )));
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= n || seen[a] {
                    return Err(Error::MalformedTable(format!("bad cycle {cycle:?}")));
                }
                seen[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1usize, |acc, c| acc.lcm(&c.len()))
    }

    /// Disjoint cycles (including fixed points), each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Relabels by `g`: returns `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation with 1-based points, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub(crate) fn is_bijection(images: &[usize]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    for &y in images {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

/// The subgroup of `Sym(n)` generated by `gens`, as a sorted set.
///
/// Finite, so closure under composition with generators suffices.
pub fn generate_group(n: usize, gens: &[Permutation]) -> BTreeSet<Permutation> {
    let mut group = BTreeSet::new();
    let id = Permutation::identity(n);
    group.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&g);
            if group.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    group
}

/// Exponent of a finite group: the lcm of its element orders.
pub fn exponent<'a>(group: impl IntoIterator<Item = &'a Permutation>) -> usize {
    group.into_iter().fold(1usize, |acc, g| acc.lcm(&g.order()))
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    use itertools::Itertools;
    (0..n).permutations(n).map(Permutation)
}
