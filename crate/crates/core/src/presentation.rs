//! Quadratic presentations `xy = f(x, y)` of the derived monoid (kind A) and
//! the structure monoid (kind M) of a solution.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::sigma::{sigma_system, SigmaSystem};
use crate::solution::Solution;
use crate::subset::Subset;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// Relations `xz = z σ_z(x)`.
    A,
    /// Relations `xy = λ_x(y) ρ_y(x)`.
    M,
}

/// A graded presentation given by a bijective pair map `(x, y) ↦ (u, v)`;
/// the relations are `xy = uv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    kind: Kind,
    n: usize,
    pair: Vec<(usize, usize)>,
    sigma: Option<Vec<Permutation>>,
}

impl Presentation {
    /// Kind A presentation of `sol`.
    pub fn derived(sol: &Solution) -> Result<Presentation> {
        Ok(Presentation::derived_from_sigma(&sigma_system(sol)?))
    }

    pub fn derived_from_sigma(sys: &SigmaSystem) -> Presentation {
        Presentation::from_sigmas(&sys.sigma)
    }

    /// Kind A presentation for an arbitrary family of permutations `σ_z`,
    /// `xz = z σ_z(x)`.
    pub fn from_sigmas(sigma: &[Permutation]) -> Presentation {
        let n = sigma.len();
        let pair = (0..n * n)
            .map(|i| {
                let (x, z) = (i / n, i % n);
                (z, sigma[z].apply(x))
            })
            .collect();
        Presentation {
            kind: Kind::A,
            n,
            pair,
            sigma: Some(sigma.to_vec()),
        }
    }

    /// Kind M presentation of `sol`: the pair map is `r` itself.
    pub fn structure(sol: &Solution) -> Presentation {
        Presentation {
            kind: Kind::M,
            n: sol.n(),
            pair: sol.table().to_vec(),
            sigma: None,
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn pair(&self, x: usize, y: usize) -> (usize, usize) {
        self.pair[x * self.n + y]
    }

    /// `σ_z`, for kind A only.
    pub fn sigmas(&self) -> Option<&[Permutation]> {
        self.sigma.as_deref()
    }

    /// Whether the pair map is a bijection of `X×X`; rewriting then has an
    /// inverse in each position.
    pub fn is_invertible(&self) -> bool {
        let mut seen = vec![false; self.pair.len()];
        for &(u, v) in &self.pair {
            let i = u * self.n + v;
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    /// The nontrivial relations as unordered pairs `{xy, uv}`, each stored
    /// with the smaller word first.
    pub fn relation_set(&self) -> BTreeSet<(Word, Word)> {
        let mut out = BTreeSet::new();
        for x in 0..self.n {
            for y in 0..self.n {
                let (u, v) = self.pair(x, y);
                if (u, v) == (x, y) {
                    continue;
                }
                let a = Word(vec![x, y]);
                let b = Word(vec![u, v]);
                out.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
        out
    }

    /// The presentation on a subset of generators, relabeled `0..|letters|`
    /// in increasing order. The subset must be closed under the pair map.
    pub fn restricted(&self, letters: Subset) -> Result<Presentation> {
        let keep = letters.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &x) in keep.iter().enumerate() {
            if x >= self.n {
                return Err(Error::LetterOutOfRange {
                    letter: x,
                    n: self.n,
                });
            }
            index[x] = i;
        }
        let k = keep.len();
        let mut pair = Vec::with_capacity(k * k);
        for &x in &keep {
            for &y in &keep {
                let (u, v) = self.pair(x, y);
                if index[u] == usize::MAX || index[v] == usize::MAX {
                    return Err(Error::ZNotInvariant(letters.complement(self.n)));
                }
                pair.push((index[u], index[v]));
            }
        }
        let sigma = self.sigma.as_ref().map(|s| {
            keep.iter()
                .map(|&z| {
                    Permutation::from_images(keep.iter().map(|&x| index[s[z].apply(x)]).collect())
                        .expect("closed subset restricts to permutations")
                })
                .collect()
        });
        Ok(Presentation {
            kind: self.kind,
            n: k,
            pair,
            sigma,
        })
    }
}
