//! Prime ideals of the derived monoid A (parametrized by invariant subsets
//! `Z`) and of the structure monoid M (families of such subsets closed under
//! the action of `φ`), orbit counts and the Gelfand–Kirillov dimension.
//!
//! `Z` belongs to the family when it is nonempty, proper, and `σ_x(Z) = Z`
//! for every `x ∉ Z`; it stands for the ideal `P(Z) = ∪_{z ∈ Z} A z`, i.e. the
//! words containing a letter of `Z`.
//!
//! `Φ(Z) = {φ(a) : a ∈ A ∖ P(Z)}` is computed as the closure of `{id}` under
//! `g ↦ g ∘ λ_{g⁻¹(y)}`, `y ∉ Z`: the words avoiding `Z` are generated by the
//! letters `y ∉ Z`, and `φ(a·y) = φ(a) ∘ λ_{φ(a)⁻¹(y)}` follows from
//! `a·y = a·φ(a)(φ(a)⁻¹(y))` and the rule `φ(a)φ(b) = φ(a·φ(a)(b))`.
//!
//! Inclusion of M-primes: a word lies in `P = {Z_1, .., Z_r}` when its
//! ψ-image meets every `Z_i`. Then `P ⊆ P'` iff every `Z'_j` contains some
//! `Z_i`: if some `Z'_j` contains none, one letter from each `Z_i ∖ Z'_j`
//! spells a word in `P` avoiding `Z'_j`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cocycle::psi_theta;
use crate::context::Context;
use crate::engine::z_invariant;
use crate::error::{Error, Result};
use crate::perm::{generate_group, Permutation};
use crate::sigma::SigmaSystem;
use crate::solution::Solution;
use crate::subset::Subset;
use crate::uf::UnionFind;
use crate::word::{all_words, Word};

/// Largest `n` for which the `2^n - 2` candidate subsets are scanned.
pub const MAX_SUBSET_SCAN: usize = 20;
/// `Σ_Z` is listed element by element only up to this degree.
const MAX_GROUP_LISTING: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimeA {
    pub z: Subset,
    /// Length of the longest chain of family members strictly below `z`.
    pub height: usize,
}

pub fn z_family(sys: &SigmaSystem) -> Result<Vec<PrimeA>> {
    let n = sys.n();
    if n > MAX_SUBSET_SCAN {
        return Err(Error::TooLarge(format!(
            "subset scan needs n <= {MAX_SUBSET_SCAN}"
        )));
    }
    let mut members: Vec<Subset> = (1..(1u64 << n) - 1)
        .map(Subset)
        .filter(|&z| z_invariant(&sys.sigma, z))
        .collect();
    members.sort_by_key(|z| (z.len(), z.0));
    let mut height: BTreeMap<Subset, usize> = BTreeMap::new();
    for &z in &members {
        let h = members
            .iter()
            .filter(|&&y| y != z && y.is_subset_of(z))
            .map(|y| height[y] + 1)
            .max()
            .unwrap_or(0);
        height.insert(z, h);
    }
    Ok(height
        .into_iter()
        .map(|(z, height)| PrimeA { z, height })
        .collect())
}

fn require_z0(sys: &SigmaSystem, z: Subset) -> Result<()> {
    let n = sys.n();
    if z.is_empty()
        || (z != Subset::full(n) && z_invariant(&sys.sigma, z) && z.is_subset_of(Subset::full(n)))
    {
        Ok(())
    } else {
        Err(Error::NotInZFamily(z))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitData {
    pub z: Subset,
    /// `Σ_Z = ⟨σ_x : x ∉ Z⟩`, listed when `n` is small.
    pub sigma_z_group: Option<Vec<Permutation>>,
    pub sigma_z_order: Option<usize>,
    /// Orbits of `Σ_Z` on `X ∖ Z`, each sorted, ordered by least point.
    pub orbits: Vec<Vec<usize>>,
    pub s: usize,
}

/// Orbits of `X ∖ Z` under `Σ_Z`, for `Z` empty or in the family.
pub fn s_of_z(sys: &SigmaSystem, z: Subset) -> Result<OrbitData> {
    require_z0(sys, z)?;
    let n = sys.n();
    let gens: Vec<Permutation> = (0..n)
        .filter(|&x| !z.contains(x))
        .map(|x| sys.sigma[x].clone())
        .collect();
    let mut uf = UnionFind::new(n);
    for g in &gens {
        for x in 0..n {
            uf.union(x, g.apply(x));
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in (0..n).filter(|&x| !z.contains(x)) {
        blocks.entry(uf.find(x)).or_default().push(x);
    }
    let mut orbits: Vec<Vec<usize>> = blocks.into_values().collect();
    orbits.sort();
    let group =
        (n <= MAX_GROUP_LISTING).then(|| generate_group(n, &gens).into_iter().collect::<Vec<_>>());
    Ok(OrbitData {
        z,
        sigma_z_order: group.as_ref().map(Vec::len),
        sigma_z_group: group,
        s: orbits.len(),
        orbits,
    })
}

/// `max s(Z)` over the family and `Z = ∅`.
pub fn gk_dimension(sys: &SigmaSystem) -> Result<usize> {
    let mut best = s_of_z(sys, Subset::EMPTY)?.s;
    for q in z_family(sys)? {
        best = best.max(s_of_z(sys, q.z)?.s);
    }
    Ok(best)
}

/// `Φ(Z)`, the values of `φ` on words avoiding `Z`.
pub fn phi_closure(sol: &Solution, sys: &SigmaSystem, z: Subset) -> Result<BTreeSet<Permutation>> {
    require_z0(sys, z)?;
    let n = sol.n();
    let lambda = sol.lambdas()?;
    let id = Permutation::identity(n);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        let inv = g.inverse();
        for y in (0..n).filter(|&y| !z.contains(y)) {
            let h = g.compose(&lambda[inv.apply(y)]);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    Ok(seen)
}

/// A prime of M: a family of subsets, all of one height.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimeM {
    pub zs: Vec<Subset>,
    pub height: usize,
}

impl PrimeM {
    /// `self ⊆ other` as ideals of M.
    pub fn is_contained_in(&self, other: &PrimeM) -> bool {
        other
            .zs
            .iter()
            .all(|&zj| self.zs.iter().any(|&zi| zi.is_subset_of(zj)))
    }
}

/// Least family containing `Q` and closed under `Z' ↦ g⁻¹(Z')`, `g ∈ Φ(Z')`.
/// Every member must be in the family and have the height of `Q`.
pub fn prime_closure(
    sol: &Solution,
    sys: &SigmaSystem,
    family: &[PrimeA],
    q: PrimeA,
) -> Result<PrimeM> {
    let height: BTreeMap<Subset, usize> = family.iter().map(|p| (p.z, p.height)).collect();
    if height.get(&q.z) != Some(&q.height) {
        return Err(Error::NotInZFamily(q.z));
    }
    let mut set = BTreeSet::from([q.z]);
    let mut queue = VecDeque::from([q.z]);
    while let Some(zp) = queue.pop_front() {
        for g in phi_closure(sol, sys, zp)? {
            let inv = g.inverse();
            let image = zp.map(|x| inv.apply(x));
            match height.get(&image) {
                None => {
                    return Err(Error::ClosureLeavesZ {
                        witness: image,
                        origin: q.z,
                    })
                }
                Some(&h) if h != q.height => {
                    return Err(Error::InternalInconsistency(format!(
                        "closure of {} reaches {image} of height {h}, expected {}",
                        q.z, q.height
                    )))
                }
                Some(_) => {}
            }
            if set.insert(image) {
                queue.push_back(image);
            }
        }
    }
    Ok(PrimeM {
        zs: set.into_iter().collect(),
        height: q.height,
    })
}

/// All primes of M arising from the family, deduplicated and sorted.
pub fn spec_m(sol: &Solution, sys: &SigmaSystem) -> Result<Vec<PrimeM>> {
    let family = z_family(sys)?;
    let mut out = BTreeSet::new();
    for &q in &family {
        out.insert(prime_closure(sol, sys, &family, q)?);
    }
    Ok(out.into_iter().collect())
}

/// `ψ(w) ∈ P(Z_i)` for every member `Z_i` of `P`.
pub fn prime_m_membership(ctx: &Context, p: &PrimeM, w: &Word) -> Result<bool> {
    let a = psi_theta(&ctx.sol, w)?.a_word;
    for &z in &p.zs {
        if !ctx.a.member_pz(&a, z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Subsets `Z` of the family with `X ∩ P(Z) ≠ Z`, where `X ∩ P(Z)` is computed
/// by testing each generator for membership in `P(Z)`.
pub fn trace_mismatches(ctx: &Context) -> Result<Vec<Subset>> {
    let mut bad = Vec::new();
    for q in z_family(&ctx.sys)? {
        let mut trace = Subset::EMPTY;
        for x in 0..ctx.n() {
            if ctx.a.member_pz(&Word::letter(x), q.z)? {
                trace.insert(x);
            }
        }
        if trace != q.z {
            bad.push(q.z);
        }
    }
    Ok(bad)
}

/// Pairs `(P, P')` where the combinatorial inclusion rule disagrees with
/// word membership over all M-words of degree `1..=max_degree`.
pub fn inclusion_mismatches(
    ctx: &Context,
    primes: &[PrimeM],
    max_degree: usize,
) -> Result<Vec<(usize, usize)>> {
    let n = ctx.n();
    let mut member: Vec<Vec<bool>> = vec![Vec::new(); primes.len()];
    for deg in 1..=max_degree {
        for w in all_words(n, deg) {
            for (i, p) in primes.iter().enumerate() {
                member[i].push(prime_m_membership(ctx, p, &w)?);
            }
        }
    }
    let mut bad = Vec::new();
    for i in 0..primes.len() {
        for j in 0..primes.len() {
            let by_words = member[i].iter().zip(&member[j]).all(|(&a, &b)| !a || b);
            if by_words != primes[i].is_contained_in(&primes[j]) {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumMembership {
    pub y: Subset,
    pub classes: usize,
    pub in_prime: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataReport {
    pub degree: usize,
    pub strata: Vec<StratumMembership>,
}

/// At degree `ℓ`: membership in `P` is constant on each M-class and on each
/// stratum `D_Y`, and strata in `P` are closed upward in `Y`.
pub fn check_union_of_strata(ctx: &Context, p: &PrimeM, degree: usize) -> Result<StrataReport> {
    let n = ctx.n();
    let count = ctx.m.count(degree)?;
    let mut class_member: Vec<Option<bool>> = vec![None; count];
    for w in all_words(n, degree) {
        let c = ctx.m.class_id(&w)?;
        let inside = prime_m_membership(ctx, p, &w)?;
        match class_member[c] {
            None => class_member[c] = Some(inside),
            Some(prev) if prev != inside => {
                return Err(Error::StrataViolation(format!(
                    "membership differs within the M-class of {w}"
                )));
            }
            Some(_) => {}
        }
    }
    let mut strata = Vec::new();
    for (y, classes) in ctx.m.divisibility_strata(degree)? {
        let first = class_member[classes[0]].expect("every class has a word");
        for &c in &classes[1..] {
            if class_member[c] != Some(first) {
                return Err(Error::StrataViolation(format!(
                    "stratum {y} mixes {} and {}",
                    ctx.m.canonical_of(degree, classes[0])?,
                    ctx.m.canonical_of(degree, c)?
                )));
            }
        }
        strata.push(StratumMembership {
            y,
            classes: classes.len(),
            in_prime: first,
        });
    }
    for a in &strata {
        for b in &strata {
            if a.in_prime && a.y.is_subset_of(b.y) && !b.in_prime {
                return Err(Error::StrataViolation(format!(
                    "stratum {} lies in the prime but {} does not",
                    a.y, b.y
                )));
            }
        }
    }
    Ok(StrataReport { degree, strata })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDegree {
    pub degree: usize,
    pub in_i: usize,
    pub in_j: usize,
}

/// Degree-wise comparison of `M_i` and `M_j`, where `M_i` holds the classes
/// with at least `i` distinct generator left divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComparison {
    pub i: usize,
    pub j: usize,
    pub max_degree: usize,
    pub per_degree: Vec<ChainDegree>,
    pub equal: bool,
    /// Least canonical word of least degree lying in exactly one of the two.
    pub witness: Option<Word>,
}

pub fn compare_divisor_chain(
    ctx: &Context,
    i: usize,
    j: usize,
    max_degree: usize,
) -> Result<ChainComparison> {
    let mut per_degree = Vec::new();
    let mut witness = None;
    for degree in 1..=max_degree {
        let strata = ctx.m.divisibility_strata(degree)?;
        let count = |k: usize| {
            strata
                .iter()
                .filter(|(y, _)| y.len() >= k)
                .map(|(_, v)| v.len())
                .sum()
        };
        let (in_i, in_j): (usize, usize) = (count(i), count(j));
        if in_i != in_j && witness.is_none() {
            let (lo, hi) = (i.min(j), i.max(j));
            let least = strata
                .iter()
                .filter(|(y, _)| y.len() >= lo && y.len() < hi)
                .flat_map(|(_, v)| v.iter().copied())
                .min()
                .expect("counts differ");
            witness = Some(ctx.m.canonical_of(degree, least)?);
        }
        per_degree.push(ChainDegree { degree, in_i, in_j });
    }
    Ok(ChainComparison {
        i,
        j,
        max_degree,
        equal: witness.is_none(),
        per_degree,
        witness,
    })
}
