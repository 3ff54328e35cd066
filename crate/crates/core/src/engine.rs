//! Word problem for a graded quadratic presentation, built one degree at a time.
//!
//! Classes of degree `k+1` are computed from classes of degree `k`: the words
//! `u·b` with `u` in a fixed class `p` are all congruent, so the pairs `(p, b)`
//! ("nodes") cover every word of degree `k+1`. Rewrites strictly inside `u`
//! stay within the node; a rewrite of the last two letters joins
//! `(R(q, x), b)` with `(R(q, y), c)` whenever `xb = yc` is a relation and `q`
//! is a class of degree `k-1`. A union-find over the `|C_k|·n` nodes then
//! yields the classes of degree `k+1` exactly.
//!
//! Class ids ascend with the least node of each class. Since nodes are ordered
//! by `(canonical(p), b)`, the least node spells the lexicographically least
//! word of the class, and ids are in lexicographic order of canonical words.

use std::collections::BTreeMap;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{Kind, Presentation};
use crate::subset::Subset;
use crate::uf::UnionFind;
use crate::word::Word;

pub const DEFAULT_BUDGET: u128 = 5_000_000;
pub const BUDGET_ENV: &str = "YBE_BUDGET_WORDS";

/// `YBE_BUDGET_WORDS` if set and parseable, otherwise [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

struct Level {
    count: usize,
    /// `right[p * n + b]`: class of `p·b`, `p` of the previous degree.
    right: Vec<u32>,
    /// `left[a * prev_count + q]`: class of `a·q`.
    left: Vec<u32>,
    /// Nodes `p * n + b` of each class, ascending; `nodes[offsets[c]]` is the least.
    offsets: Vec<u32>,
    nodes: Vec<u32>,
    /// Number of words in each class.
    sizes: Vec<u128>,
    /// First letters occurring in each class.
    first: Vec<u64>,
}

impl Level {
    fn root() -> Level {
        Level {
            count: 1,
            right: Vec::new(),
            left: Vec::new(),
            offsets: vec![0, 1],
            nodes: vec![0],
            sizes: vec![1],
            first: vec![0],
        }
    }

    fn prev_count(&self, n: usize) -> usize {
        self.right.len() / n
    }

    fn class_nodes(&self, c: usize) -> &[u32] {
        &self.nodes[self.offsets[c] as usize..self.offsets[c + 1] as usize]
    }
}

/// Builds degree `k+1` from degree `k`.
fn extend(pres: &Presentation, prev: &Level, k: usize) -> Level {
    let n = pres.n();
    let total = prev.count * n;
    let mut uf = UnionFind::new(total);
    if k >= 1 {
        let qs = prev.prev_count(n);
        for q in 0..qs {
            let row = &prev.right[q * n..(q + 1) * n];
            for x in 0..n {
                for b in 0..n {
                    let (y, c) = pres.pair(x, b);
                    if (y, c) != (x, b) {
                        uf.union(row[x] as usize * n + b, row[y] as usize * n + c);
                    }
                }
            }
        }
    }
    let (right, count) = uf.labels();

    let mut offsets = vec![0u32; count + 1];
    for &c in &right {
        offsets[c as usize + 1] += 1;
    }
    for c in 0..count {
        offsets[c + 1] += offsets[c];
    }
    let mut fill = offsets.clone();
    let mut nodes = vec![0u32; total];
    let mut sizes = vec![0u128; count];
    let mut first = vec![0u64; count];
    for (node, &c) in right.iter().enumerate() {
        let c = c as usize;
        nodes[fill[c] as usize] = node as u32;
        fill[c] += 1;
        let p = node / n;
        sizes[c] += prev.sizes[p];
        first[c] |= if k == 0 {
            1u64 << (node % n)
        } else {
            prev.first[p]
        };
    }

    let mut left = vec![0u32; n * prev.count];
    let pc = prev.prev_count(n);
    for s in 0..prev.count {
        for a in 0..n {
            left[a * prev.count + s] = if k == 0 {
                right[a]
            } else {
                let link = prev.nodes[prev.offsets[s] as usize] as usize;
                let (p, b) = (link / n, link % n);
                right[prev.left[a * pc + p] as usize * n + b]
            };
        }
    }

    Level {
        count,
        right,
        left,
        offsets,
        nodes,
        sizes,
        first,
    }
}

/// Canonical representatives and sizes of the classes of one degree, in
/// lexicographic order of representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeClasses {
    pub degree: usize,
    pub canon: Vec<Word>,
    pub sizes: Vec<u128>,
}

impl DegreeClasses {
    pub fn count(&self) -> usize {
        self.canon.len()
    }
}

/// Memoized word problem solver for one presentation. Safe to share between
/// threads; degrees are computed on demand under a write lock.
pub struct WordEngine {
    pres: Presentation,
    budget: u128,
    levels: RwLock<Vec<Arc<Level>>>,
}

impl WordEngine {
    /// Budget taken from `YBE_BUDGET_WORDS`.
    pub fn new(pres: Presentation) -> Self {
        WordEngine::with_budget(pres, budget_from_env())
    }

    /// `budget` bounds the number of nodes `|C_k|·n` processed per degree.
    pub fn with_budget(pres: Presentation, budget: u128) -> Self {
        WordEngine {
            pres,
            budget,
            levels: RwLock::new(vec![Arc::new(Level::root())]),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn n(&self) -> usize {
        self.pres.n()
    }

    pub fn kind(&self) -> Kind {
        self.pres.kind()
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    /// Levels `0..=k`.
    fn levels(&self, k: usize) -> Result<Vec<Arc<Level>>> {
        {
            let guard = self.levels.read();
            if k < guard.len() {
                return Ok(guard[..=k].to_vec());
            }
        }
        let mut guard = self.levels.write();
        let n = self.n();
        while guard.len() <= k {
            let degree = guard.len();
            let prev = guard[degree - 1].clone();
            let required = prev.count as u128 * n as u128;
            if required > self.budget || required > u32::MAX as u128 {
                return Err(Error::BudgetExceeded {
                    degree,
                    required,
                    budget: self.budget,
                });
            }
            guard.push(Arc::new(extend(&self.pres, &prev, degree - 1)));
        }
        Ok(guard[..=k].to_vec())
    }

    fn level(&self, k: usize) -> Result<Arc<Level>> {
        Ok(self.levels(k)?.pop().expect("nonempty"))
    }

    /// Number of classes of degree `k`.
    pub fn count(&self, k: usize) -> Result<usize> {
        Ok(self.level(k)?.count)
    }

    /// Class counts for degrees `0..=max_degree`.
    pub fn growth(&self, max_degree: usize) -> Result<Vec<usize>> {
        Ok(self.levels(max_degree)?.iter().map(|l| l.count).collect())
    }

    /// Id of the class of `w` among the classes of degree `|w|`.
    pub fn class_id(&self, w: &Word) -> Result<usize> {
        w.check_letters(self.n())?;
        let levels = self.levels(w.degree())?;
        Ok(self.fold(&levels, 0, 0, w.letters()))
    }

    fn fold(&self, levels: &[Arc<Level>], start: usize, mut c: usize, letters: &[usize]) -> usize {
        let n = self.n();
        for (i, &b) in letters.iter().enumerate() {
            c = levels[start + i + 1].right[c * n + b] as usize;
        }
        c
    }

    /// Class of `u·letters` where `u` lies in class `c` of degree `k`.
    pub fn extend_class(&self, k: usize, c: usize, letters: &[usize]) -> Result<usize> {
        Word(letters.to_vec()).check_letters(self.n())?;
        let levels = self.levels(k + letters.len())?;
        Ok(self.fold(&levels, k, c, letters))
    }

    /// Class of `a·u` where `u` lies in class `c` of degree `k`.
    pub fn prepend(&self, a: usize, k: usize, c: usize) -> Result<usize> {
        if a >= self.n() {
            return Err(Error::LetterOutOfRange {
                letter: a,
                n: self.n(),
            });
        }
        let lv = self.level(k + 1)?;
        Ok(lv.left[a * (lv.left.len() / self.n()) + c] as usize)
    }

    /// Class of the product of classes `c1` (degree `k1`) and `c2` (degree `k2`).
    pub fn multiply(&self, k1: usize, c1: usize, k2: usize, c2: usize) -> Result<usize> {
        let w2 = self.canonical_of(k2, c2)?;
        self.extend_class(k1, c1, w2.letters())
    }

    /// Lexicographically least word of class `c` of degree `k`.
    pub fn canonical_of(&self, k: usize, mut c: usize) -> Result<Word> {
        let levels = self.levels(k)?;
        let n = self.n();
        let mut letters = vec![0; k];
        for i in (1..=k).rev() {
            let node = levels[i].nodes[levels[i].offsets[c] as usize] as usize;
            letters[i - 1] = node % n;
            c = node / n;
        }
        Ok(Word(letters))
    }

    pub fn canonical(&self, w: &Word) -> Result<Word> {
        let c = self.class_id(w)?;
        self.canonical_of(w.degree(), c)
    }

    /// Words of different degree are never equal.
    pub fn equal(&self, w1: &Word, w2: &Word) -> Result<bool> {
        if w1.degree() != w2.degree() {
            return Ok(false);
        }
        Ok(self.class_id(w1)? == self.class_id(w2)?)
    }

    pub fn class_size(&self, k: usize, c: usize) -> Result<u128> {
        Ok(self.level(k)?.sizes[c])
    }

    pub fn degree_classes(&self, k: usize) -> Result<DegreeClasses> {
        let lv = self.level(k)?;
        let canon = (0..lv.count)
            .map(|c| self.canonical_of(k, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(DegreeClasses {
            degree: k,
            canon,
            sizes: lv.sizes.clone(),
        })
    }

    /// Every word of class `c`, sorted. Fails if the class is larger than the budget.
    pub fn class_members(&self, k: usize, c: usize) -> Result<Vec<Word>> {
        let levels = self.levels(k)?;
        let size = levels[k].sizes[c];
        if size > self.budget {
            return Err(Error::BudgetExceeded {
                degree: k,
                required: size,
                budget: self.budget,
            });
        }
        let n = self.n();
        let mut out = Vec::with_capacity(size as usize);
        let mut stack = vec![(k, c, Vec::<usize>::new())];
        while let Some((i, c, suffix)) = stack.pop() {
            if i == 0 {
                let mut w = suffix;
                w.reverse();
                out.push(Word(w));
                continue;
            }
            for &node in levels[i].class_nodes(c) {
                let mut s = suffix.clone();
                s.push(node as usize % n);
                stack.push((i - 1, node as usize / n, s));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Classes of degree `j` containing a length-`j` prefix of some word in
    /// class `c` of degree `k`, as a membership vector.
    pub fn prefix_classes(&self, k: usize, c: usize, j: usize) -> Result<Vec<bool>> {
        if j > k {
            return Err(Error::InternalInconsistency(format!(
                "prefix length {j} exceeds degree {k}"
            )));
        }
        let levels = self.levels(k)?;
        let n = self.n();
        let mut cur = vec![false; levels[k].count];
        cur[c] = true;
        for i in (j + 1..=k).rev() {
            let mut next = vec![false; levels[i - 1].count];
            for (s, _) in cur.iter().enumerate().filter(|(_, &on)| on) {
                for &node in levels[i].class_nodes(s) {
                    next[node as usize / n] = true;
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Letters `x` such that some word in the class of `w` starts with `x`.
    pub fn left_divisor_set(&self, w: &Word) -> Result<Subset> {
        let c = self.class_id(w)?;
        Ok(Subset(self.level(w.degree())?.first[c]))
    }

    pub fn first_letters(&self, k: usize, c: usize) -> Result<Subset> {
        Ok(Subset(self.level(k)?.first[c]))
    }

    /// Whether some word in the class of `w` has a prefix in the class of `s`.
    pub fn left_divisible_by(&self, w: &Word, s: &Word) -> Result<bool> {
        if s.degree() > w.degree() {
            return Ok(false);
        }
        let cw = self.class_id(w)?;
        let cs = self.class_id(s)?;
        Ok(self.prefix_classes(w.degree(), cw, s.degree())?[cs])
    }

    /// Classes of degree `k` grouped by their full set of left divisors.
    pub fn divisibility_strata(&self, k: usize) -> Result<BTreeMap<Subset, Vec<usize>>> {
        let lv = self.level(k)?;
        let mut out: BTreeMap<Subset, Vec<usize>> = BTreeMap::new();
        for (c, &mask) in lv.first.iter().enumerate() {
            out.entry(Subset(mask)).or_default().push(c);
        }
        Ok(out)
    }

    /// The least exponent vector `(k_1, .., k_n)` under lexicographic order with
    /// `x_1^{k_1} .. x_n^{k_n}` in the class of `w`.
    pub fn ordered_representative(&self, w: &Word) -> Result<Vec<usize>> {
        if self.kind() != Kind::A {
            return Err(Error::WrongPresentation(
                "ordered representatives need kind A",
            ));
        }
        let target = self.class_id(w)?;
        let mut found = None;
        for_each_composition(w.degree(), self.n(), &mut |k| {
            if found.is_some() {
                return;
            }
            if let Ok(c) = self.class_id(&Word::from_exponents(k)) {
                if c == target {
                    found = Some(k.to_vec());
                }
            }
        });
        found.ok_or_else(|| Error::NoOrderedForm(w.clone()))
    }

    /// Whether `w` lies in the ideal generated by `Z`, decided by a letter scan.
    /// Sound only for `Z` with `σ_x(Z) = Z` for all `x ∉ Z`; other subsets are refused.
    pub fn member_pz(&self, w: &Word, z: Subset) -> Result<bool> {
        let sigma = self.pres.sigmas().ok_or(Error::WrongPresentation(
            "ideal membership scan needs kind A",
        ))?;
        w.check_letters(self.n())?;
        if !z_invariant(sigma, z) {
            return Err(Error::ZNotInvariant(z));
        }
        Ok(w.letters().iter().any(|&x| z.contains(x)))
    }
}

/// `σ_x(Z) = Z` for every `x ∉ Z`. Holds trivially for `∅` and `X`.
pub fn z_invariant(sigma: &[crate::perm::Permutation], z: Subset) -> bool {
    let n = sigma.len();
    (0..n)
        .filter(|&x| !z.contains(x))
        .all(|x| z.map(|y| sigma[x].apply(y)) == z)
}

/// Calls `f` on every `k ∈ ℕ^n` with `Σ k = total`, in lexicographic order.
fn for_each_composition(total: usize, n: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(i: usize, left: usize, k: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        let n = k.len();
        if i + 1 == n {
            k[i] = left;
            f(k);
            return;
        }
        for e in 0..=left {
            k[i] = e;
            go(i + 1, left - e, k, f);
        }
    }
    if n == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    go(0, total, &mut vec![0; n], f);
}
