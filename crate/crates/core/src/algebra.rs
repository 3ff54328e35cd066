//! The graded monoid algebra `K[A]` or `K[M]` over an exact field, at bounded degree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cocycle::{eta_test, EtaOutcome};
use crate::context::Context;
use crate::engine::WordEngine;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{left_nullspace, rank, span_contains};
use crate::presentation::Kind;
use crate::spectrum::s_of_z;
use crate::subset::Subset;
use crate::word::Word;

/// A finite linear combination of canonical words; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<F: Field> {
    terms: BTreeMap<Word, F::Elem>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn terms(&self) -> &BTreeMap<Word, F::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest degree among the terms.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }
}

impl<F: Field> fmt::Display for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){w}")?;
        }
        Ok(())
    }
}

/// Arithmetic in the algebra of the monoid decided by `engine`.
pub struct Algebra<'e, F: Field> {
    pub field: F,
    pub engine: &'e WordEngine,
}

impl<'e, F: Field> Algebra<'e, F> {
    pub fn new(field: F, engine: &'e WordEngine) -> Self {
        Algebra { field, engine }
    }

    pub fn zero(&self) -> AlgebraElement<F> {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> AlgebraElement<F> {
        self.monomial(self.field.one(), Word::empty())
    }

    fn monomial(&self, c: F::Elem, w: Word) -> AlgebraElement<F> {
        let mut terms = BTreeMap::new();
        if !self.field.is_zero(&c) {
            terms.insert(w, c);
        }
        AlgebraElement { terms }
    }

    pub fn word(&self, w: &Word) -> Result<AlgebraElement<F>> {
        Ok(self.monomial(self.field.one(), self.engine.canonical(w)?))
    }

    pub fn letter(&self, x: usize) -> Result<AlgebraElement<F>> {
        self.word(&Word::letter(x))
    }

    /// `Σ c_i w_i` with integer coefficients mapped into the field.
    pub fn from_terms(&self, terms: &[(i64, Word)]) -> Result<AlgebraElement<F>> {
        let mut out = self.zero();
        for (c, w) in terms {
            let canon = self.engine.canonical(w)?;
            self.accumulate(&mut out.terms, canon, self.field.from_i64(*c));
        }
        Ok(out)
    }

    fn accumulate(&self, terms: &mut BTreeMap<Word, F::Elem>, w: Word, c: F::Elem) {
        if let Some(old) = terms.get_mut(&w) {
            *old = self.field.add(old, &c);
            if self.field.is_zero(old) {
                terms.remove(&w);
            }
        } else if !self.field.is_zero(&c) {
            terms.insert(w, c);
        }
    }

    pub fn add(&self, a: &AlgebraElement<F>, b: &AlgebraElement<F>) -> AlgebraElement<F> {
        let mut terms = a.terms.clone();
        for (w, c) in &b.terms {
            self.accumulate(&mut terms, w.clone(), c.clone());
        }
        AlgebraElement { terms }
    }

    pub fn scale(&self, c: &F::Elem, a: &AlgebraElement<F>) -> AlgebraElement<F> {
        let mut terms = BTreeMap::new();
        for (w, x) in &a.terms {
            self.accumulate(&mut terms, w.clone(), self.field.mul(c, x));
        }
        AlgebraElement { terms }
    }

    pub fn sub(&self, a: &AlgebraElement<F>, b: &AlgebraElement<F>) -> AlgebraElement<F> {
        self.add(a, &self.scale(&self.field.from_i64(-1), b))
    }

    /// Bilinear extension of concatenation.
    pub fn mul(&self, a: &AlgebraElement<F>, b: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        let mut terms = BTreeMap::new();
        for (u, x) in &a.terms {
            let cu = self.engine.class_id(u)?;
            for (v, y) in &b.terms {
                let c = self.engine.extend_class(u.degree(), cu, v.letters())?;
                let w = self.engine.canonical_of(u.degree() + v.degree(), c)?;
                self.accumulate(&mut terms, w, self.field.mul(x, y));
            }
        }
        Ok(AlgebraElement { terms })
    }

    /// Left-to-right product of `factors`.
    pub fn product(&self, factors: &[AlgebraElement<F>]) -> Result<AlgebraElement<F>> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &AlgebraElement<F>, k: usize) -> Result<AlgebraElement<F>> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Least `k ≤ k_max` with `a^k = 0`.
    pub fn nilpotency_index(&self, a: &AlgebraElement<F>, k_max: usize) -> Result<Option<usize>> {
        let mut acc = self.one();
        for k in 1..=k_max {
            acc = self.mul(&acc, a)?;
            if acc.is_zero() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorStep {
    pub i: usize,
    /// Dimension of the kernel of right multiplication by `c^i` on degree `ℓ`.
    pub nullspace_dim: usize,
    /// Dimension of the span of `a - b` over pairs related within `i` steps.
    pub eta_span_dim: usize,
    pub span_in_nullspace: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorReport {
    pub kind: Kind,
    pub degree: usize,
    pub characteristic: u64,
    pub steps: Vec<AnnihilatorStep>,
    /// Least `i` whose kernel dimension equals that of `i + 1`.
    pub stable_from: Option<usize>,
}

/// Compares, at degree `ℓ`, the annihilator of `c^i` (`c = z` for A, the
/// central `w` for M) with the span of differences of η-related words.
pub fn annihilator_compare<F: Field>(
    ctx: &Context,
    kind: Kind,
    field: &F,
    degree: usize,
    i_max: usize,
) -> Result<AnnihilatorReport> {
    let engine = ctx.engine(kind);
    let central = ctx.central()?;
    let c = match kind {
        Kind::A => central.z,
        Kind::M => central.w,
    };
    let count = engine.count(degree)?;
    let canon: Vec<Word> = (0..count)
        .map(|k| engine.canonical_of(degree, k))
        .collect::<Result<_>>()?;
    let mut steps = Vec::new();
    let mut current: Vec<usize> = (0..count).collect();
    for i in 1..=i_max {
        let from = degree + (i - 1) * c.degree();
        current = current
            .iter()
            .map(|&k| engine.extend_class(from, k, c.letters()))
            .collect::<Result<_>>()?;
        let targets: BTreeMap<usize, usize> = current
            .iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(j, &t)| (t, j))
            .collect();
        let cols = targets.len();
        let matrix: Vec<Vec<F::Elem>> = current
            .iter()
            .map(|t| {
                let mut row = vec![field.zero(); cols];
                row[targets[t]] = field.one();
                row
            })
            .collect();
        let kernel = left_nullspace(field, &matrix, cols);

        let mut eta = Vec::new();
        for a in 0..count {
            for b in a + 1..count {
                if let EtaOutcome::Related { .. } = eta_test(ctx, kind, &canon[a], &canon[b], i)? {
                    let mut v = vec![field.zero(); count];
                    v[a] = field.one();
                    v[b] = field.from_i64(-1);
                    eta.push(v);
                }
            }
        }
        steps.push(AnnihilatorStep {
            i,
            nullspace_dim: kernel.len(),
            eta_span_dim: rank(field, eta.clone(), count),
            span_in_nullspace: span_contains(field, &kernel, &eta, count),
        });
    }
    let stable_from = steps
        .windows(2)
        .find(|w| w[0].nullspace_dim == w[1].nullspace_dim)
        .map(|w| w[0].i);
    Ok(AnnihilatorReport {
        kind,
        degree,
        characteristic: field.characteristic(),
        steps,
        stable_from,
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Dimensions of the degree-`ℓ` parts, `ℓ = 0..=ℓ_max`, of the algebra of
/// the submonoid on `X ∖ Z` modulo the ideal generated by `x - y` for `x, y`
/// in one `Σ_Z`-orbit. Each must equal `C(ℓ + s - 1, s - 1)`, `s = s(Z)`.
pub fn orbit_quotient_dimension<F: Field>(
    ctx: &Context,
    field: &F,
    z: Subset,
    max_degree: usize,
) -> Result<Vec<usize>> {
    let orbit_data = s_of_z(&ctx.sys, z)?;
    let keep = z.complement(ctx.n());
    let relabel: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let pres = ctx.a.presentation().restricted(keep)?;
    let engine = WordEngine::with_budget(pres, ctx.a.budget());
    let pairs: Vec<(usize, usize)> = orbit_data
        .orbits
        .iter()
        .flat_map(|o| {
            o.windows(2)
                .map(|w| (relabel[&w[0]], relabel[&w[1]]))
                .collect::<Vec<_>>()
        })
        .collect();
    let s = orbit_data.s;
    let mut dims = Vec::with_capacity(max_degree + 1);
    for l in 0..=max_degree {
        let count = engine.count(l)?;
        let mut diffs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for i in 0..l {
            let j = l - 1 - i;
            for cu in 0..engine.count(i)? {
                for cv in 0..engine.count(j)? {
                    let v = engine.canonical_of(j, cv)?;
                    for &(x, y) in &pairs {
                        let a = engine.extend_class(i, cu, &[x])?;
                        let b = engine.extend_class(i, cu, &[y])?;
                        let a = engine.extend_class(i + 1, a, v.letters())?;
                        let b = engine.extend_class(i + 1, b, v.letters())?;
                        if a != b {
                            diffs.insert((a.min(b), a.max(b)));
                        }
                    }
                }
            }
        }
        let rows: Vec<Vec<F::Elem>> = diffs
            .iter()
            .map(|&(a, b)| {
                let mut v = vec![field.zero(); count];
                v[a] = field.one();
                v[b] = field.from_i64(-1);
                v
            })
            .collect();
        let dim = count - rank(field, rows, count);
        let expected = binomial(l + s - 1, s - 1) as usize;
        if dim != expected {
            return Err(Error::DimensionMismatch {
                degree: l,
                got: dim,
                expected,
            });
        }
        dims.push(dim);
    }
    Ok(dims)
}
