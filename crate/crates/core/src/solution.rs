//! Finite set-theoretic solutions `r(x,y) = (λ_x(y), ρ_y(x))` and their axioms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{all_permutations, is_bijection, Permutation};

/// Boolean properties of a table, each evaluated by its direct definition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PropertyFlags {
    pub is_ybe: bool,
    pub left_nd: bool,
    pub right_nd: bool,
    pub bijective: bool,
    pub involutive: bool,
    pub square_free: bool,
}

impl PropertyFlags {
    /// True when every flag set in `mask` is also set in `self`.
    pub fn satisfies(&self, mask: &PropertyFlags) -> bool {
        (!mask.is_ybe || self.is_ybe)
            && (!mask.left_nd || self.left_nd)
            && (!mask.right_nd || self.right_nd)
            && (!mask.bijective || self.bijective)
            && (!mask.involutive || self.involutive)
            && (!mask.square_free || self.square_free)
    }
}

/// A map `r: X×X → X×X` on `X = {0, .., n-1}`.
///
/// Any well-formed table is accepted; whether it satisfies the braid relation
/// is recorded in [`PropertyFlags`]. `lambda` / `rho` are present exactly when
/// the corresponding components are bijections.
#[derive(Clone, PartialEq, Eq)]
pub struct Solution {
    n: usize,
    table: Vec<(usize, usize)>,
    lambda: Option<Vec<Permutation>>,
    rho: Option<Vec<Permutation>>,
    flags: PropertyFlags,
}

/// On-disk form: `{"n": n, "r": [[[u,v], ..], ..]}` with row `x`, column `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub n: usize,
    pub r: Vec<Vec<[usize; 2]>>,
}

impl Solution {
    /// `table[x * n + y] = r(x, y)`.
    pub fn new(n: usize, table: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable("n must be positive".into()));
        }
        if n > 64 {
            return Err(Error::MalformedTable(format!("n={n} exceeds 64")));
        }
        if table.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "expected {} entries, found {}",
                n * n,
                table.len()
            )));
        }
        if let Some((i, &(u, v))) = table
            .iter()
            .enumerate()
            .find(|(_, &(u, v))| u >= n || v >= n)
        {
            return Err(Error::MalformedTable(format!(
                "r(x{}, x{}) = ({u}, {v}) out of range",
                i / n + 1,
                i % n + 1
            )));
        }
        let lambda = (0..n)
            .map(|x| Permutation::from_images((0..n).map(|y| table[x * n + y].0).collect()).ok())
            .collect::<Option<Vec<_>>>();
        let rho = (0..n)
            .map(|y| Permutation::from_images((0..n).map(|x| table[x * n + y].1).collect()).ok())
            .collect::<Option<Vec<_>>>();
        let mut sol = Solution {
            n,
            table,
            lambda,
            rho,
            flags: PropertyFlags::default(),
        };
        sol.flags = validate_ybe(&sol)?;
        Ok(sol)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Result<Self> {
        let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Solution::new(n, table)
    }

    /// A solution of the form `r(x, y) = (λ_x(y), ρ_y(x))`.
    pub fn from_components(lambda: &[Permutation], rho: &[Permutation]) -> Result<Self> {
        let n = lambda.len();
        if rho.len() != n {
            return Err(Error::SizeMismatch(n, rho.len()));
        }
        Solution::from_fn(n, |x, y| (lambda[x].apply(y), rho[y].apply(x)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flags(&self) -> PropertyFlags {
        self.flags
    }

    pub fn table(&self) -> &[(usize, usize)] {
        &self.table
    }

    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        self.table[x * self.n + y]
    }

    /// `λ_x(y)`, the first component of `r(x, y)`.
    #[inline]
    pub fn lam(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y].0
    }

    /// `ρ_y(x)`, the second component of `r(x, y)`.
    #[inline]
    pub fn rho_of(&self, y: usize, x: usize) -> usize {
        self.table[x * self.n + y].1
    }

    pub fn lambdas(&self) -> Result<&[Permutation]> {
        self.lambda.as_deref().ok_or(Error::NotLeftNonDegenerate)
    }

    pub fn lambda(&self, x: usize) -> Result<&Permutation> {
        Ok(&self.lambdas()?[x])
    }

    pub fn rhos(&self) -> Option<&[Permutation]> {
        self.rho.as_deref()
    }

    pub fn is_rack_form(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.lam(x, y) == y))
    }

    /// Fails unless the solution is a bijective left non-degenerate YBE solution.
    pub fn require_bijective_left_nd(&self) -> Result<()> {
        if !self.flags.is_ybe {
            return Err(Error::MalformedTable(
                "table does not satisfy the braid relation".into(),
            ));
        }
        if !self.flags.left_nd {
            return Err(Error::NotLeftNonDegenerate);
        }
        if !self.flags.bijective {
            return Err(Error::NotBijective);
        }
        Ok(())
    }

    /// `r ∘ other` as a table.
    pub fn compose_table(&self, other: &Solution) -> Result<Vec<(usize, usize)>> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(other.table.iter().map(|&(u, v)| self.r(u, v)).collect())
    }

    /// Table of `r^k`.
    pub fn power_table(&self, k: usize) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut cur: Vec<(usize, usize)> = (0..n * n).map(|i| (i / n, i % n)).collect();
        for _ in 0..k {
            cur = cur.iter().map(|&(u, v)| self.r(u, v)).collect();
        }
        cur
    }

    /// The solution transported along `g`: `r'(g x, g y) = (g u, g v)`.
    pub fn relabel(&self, g: &Permutation) -> Result<Solution> {
        if g.degree() != self.n {
            return Err(Error::SizeMismatch(self.n, g.degree()));
        }
        Solution::new(self.n, self.relabeled_table(g))
    }

    fn relabeled_table(&self, g: &Permutation) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut table = vec![(0, 0); n * n];
        for x in 0..n {
            for y in 0..n {
                let (u, v) = self.r(x, y);
                table[g.apply(x) * n + g.apply(y)] = (g.apply(u), g.apply(v));
            }
        }
        table
    }

    /// Lexicographically least relabeled table and the least relabeling achieving it.
    pub fn canonical_form(&self) -> (Vec<(usize, usize)>, Permutation) {
        let mut best: Option<(Vec<(usize, usize)>, Permutation)> = None;
        for g in all_permutations(self.n) {
            let t = self.relabeled_table(&g);
            if best.as_ref().is_none_or(|(b, _)| t < *b) {
                best = Some((t, g));
            }
        }
        best.expect("n >= 1 has at least one permutation")
    }

    pub fn to_file(&self) -> SolutionFile {
        SolutionFile {
            n: self.n,
            r: (0..self.n)
                .map(|x| {
                    (0..self.n)
                        .map(|y| {
                            let (u, v) = self.r(x, y);
                            [u, v]
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_file(file: &SolutionFile) -> Result<Self> {
        let n = file.n;
        if file.r.len() != n {
            return Err(Error::Parse(format!(
                "field r: expected {n} rows, found {}",
                file.r.len()
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for (x, row) in file.r.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "field r[{x}]: expected {n} entries, found {}",
                    row.len()
                )));
            }
            table.extend(row.iter().map(|&[u, v]| (u, v)));
        }
        Solution::new(n, table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("solution serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SolutionFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        Solution::from_file(&file)
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Solution(n={}, r={:?})", self.n, self.table)
    }
}

/// Checks the braid relation twice: through the three component equations
/// and through the map on triples. Disagreement is an internal error.
pub fn validate_ybe(sol: &Solution) -> Result<PropertyFlags> {
    let n = sol.n;
    let lam = |x: usize, y: usize| sol.lam(x, y);
    let rho = |y: usize, x: usize| sol.rho_of(y, x);

    let mut components = true;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let yb1 = lam(x, lam(y, z)) == lam(lam(x, y), lam(rho(y, x), z));
                let yb2 = lam(rho(lam(y, z), x), rho(z, y)) == rho(lam(rho(y, x), z), lam(x, y));
                let yb3 = rho(z, rho(y, x)) == rho(rho(z, y), rho(lam(y, z), x));
                if !(yb1 && yb2 && yb3) {
                    components = false;
                    break 'outer;
                }
            }
        }
    }

    let r12 = |(a, b, c): (usize, usize, usize)| {
        let (u, v) = sol.r(a, b);
        (u, v, c)
    };
    let r23 = |(a, b, c): (usize, usize, usize)| {
        let (u, v) = sol.r(b, c);
        (a, u, v)
    };
    let mut braid = true;
    'braid: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = (x, y, z);
                if r12(r23(r12(t))) != r23(r12(r23(t))) {
                    braid = false;
                    break 'braid;
                }
            }
        }
    }
    if components != braid {
        return Err(Error::InternalInconsistency(format!(
            "component equations say {components}, braid identity says {braid}"
        )));
    }

    let left_nd = sol.lambda.is_some();
    let right_nd = sol.rho.is_some();
    let pair_images: Vec<usize> = sol.table.iter().map(|&(u, v)| u * n + v).collect();
    let bijective = is_bijection(&pair_images);
    let involutive = (0..n * n).all(|i| {
        let (u, v) = sol.table[i];
        pair_images[u * n + v] == i
    });
    let square_free = (0..n).all(|x| sol.r(x, x) == (x, x));
    Ok(PropertyFlags {
        is_ybe: components,
        left_nd,
        right_nd,
        bijective,
        involutive,
        square_free,
    })
}

/// The inverse map `r⁻¹`, itself a solution; its λ family is `λ̂`.
pub fn invert(sol: &Solution) -> Result<Solution> {
    if !sol.flags.bijective {
        return Err(Error::NotBijective);
    }
    let n = sol.n;
    let mut table = vec![(0, 0); n * n];
    for x in 0..n {
        for y in 0..n {
            let (u, v) = sol.r(x, y);
            table[u * n + v] = (x, y);
        }
    }
    Solution::new(n, table)
}

/// Lexicographically least `f` with `(f×f)∘r = s∘(f×f)`, if any.
pub fn isomorphic(a: &Solution, b: &Solution) -> Result<Option<Permutation>> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    let n = a.n;
    Ok(all_permutations(n).find(|f| {
        (0..n).all(|x| {
            (0..n).all(|y| {
                let (u, v) = a.r(x, y);
                b.r(f.apply(x), f.apply(y)) == (f.apply(u), f.apply(v))
            })
        })
    }))
}

/// Outcome of the exterior cyclic condition check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CyclicReport {
    Holds,
    /// `(x, y, y', u, v, u')` with no `z` such that `r(v, y') = (u', z)`.
    Fails {
        witness: [usize; 6],
    },
    /// Some `x` has zero or several `y` with `r(x, y) = (x, y)`.
    HypothesisNotMet {
        x: usize,
        partners: usize,
    },
}

/// Exhaustive check of the cyclic condition under the unique-fixed-partner hypothesis.
pub fn check_cyclic_condition(sol: &Solution) -> CyclicReport {
    let n = sol.n;
    let mut partner = vec![0; n];
    for x in 0..n {
        let fixed: Vec<usize> = (0..n).filter(|&y| sol.r(x, y) == (x, y)).collect();
        if fixed.len() != 1 {
            return CyclicReport::HypothesisNotMet {
                x,
                partners: fixed.len(),
            };
        }
        partner[x] = fixed[0];
    }
    for x in 0..n {
        for y in 0..n {
            let (u, v) = sol.r(x, y);
            let yp = partner[y];
            let up = partner[u];
            if sol.r(v, yp).0 != up {
                return CyclicReport::Fails {
                    witness: [x, y, yp, u, v, up],
                };
            }
        }
    }
    CyclicReport::Holds
}
