//! Enumeration of non-degenerate solutions up to isomorphism.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{all_permutations, Permutation};
use crate::solution::{PropertyFlags, Solution};

/// Restricts the search space and the emitted solutions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filter {
    /// Every flag set here must hold for emitted solutions.
    pub flags: PropertyFlags,
    /// Only `λ_x = id` for all `x`.
    pub rack_form: bool,
    /// A fixed λ family.
    pub lambda: Option<Vec<Permutation>>,
}

impl Filter {
    pub fn involutive() -> Filter {
        Filter {
            flags: PropertyFlags {
                involutive: true,
                ..Default::default()
            },
            ..Default::default()
        }
    }

    pub fn rack_form() -> Filter {
        Filter {
            rack_form: true,
            ..Default::default()
        }
    }

    fn restricts_search(&self) -> bool {
        self.flags.involutive || self.rack_form || self.lambda.is_some()
    }
}

/// All n-tuples of permutations of `0..n`, in lexicographic order.
fn families(n: usize) -> Vec<Vec<Permutation>> {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// The unique ρ making `r` involutive for a given λ: `ρ_y(x) = λ⁻¹_{λ_x(y)}(x)`.
fn involutive_rho(lambda: &[Permutation]) -> Option<Vec<Permutation>> {
    let n = lambda.len();
    let inv: Vec<Permutation> = lambda.iter().map(Permutation::inverse).collect();
    (0..n)
        .map(|y| {
            Permutation::from_images((0..n).map(|x| inv[lambda[x].apply(y)].apply(x)).collect())
                .ok()
        })
        .collect()
}

/// Non-degenerate solutions on `n` points passing `filter`, one per
/// isomorphism class, each in canonical labeling, sorted by canonical table.
///
/// The search runs over pairs of λ and ρ families, so only solutions with
/// bijective λ_x and ρ_y are produced. Unrestricted search is limited to
/// `n ≤ 3`; `n = 4` requires a restricting filter.
pub fn enumerate_solutions(n: usize, filter: &Filter) -> Result<Vec<Solution>> {
    if n == 0 {
        return Err(Error::TooLarge("n must be positive".into()));
    }
    if n > 4 || (n == 4 && !filter.restricts_search()) {
        return Err(Error::TooLarge(format!(
            "n={n} needs n <= 3, or n = 4 with an involutive, rack-form or fixed-lambda filter"
        )));
    }
    if let Some(l) = &filter.lambda {
        if l.len() != n || l.iter().any(|p| p.degree() != n) {
            return Err(Error::SizeMismatch(n, l.len()));
        }
    }
    let lambda_families: Vec<Vec<Permutation>> = if let Some(l) = &filter.lambda {
        vec![l.clone()]
    } else if filter.rack_form {
        vec![vec![Permutation::identity(n); n]]
    } else {
        families(n)
    };
    let rho_families = if filter.flags.involutive {
        Vec::new()
    } else {
        families(n)
    };

    let found: Vec<(Vec<(usize, usize)>, Solution)> = lambda_families
        .par_iter()
        .flat_map_iter(|lambda| {
            let candidates: Vec<Vec<Permutation>> = if filter.flags.involutive {
                involutive_rho(lambda).into_iter().collect()
            } else {
                rho_families.clone()
            };
            candidates.into_iter().filter_map(move |rho| {
                let sol = Solution::from_components(lambda, &rho).ok()?;
                let f = sol.flags();
                if !f.is_ybe || !f.satisfies(&filter.flags) {
                    return None;
                }
                let (table, _) = sol.canonical_form();
                Some((table, sol))
            })
        })
        .collect();

    let mut classes: BTreeMap<Vec<(usize, usize)>, ()> = BTreeMap::new();
    for (table, _) in found {
        classes.insert(table, ());
    }
    classes
        .into_keys()
        .map(|table| Solution::new(n, table))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::solution::isomorphic;

    fn contains_iso(list: &[Solution], s: &Solution) -> bool {
        list.iter().any(|t| isomorphic(t, s).unwrap().is_some())
    }

    #[test]
    fn one_point() {
        let all = enumerate_solutions(1, &Filter::default()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].r(0, 0), (0, 0));
    }

    #[test]
    fn two_points_contain_known_solutions() {
        let all = enumerate_solutions(2, &Filter::default()).unwrap();
        assert!(contains_iso(&all, &catalog::flip(2)));
        let sigma = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        assert!(contains_iso(&all, &catalog::permutation_solution(&sigma)));
        assert!(all.windows(2).all(|w| w[0].table() < w[1].table()));
        for s in &all {
            assert!(s.flags().is_ybe);
        }
    }

    #[test]
    fn rack_form_three_points() {
        let racks = enumerate_solutions(3, &Filter::rack_form()).unwrap();
        assert!(contains_iso(&racks, &catalog::transposition_quandle()));
        assert!(racks.iter().all(Solution::is_rack_form));
    }

    #[test]
    fn fixed_lambda_family() {
        let s = catalog::transposition_quandle_dual();
        let f = Filter {
            lambda: Some(s.lambdas().unwrap().to_vec()),
            ..Default::default()
        };
        let found = enumerate_solutions(3, &f).unwrap();
        assert!(contains_iso(&found, &s));
    }

    #[test]
    fn involutive_filter_matches_full_search() {
        for n in 1..=3 {
            let full: Vec<Solution> = enumerate_solutions(n, &Filter::default())
                .unwrap()
                .into_iter()
                .filter(|s| s.flags().involutive)
                .collect();
            assert_eq!(full, enumerate_solutions(n, &Filter::involutive()).unwrap());
        }
    }

    /// Oracle over every table with bijective λ's and arbitrary ρ: bijective
    /// left non-degenerate solutions are right non-degenerate, so the
    /// permutation-pair search misses nothing.
    #[test]
    fn bijective_left_nd_is_right_nd() {
        for n in 1..=3usize {
            let lambdas = families(n);
            let rho_count = n.pow((n * n) as u32);
            let mut solutions = 0;
            for lambda in &lambdas {
                for code in 0..rho_count {
                    let mut rho = vec![0usize; n * n];
                    let mut c = code;
                    for v in rho.iter_mut() {
                        *v = c % n;
                        c /= n;
                    }
                    let r = |x: usize, y: usize| (lambda[x].apply(y), rho[y * n + x]);
                    let ybe = (0..n).all(|x| {
                        (0..n).all(|y| {
                            (0..n).all(|z| {
                                let (a, b) = r(x, y);
                                let (b, c) = r(b, z);
                                let (a, b) = r(a, b);
                                let (d, e) = r(y, z);
                                let (f, d) = r(x, d);
                                let (d, e) = r(d, e);
                                (a, b, c) == (f, d, e)
                            })
                        })
                    });
                    if !ybe {
                        continue;
                    }
                    let mut hit = vec![false; n * n];
                    for x in 0..n {
                        for y in 0..n {
                            let (u, v) = r(x, y);
                            hit[u * n + v] = true;
                        }
                    }
                    if hit.iter().all(|&h| h) {
                        solutions += 1;
                        for y in 0..n {
                            let images: Vec<usize> = (0..n).map(|x| rho[y * n + x]).collect();
                            assert!(
                                crate::perm::is_bijection(&images),
                                "n={n} lambda={lambda:?} rho={rho:?}"
                            );
                        }
                    }
                }
            }
            assert!(solutions > 0);
        }
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            enumerate_solutions(4, &Filter::default()),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            enumerate_solutions(5, &Filter::rack_form()),
            Err(Error::TooLarge(_))
        ));
    }
}
