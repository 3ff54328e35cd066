//! Small named solutions used throughout the tests and the identity suite.

use crate::error::Result;
use crate::perm::Permutation;
use crate::solution::Solution;

/// `r(x_i, x_j) = (x_j, x_{σ_j(i)})`, a solution iff the σ's are self-distributive.
pub fn rack_form(sigmas: &[Permutation]) -> Result<Solution> {
    Solution::from_fn(sigmas.len(), |i, j| (j, sigmas[j].apply(i)))
}

/// The swap `r(x, y) = (y, x)`.
pub fn flip(n: usize) -> Solution {
    Solution::from_fn(n, |x, y| (y, x)).expect("flip is well formed")
}

/// `r(x, y) = (y, σ(x))` for a fixed permutation σ.
pub fn permutation_solution(sigma: &Permutation) -> Solution {
    Solution::from_fn(sigma.degree(), |x, y| (y, sigma.apply(x))).expect("well formed")
}

fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
    let zero_based: Vec<Vec<usize>> = cycles
        .iter()
        .map(|c| c.iter().map(|i| i - 1).collect())
        .collect();
    let refs: Vec<&[usize]> = zero_based.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(n, &refs).expect("valid cycles")
}

/// The three transpositions of `Sym(3)`: `σ_i` is the transposition fixing `i`.
pub fn transposition_sigmas() -> Vec<Permutation> {
    vec![cyc(3, &[&[2, 3]]), cyc(3, &[&[1, 3]]), cyc(3, &[&[1, 2]])]
}

/// Rack-form solution on the transpositions of `Sym(3)`; `r³ = id`.
pub fn transposition_quandle() -> Solution {
    rack_form(&transposition_sigmas()).expect("well formed")
}

/// `s(x_i, x_j) = (x_{σ_i(j)}, x_i)` with the same σ's; not isomorphic to
/// [`transposition_quandle`] although both have the same monoids.
pub fn transposition_quandle_dual() -> Solution {
    let s = transposition_sigmas();
    Solution::from_fn(3, |i, j| (s[i].apply(j), i)).expect("well formed")
}

/// Five-point rack with `σ_1=σ_2=(1,2)`, `σ_3=σ_5=id`, `σ_4=(3,5)`.
pub fn five_point_rack() -> Solution {
    let id = Permutation::identity(5);
    let t12 = cyc(5, &[&[1, 2]]);
    let t35 = cyc(5, &[&[3, 5]]);
    rack_form(&[t12.clone(), t12, id.clone(), t35, id]).expect("well formed")
}

/// Four-point rack with `σ_1=σ_2=id`, `σ_3=σ_4=(1,2)(3,4)`.
pub fn four_point_rack() -> Solution {
    let id = Permutation::identity(4);
    let dbl = cyc(4, &[&[1, 2], &[3, 4]]);
    rack_form(&[id.clone(), id, dbl.clone(), dbl]).expect("well formed")
}

/// One representative σ per cycle type of `Sym(n)` (cycles of decreasing length).
pub fn cycle_type_representatives(n: usize) -> Vec<Permutation> {
    fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(n)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    partitions(n, n)
        .into_iter()
        .map(|parts| {
            let mut next = 0;
            let cycles: Vec<Vec<usize>> = parts
                .iter()
                .map(|&len| {
                    let c: Vec<usize> = (next..next + len).collect();
                    next += len;
                    c
                })
                .collect();
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            Permutation::from_cycles(n, &refs).expect("valid cycles")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_are_bijective_nondegenerate_solutions() {
        for s in [
            transposition_quandle(),
            transposition_quandle_dual(),
            five_point_rack(),
            four_point_rack(),
            flip(3),
            permutation_solution(&cyc(3, &[&[1, 2, 3]])),
        ] {
            let f = s.flags();
            assert!(f.is_ybe && f.left_nd && f.right_nd && f.bijective, "{s:?}");
        }
    }

    #[test]
    fn cycle_types() {
        assert_eq!(cycle_type_representatives(4).len(), 5);
        let counts: Vec<usize> = cycle_type_representatives(3)
            .iter()
            .map(|p| p.cycles().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 3]);
    }
}
