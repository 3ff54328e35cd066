//! The permutations `σ_z`, the groups they generate, and the associated rack.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{exponent, generate_group, Permutation};
use crate::presentation::Presentation;
use crate::solution::{invert, Solution};

/// `σ_z(x) = λ_z(ρ_{λ_x⁻¹(z)}(x))`, the groups `Σ = ⟨σ_x⟩`, `𝒢 = ⟨λ_x⟩`,
/// the exponent `d` of `Σ` and `m = |𝒢|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSystem {
    pub sigma: Vec<Permutation>,
    pub sigma_group: BTreeSet<Permutation>,
    pub lambda_group: BTreeSet<Permutation>,
    pub d: usize,
    pub m: usize,
}

impl SigmaSystem {
    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    #[inline]
    pub fn apply(&self, z: usize, x: usize) -> usize {
        self.sigma[z].apply(x)
    }
}

/// Computes σ from both of its expressions and checks that they agree, then
/// verifies `λ_x ∘ σ_y = σ_{λ_x(y)} ∘ λ_x` for all `x, y`.
pub fn sigma_system(sol: &Solution) -> Result<SigmaSystem> {
    sol.require_bijective_left_nd()?;
    let n = sol.n();
    let lambdas = sol.lambdas()?;
    let inverse = invert(sol)?;
    let lambda_hat = inverse.lambdas()?;
    let lambda_inv: Vec<Permutation> = lambdas.iter().map(|l| l.inverse()).collect();

    let mut sigma = Vec::with_capacity(n);
    for z in 0..n {
        let hat_inv = lambda_hat[z].inverse();
        let mut images = Vec::with_capacity(n);
        for x in 0..n {
            let via_rho = sol.lam(z, sol.rho_of(lambda_inv[x].apply(z), x));
            let via_inverse = lambdas[z].apply(hat_inv.apply(x));
            if via_rho != via_inverse {
                return Err(Error::SigFormulaMismatch { z, x });
            }
            images.push(via_rho);
        }
        sigma.push(
            Permutation::from_images(images).map_err(|_| Error::SigFormulaMismatch { z, x: 0 })?,
        );
    }

    for x in 0..n {
        for y in 0..n {
            let lhs = lambdas[x].compose(&sigma[y]);
            let rhs = sigma[lambdas[x].apply(y)].compose(&lambdas[x]);
            if lhs != rhs {
                return Err(Error::IntertwiningViolation { x, y });
            }
        }
    }

    let sigma_group = generate_group(n, &sigma);
    let lambda_group = generate_group(n, lambdas);
    let d = exponent(&sigma_group);
    let m = lambda_group.len();
    Ok(SigmaSystem {
        sigma,
        sigma_group,
        lambda_group,
        d,
        m,
    })
}

/// `s(x, y) = (y, σ_y(x))`. Its structure monoid has the same defining
/// relations as the derived monoid of `sol`; both facts are checked.
pub fn rack_solution(sol: &Solution) -> Result<Solution> {
    let sys = sigma_system(sol)?;
    let s = Solution::from_fn(sol.n(), |x, y| (y, sys.apply(y, x)))?;
    if !s.flags().is_ybe {
        return Err(Error::InternalInconsistency(
            "rack solution fails the braid relation".into(),
        ));
    }
    let derived = Presentation::derived_from_sigma(&sys);
    let structure = Presentation::structure(&s);
    if derived.relation_set() != structure.relation_set() {
        return Err(Error::InternalInconsistency(
            "rack solution relations differ from the derived monoid relations".into(),
        ));
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RackReport {
    /// `(x◁y)◁z = (x◁z)◁(y◁z)` with `x◁y = σ_y(x)`.
    pub self_distributive: bool,
    /// `x ↦ x◁y` is a bijection for every `y`.
    pub right_translations_bijective: bool,
    pub is_rack: bool,
    /// `σ_y(y) = y` for every `y`.
    pub quandle: bool,
    /// A triple `(x, y, z)` violating self-distributivity.
    pub witness: Option<[usize; 3]>,
}

pub fn check_rack_axioms(sys: &SigmaSystem) -> RackReport {
    let n = sys.n();
    let mut witness = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = sys.apply(z, sys.apply(y, x));
                let rhs = sys.apply(sys.apply(z, y), sys.apply(z, x));
                if lhs != rhs {
                    witness = Some([x, y, z]);
                    break 'outer;
                }
            }
        }
    }
    let bijective = sys
        .sigma
        .iter()
        .all(|s| crate::perm::is_bijection(s.images()));
    let self_distributive = witness.is_none();
    RackReport {
        self_distributive,
        right_translations_bijective: bijective,
        is_rack: self_distributive && bijective,
        quandle: (0..n).all(|y| sys.apply(y, y) == y),
        witness,
    }
}
