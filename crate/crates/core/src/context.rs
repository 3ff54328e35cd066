//! A validated solution together with its σ data and word engines.

use std::sync::OnceLock;

use crate::cocycle::{central_elements, CentralElements};
use crate::engine::{budget_from_env, WordEngine};
use crate::error::Result;
use crate::presentation::{Kind, Presentation};
use crate::sigma::{sigma_system, SigmaSystem};
use crate::solution::Solution;

/// Shared state for every computation on one bijective left non-degenerate
/// solution. Engines memoize classes, so a context should be reused.
pub struct Context {
    pub sol: Solution,
    pub sys: SigmaSystem,
    /// Derived monoid, relations `xz = z σ_z(x)`.
    pub a: WordEngine,
    /// Structure monoid, relations `xy = λ_x(y) ρ_y(x)`.
    pub m: WordEngine,
    central: OnceLock<Result<CentralElements>>,
}

impl Context {
    pub fn new(sol: Solution) -> Result<Context> {
        Context::with_budget(sol, budget_from_env())
    }

    pub fn with_budget(sol: Solution, budget: u128) -> Result<Context> {
        let sys = sigma_system(&sol)?;
        let a = WordEngine::with_budget(Presentation::derived_from_sigma(&sys), budget);
        let m = WordEngine::with_budget(Presentation::structure(&sol), budget);
        Ok(Context {
            sol,
            sys,
            a,
            m,
            central: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.sol.n()
    }

    /// `z` and `w` of [`central_elements`], computed once.
    pub fn central(&self) -> Result<CentralElements> {
        self.central.get_or_init(|| central_elements(self)).clone()
    }

    pub fn engine(&self, kind: Kind) -> &WordEngine {
        match kind {
            Kind::A => &self.a,
            Kind::M => &self.m,
        }
    }
}
