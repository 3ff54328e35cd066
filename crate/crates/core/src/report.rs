//! The full analysis pipeline for one solution, emitted as deterministic JSON.

use serde::{Deserialize, Serialize};

use crate::algebra::{annihilator_compare, AnnihilatorReport};
use crate::catalog;
use crate::cocycle::{structure_constants, StructureConstants};
use crate::context::Context;
use crate::corpus::fingerprint;
use crate::engine::WordEngine;
use crate::error::{Error, Result};
use crate::field::Characteristic;
use crate::identities::{identity_suite_for, IdentityResult, Status};
use crate::presentation::Kind;
use crate::sigma::{check_rack_axioms, RackReport};
use crate::solution::{isomorphic, PropertyFlags, Solution};
use crate::spectrum::{
    compare_divisor_chain, gk_dimension, s_of_z, spec_m, z_family, ChainComparison, PrimeM,
};
use crate::subset::Subset;

/// Degree used when sampling words for the uniform φ exponent.
const T_SAMPLE_DEGREE: usize = 2;
/// Highest degree of the annihilator comparison.
const ANNIHILATOR_DEGREE: usize = 3;

/// Budgets and fields for one analysis run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub max_degree: usize,
    pub characteristics: Vec<Characteristic>,
    pub i_max: usize,
    pub k_max: usize,
    pub budget_words: u128,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_degree: 6,
            characteristics: vec![Characteristic(0), Characteristic(2), Characteristic(3)],
            i_max: 4,
            k_max: 8,
            budget_words: crate::engine::budget_from_env(),
        }
    }
}

/// A pipeline stage: its value, or the error that stopped it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Stage<T> {
    Done(T),
    Failed { error: String },
}

impl<T> Stage<T> {
    fn from_result(r: Result<T>) -> Stage<T> {
        match r {
            Ok(v) => Stage::Done(v),
            Err(e) => Stage::Failed {
                error: e.to_string(),
            },
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Stage::Done(v) => Some(v),
            Stage::Failed { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Growth {
    /// Class counts of A by degree, starting at 0.
    pub a: Vec<usize>,
    pub m: Vec<usize>,
    /// Set when the word budget stopped the table before `max_degree`.
    pub truncated_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub z: Subset,
    pub height: usize,
    pub s: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Orbit count of the whole generator set.
    pub s_empty: usize,
    pub z_family: Vec<FamilyEntry>,
    pub gk_dimension: usize,
    pub spec_m: Vec<PrimeM>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCount {
    pub y: Subset,
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStrata {
    pub degree: usize,
    pub strata: Vec<StratumCount>,
}

/// A stated claim compared with the computed answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub claim: String,
    pub computed: ChainComparison,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub id: String,
    pub n: usize,
    pub options: AnalysisOptions,
    pub flags: PropertyFlags,
    /// `sigma[z][x] = σ_z(x)`.
    pub sigma: Vec<Vec<usize>>,
    pub rack: RackReport,
    pub constants: Stage<StructureConstants>,
    pub growth: Stage<Growth>,
    pub spectrum: Stage<Spectrum>,
    pub strata: Stage<Vec<DegreeStrata>>,
    pub discrepancies: Vec<Discrepancy>,
    /// Over the first listed characteristic, degrees `1..=3` capped by `max_degree`.
    pub annihilators: Stage<Vec<AnnihilatorReport>>,
    pub identities: Stage<Vec<IdentityResult>>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            serde_json::to_string(self).expect("report serializes")
        }
    }
}

fn growth_table(a: &WordEngine, m: &WordEngine, max_degree: usize) -> Result<Growth> {
    let mut g = Growth {
        a: Vec::new(),
        m: Vec::new(),
        truncated_at: None,
    };
    for k in 0..=max_degree {
        match (a.count(k), m.count(k)) {
            (Ok(ca), Ok(cm)) => {
                g.a.push(ca);
                g.m.push(cm);
            }
            (Err(Error::BudgetExceeded { .. }), _) | (_, Err(Error::BudgetExceeded { .. })) => {
                g.truncated_at = Some(k);
                break;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(g)
}

fn spectrum(ctx: &Context) -> Result<Spectrum> {
    let family = z_family(&ctx.sys)?;
    let z_family = family
        .iter()
        .map(|q| {
            Ok(FamilyEntry {
                z: q.z,
                height: q.height,
                s: s_of_z(&ctx.sys, q.z)?.s,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Spectrum {
        s_empty: s_of_z(&ctx.sys, Subset::EMPTY)?.s,
        z_family,
        gk_dimension: gk_dimension(&ctx.sys)?,
        spec_m: spec_m(&ctx.sol, &ctx.sys)?,
    })
}

fn strata(
    ctx: &Context,
    max_degree: usize,
    warnings: &mut Vec<String>,
) -> Result<Vec<DegreeStrata>> {
    let mut out = Vec::new();
    for degree in 1..=max_degree {
        match ctx.m.divisibility_strata(degree) {
            Ok(map) => out.push(DegreeStrata {
                degree,
                strata: map
                    .into_iter()
                    .map(|(y, v)| StratumCount {
                        y,
                        classes: v.len(),
                    })
                    .collect(),
            }),
            Err(Error::BudgetExceeded { .. }) => {
                warnings.push(format!(
                    "divisor strata truncated at degree {degree} by the word budget"
                ));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn annihilators(ctx: &Context, opts: &AnalysisOptions) -> Result<Vec<AnnihilatorReport>> {
    let c = opts
        .characteristics
        .first()
        .copied()
        .unwrap_or(Characteristic(0));
    let mut out = Vec::new();
    for kind in [Kind::A, Kind::M] {
        for degree in 1..=opts.max_degree.min(ANNIHILATOR_DEGREE) {
            out.push(
                crate::with_field!(c, f => annihilator_compare(ctx, kind, &f, degree, opts.i_max))?,
            );
        }
    }
    Ok(out)
}

/// Compares the divisor chain of the transposition quandle with the stated
/// equality `M_1 = M_2`. Applies to the quandle and its dual, which share M.
pub fn divisor_chain_discrepancy(ctx: &Context, max_degree: usize) -> Result<Discrepancy> {
    let computed = compare_divisor_chain(ctx, 1, 2, max_degree)?;
    Ok(Discrepancy {
        claim: "M_1 = M_2 for the structure monoid of the transposition quandle".into(),
        agree: computed.equal,
        computed,
    })
}

fn is_transposition_quandle_monoid(sol: &Solution) -> Result<bool> {
    if sol.n() != 3 {
        return Ok(false);
    }
    for c in [
        catalog::transposition_quandle(),
        catalog::transposition_quandle_dual(),
    ] {
        if isomorphic(&c, sol)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Runs every stage under `opts`. Fails only when `sol` is not a bijective
/// left non-degenerate solution; later stage errors are embedded.
pub fn analyze(sol: &Solution, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let flags = sol.flags();
    if !(flags.is_ybe && flags.bijective && flags.left_nd) {
        return Err(Error::MalformedTable(format!(
            "analysis needs a bijective left non-degenerate solution; flags {flags:?}"
        )));
    }
    for c in &opts.characteristics {
        c.validate()?;
    }
    let ctx = Context::with_budget(sol.clone(), opts.budget_words)?;
    let mut warnings = Vec::new();

    let constants = Stage::from_result(structure_constants(
        &ctx,
        2 * ctx.sys.m * ctx.sys.d,
        T_SAMPLE_DEGREE,
    ));
    if let Stage::Done(c) = &constants {
        if c.t.is_none() {
            warnings.push(format!("no uniform phi exponent found up to {}", c.t_cap));
        }
    }
    let growth = Stage::from_result(growth_table(&ctx.a, &ctx.m, opts.max_degree));
    if let Stage::Done(Growth {
        truncated_at: Some(k),
        ..
    }) = &growth
    {
        warnings.push(format!("growth truncated at degree {k} by the word budget"));
    }
    let spectrum = Stage::from_result(spectrum(&ctx));
    let strata = Stage::from_result(strata(&ctx, opts.max_degree, &mut warnings));

    let mut discrepancies = Vec::new();
    if is_transposition_quandle_monoid(sol)? {
        match divisor_chain_discrepancy(&ctx, opts.max_degree) {
            Ok(d) => {
                if !d.agree {
                    warnings.push(format!("claim disagrees with computation: {}", d.claim));
                }
                discrepancies.push(d);
            }
            Err(e) => warnings.push(format!("divisor chain comparison failed: {e}")),
        }
    }

    let annihilators = Stage::from_result(annihilators(&ctx, opts));
    if let Stage::Done(reps) = &annihilators {
        for r in reps {
            if r.steps.iter().any(|s| !s.span_in_nullspace) {
                warnings.push(format!(
                    "{:?} degree {}: eta span not inside the annihilator",
                    r.kind, r.degree
                ));
            }
        }
    }
    let identities =
        Stage::from_result(identity_suite_for(&ctx, &opts.characteristics, opts.k_max));
    if let Stage::Done(res) = &identities {
        let bad = res.iter().filter(|r| r.status != Status::Pass).count();
        if bad > 0 {
            warnings.push(format!("{bad} identity checks did not pass"));
        }
    }

    Ok(AnalysisReport {
        id: fingerprint(sol),
        n: sol.n(),
        options: opts.clone(),
        flags,
        sigma: ctx.sys.sigma.iter().map(|p| p.images().to_vec()).collect(),
        rack: check_rack_axioms(&ctx.sys),
        constants,
        growth,
        spectrum,
        strata,
        discrepancies,
        annihilators,
        identities,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_opts() -> AnalysisOptions {
        AnalysisOptions {
            max_degree: 4,
            ..Default::default()
        }
    }

    #[test]
    fn transposition_quandle_report() {
        let rep = analyze(&catalog::transposition_quandle(), &small_opts()).unwrap();
        let sp = rep.spectrum.value().unwrap();
        assert_eq!(sp.gk_dimension, 1);
        assert_eq!(rep.discrepancies.len(), 1);
        assert!(!rep.discrepancies[0].agree);
        let c = rep.constants.value().unwrap();
        assert_eq!((c.d, c.m), (6, 1));
        assert_eq!(rep.growth.value().unwrap().a.len(), 5);
    }

    #[test]
    fn flip_report() {
        let rep = analyze(&catalog::flip(2), &small_opts()).unwrap();
        assert_eq!(rep.growth.value().unwrap().a, vec![1, 2, 3, 4, 5]);
        assert_eq!(rep.spectrum.value().unwrap().gk_dimension, 2);
        assert!(rep.discrepancies.is_empty());
        assert!(rep
            .identities
            .value()
            .unwrap()
            .iter()
            .all(|r| r.status == Status::Pass));
    }

    #[test]
    fn deterministic_json() {
        let a = analyze(&catalog::five_point_rack(), &small_opts())
            .unwrap()
            .to_json(false);
        let b = analyze(&catalog::five_point_rack(), &small_opts())
            .unwrap()
            .to_json(false);
        assert_eq!(a, b);
        let back: AnalysisReport = serde_json::from_str(&a).unwrap();
        assert_eq!(back.to_json(false), a);
    }

    #[test]
    fn rejects_degenerate() {
        let bad = Solution::from_fn(2, |_, y| (0, y)).unwrap();
        assert!(analyze(&bad, &small_opts()).is_err());
    }

    #[test]
    fn budget_truncation_is_reported() {
        let opts = AnalysisOptions {
            budget_words: 20,
            ..small_opts()
        };
        let rep = analyze(&catalog::flip(3), &opts).unwrap();
        assert!(rep.growth.value().unwrap().truncated_at.is_some());
        assert!(!rep.warnings.is_empty());
    }
}
