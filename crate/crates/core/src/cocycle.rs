//! The bijective 1-cocycle `ψ: M → A`, the actions `θ` and `φ`, central
//! elements, socle data and bounded cancellation tests.
//!
//! For an M-word `y_1 .. y_k`, `ψ(w)_i = (λ_{y_1} ∘ .. ∘ λ_{y_{i-1}})(y_i)` and
//! `θ(w) = λ_{y_1} ∘ .. ∘ λ_{y_k}`. On A-words, `φ` satisfies `φ(ψ(w)) = θ(w)`.
//! Writing `a = z_1 c`, the cocycle rule `ψ(y w') = y · λ_y(ψ(w'))` gives
//! `φ(z_1 c) = λ_{z_1} ∘ φ(λ_{z_1}⁻¹(c))`, with `λ⁻¹` applied letterwise;
//! this recursion is how `φ` is evaluated.

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::presentation::Kind;
use crate::solution::Solution;
use crate::word::{all_words, Word};

/// `ψ(w)` together with `θ(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocyclePair {
    pub a_word: Word,
    pub theta: Permutation,
}

pub fn psi_theta(sol: &Solution, w: &Word) -> Result<CocyclePair> {
    let lambda = sol.lambdas()?;
    w.check_letters(sol.n())?;
    let mut acc = Permutation::identity(sol.n());
    let mut out = Vec::with_capacity(w.degree());
    for &y in w.letters() {
        out.push(acc.apply(y));
        acc = acc.compose(&lambda[y]);
    }
    Ok(CocyclePair {
        a_word: Word(out),
        theta: acc,
    })
}

/// `θ(w)` alone.
pub fn theta(sol: &Solution, w: &Word) -> Result<Permutation> {
    Ok(psi_theta(sol, w)?.theta)
}

/// The free-monoid word `w` with `ψ(w) = a` letter for letter.
pub fn psi_inverse(sol: &Solution, a: &Word) -> Result<Word> {
    let lambda = sol.lambdas()?;
    a.check_letters(sol.n())?;
    let mut inv = Permutation::identity(sol.n());
    let mut out = Vec::with_capacity(a.degree());
    for &x in a.letters() {
        let y = inv.apply(x);
        out.push(y);
        inv = lambda[y].inverse().compose(&inv);
    }
    Ok(Word(out))
}

/// `φ(a)` by the head recursion `φ(z_1 c) = λ_{z_1} ∘ φ(λ_{z_1}⁻¹(c))`.
pub fn phi(sol: &Solution, a: &Word) -> Result<Permutation> {
    let lambda = sol.lambdas()?;
    a.check_letters(sol.n())?;
    let mut acc = Permutation::identity(sol.n());
    let mut rest: Vec<usize> = a.letters().to_vec();
    while let Some((&z, tail)) = rest.split_first() {
        acc = acc.compose(&lambda[z]);
        let inv = lambda[z].inverse();
        rest = tail.iter().map(|&c| inv.apply(c)).collect();
    }
    Ok(acc)
}

/// `τ(x) = λ_x⁻¹(x)` and the least `p ≥ 1` with `τ^{2p} = τ^p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauData {
    pub tau: Vec<usize>,
    pub p: usize,
}

pub fn tau_data(sol: &Solution) -> Result<TauData> {
    let lambda = sol.lambdas()?;
    let n = sol.n();
    let tau: Vec<usize> = (0..n).map(|x| lambda[x].inverse().apply(x)).collect();
    let compose = |f: &[usize], g: &[usize]| -> Vec<usize> { g.iter().map(|&x| f[x]).collect() };
    // powers[k] = τ^k; some p ≤ n! works since τ^i is eventually periodic
    let mut powers: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut p = 1;
    loop {
        while powers.len() <= 2 * p {
            let next = compose(&tau, powers.last().expect("nonempty"));
            powers.push(next);
        }
        if powers[2 * p] == powers[p] {
            return Ok(TauData { tau, p });
        }
        p += 1;
    }
}

/// Verifies `ψ(x τ(x) .. τ^{k-1}(x)) = x^k` in A and `θ` of the left side
/// equal to `φ(x^k)`, for `k = 1..=kmax`.
pub fn check_power_factorization(ctx: &Context, x: usize, kmax: usize) -> Result<()> {
    let tau = tau_data(&ctx.sol)?.tau;
    let mut letters = Vec::with_capacity(kmax);
    let mut cur = x;
    for k in 1..=kmax {
        letters.push(cur);
        cur = tau[cur];
        let u = Word(letters.clone());
        let pair = psi_theta(&ctx.sol, &u)?;
        let power = Word::power(x, k);
        if !ctx.a.equal(&pair.a_word, &power)? || pair.theta != phi(&ctx.sol, &power)? {
            return Err(Error::FactorizationViolation { x, exponent: k });
        }
    }
    Ok(())
}

/// Central elements `z = x_1^d .. x_n^d` of A and `w = ψ⁻¹(z^k)` of M, `k`
/// least with `φ(z^k) = id`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralElements {
    pub z: Word,
    pub k: usize,
    pub w: Word,
}

pub fn central_elements(ctx: &Context) -> Result<CentralElements> {
    let n = ctx.n();
    let d = ctx.sys.d;
    let z = Word::from_exponents(&vec![d; n]);
    if !commutes_with_generators(ctx, Kind::A, &z)? {
        return Err(Error::InternalInconsistency(format!(
            "{z} is not central in A"
        )));
    }
    // φ(z^k) = φ(z)^k, so k divides |𝒢|
    for k in 1..=ctx.sys.m {
        let zk = z.repeat(k);
        if phi(&ctx.sol, &zk)?.is_identity() {
            let w = psi_inverse(&ctx.sol, &zk)?;
            if !theta(&ctx.sol, &w)?.is_identity() {
                return Err(Error::CocycleViolation(format!(
                    "theta({w}) != id although phi(psi(w)) = id"
                )));
            }
            return Ok(CentralElements { z, k, w });
        }
    }
    Err(Error::InternalInconsistency(format!(
        "phi(z^k) != id for all k <= |G| = {}",
        ctx.sys.m
    )))
}

/// `x·w = w·x` for every generator `x`, in the given monoid.
pub fn commutes_with_generators(ctx: &Context, kind: Kind, w: &Word) -> Result<bool> {
    let engine = ctx.engine(kind);
    for x in 0..ctx.n() {
        let left = Word::letter(x).concat(w);
        let right = w.concat(&Word::letter(x));
        if !engine.equal(&left, &right)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `θ(w) = id` and `ψ(w)` central in A.
pub fn socle_test(ctx: &Context, w: &Word) -> Result<bool> {
    let pair = psi_theta(&ctx.sol, w)?;
    Ok(pair.theta.is_identity() && commutes_with_generators(ctx, Kind::A, &pair.a_word)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleReport {
    /// `p·q` with `q = m·d`.
    pub pq: usize,
    /// Generators `x` whose element `ψ⁻¹(x^{pq})` passed the socle test.
    pub verified: Vec<usize>,
    pub failed: Vec<usize>,
    /// Checks of `u·t_x = t_{θ(u)(x)}·u` in M, `t_x = ψ⁻¹(x^{pq})`, for all `u` with `1 ≤ |u| ≤ normality_degree`.
    pub normality_degree: usize,
    pub normality_checked: usize,
    pub normality_failures: Vec<(Word, usize)>,
    /// Set when a degree exceeded the budget; later checks were skipped.
    pub truncated: Option<String>,
}

pub fn socle_exponent_check(ctx: &Context, normality_degree: usize) -> Result<SocleReport> {
    let n = ctx.n();
    let p = tau_data(&ctx.sol)?.p;
    let pq = p * ctx.sys.m * ctx.sys.d;
    let mut report = SocleReport {
        pq,
        verified: Vec::new(),
        failed: Vec::new(),
        normality_degree,
        normality_checked: 0,
        normality_failures: Vec::new(),
        truncated: None,
    };
    let t: Vec<Word> = (0..n)
        .map(|x| psi_inverse(&ctx.sol, &Word::power(x, pq)))
        .collect::<Result<_>>()?;
    for (x, tx) in t.iter().enumerate() {
        match socle_test(ctx, tx) {
            Ok(true) => report.verified.push(x),
            Ok(false) => report.failed.push(x),
            Err(e @ Error::BudgetExceeded { .. }) => {
                report.truncated = Some(e.to_string());
                return Ok(report);
            }
            Err(e) => return Err(e),
        }
    }
    for deg in 1..=normality_degree {
        for u in all_words(n, deg) {
            let th = theta(&ctx.sol, &u)?;
            for x in 0..n {
                let lhs = u.concat(&t[x]);
                let rhs = t[th.apply(x)].concat(&u);
                match ctx.m.equal(&lhs, &rhs) {
                    Ok(true) => report.normality_checked += 1,
                    Ok(false) => {
                        report.normality_checked += 1;
                        report.normality_failures.push((u.clone(), x));
                    }
                    Err(e @ Error::BudgetExceeded { .. }) => {
                        report.truncated = Some(e.to_string());
                        return Ok(report);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(report)
}

/// A uniform exponent `t` with `φ(a^t) = id`, certified on every generator
/// and on every word of degree `2..=sample_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiExponent {
    pub t: usize,
    pub cap: usize,
    pub sample_degree: usize,
    pub sampled_words: usize,
}

pub fn phi_exponent_bounded(
    sol: &Solution,
    cap: usize,
    sample_degree: usize,
) -> Result<Option<PhiExponent>> {
    let n = sol.n();
    let mut samples: Vec<Word> = (0..n).map(Word::letter).collect();
    for deg in 2..=sample_degree {
        samples.extend(all_words(n, deg));
    }
    'search: for t in 1..=cap {
        for a in &samples {
            if !phi(sol, &a.repeat(t))?.is_identity() {
                continue 'search;
            }
        }
        return Ok(Some(PhiExponent {
            t,
            cap,
            sample_degree,
            sampled_words: samples.len() - n,
        }));
    }
    Ok(None)
}

/// The constants `d = exp Σ`, `m = |𝒢|`, `p`, `q = m·d` and the bounded `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstants {
    pub d: usize,
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub t: Option<PhiExponent>,
    pub t_cap: usize,
}

pub fn structure_constants(
    ctx: &Context,
    t_cap: usize,
    sample_degree: usize,
) -> Result<StructureConstants> {
    let p = tau_data(&ctx.sol)?.p;
    Ok(StructureConstants {
        d: ctx.sys.d,
        m: ctx.sys.m,
        p,
        q: ctx.sys.m * ctx.sys.d,
        t: phi_exponent_bounded(&ctx.sol, t_cap, sample_degree)?,
        t_cap,
    })
}

/// Result of a bounded search for `w1·c^i = w2·c^i` with `c` central.
/// `NotRelatedUpTo` is not a proof of unrelatedness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EtaOutcome {
    Related {
        i: usize,
    },
    NotRelatedUpTo {
        i_max: usize,
    },
    /// M only: `θ(w1) ≠ θ(w2)`, which rules out `w1·c^i = w2·c^i` for every `i`.
    ThetaDiffers,
}

/// Multiplies by `z^i` in A, or by the central `w^i` in M, for `i = 1..=i_max`.
pub fn eta_test(
    ctx: &Context,
    kind: Kind,
    w1: &Word,
    w2: &Word,
    i_max: usize,
) -> Result<EtaOutcome> {
    if w1.degree() != w2.degree() {
        return Err(Error::InternalInconsistency(
            "eta_test needs words of equal degree".into(),
        ));
    }
    let central = ctx.central()?;
    let c = match kind {
        Kind::A => central.z,
        Kind::M => {
            if theta(&ctx.sol, w1)? != theta(&ctx.sol, w2)? {
                return Ok(EtaOutcome::ThetaDiffers);
            }
            central.w
        }
    };
    let engine = ctx.engine(kind);
    let deg = w1.degree();
    let (mut c1, mut c2) = (engine.class_id(w1)?, engine.class_id(w2)?);
    for i in 1..=i_max {
        let k = deg + (i - 1) * c.degree();
        c1 = engine.extend_class(k, c1, c.letters())?;
        c2 = engine.extend_class(k, c2, c.letters())?;
        if c1 == c2 {
            return Ok(EtaOutcome::Related { i });
        }
    }
    Ok(EtaOutcome::NotRelatedUpTo { i_max })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub max_degree: usize,
    pub words_checked: usize,
    pub violations: Vec<String>,
}

/// Exhaustive check over all words of degree `≤ max_degree`: round trips,
/// `φ∘ψ = θ`, constancy of `(ψ, θ)` on M-classes and of `φ` on A-classes,
/// and multiplicativity on all splittings.
pub fn verify_cocycle(ctx: &Context, max_degree: usize) -> Result<CocycleReport> {
    let sol = &ctx.sol;
    let n = ctx.n();
    let mut report = CocycleReport {
        max_degree,
        ..Default::default()
    };
    let note = |v: &mut Vec<String>, msg: String| {
        if v.len() < 20 {
            v.push(msg);
        }
    };
    for deg in 0..=max_degree {
        let m_count = ctx.m.count(deg)?;
        let a_count = ctx.a.count(deg)?;
        let mut m_seen: Vec<Option<(usize, Permutation)>> = vec![None; m_count];
        let mut a_seen: Vec<Option<Permutation>> = vec![None; a_count];
        for w in all_words(n, deg) {
            report.words_checked += 1;
            let pair = psi_theta(sol, &w)?;
            if psi_inverse(sol, &pair.a_word)? != w {
                note(
                    &mut report.violations,
                    format!("psi_inverse(psi({w})) != {w}"),
                );
            }
            if psi_theta(sol, &psi_inverse(sol, &w)?)?.a_word != w {
                note(
                    &mut report.violations,
                    format!("psi(psi_inverse({w})) != {w}"),
                );
            }
            if phi(sol, &pair.a_word)? != pair.theta {
                note(
                    &mut report.violations,
                    format!("phi(psi({w})) != theta({w})"),
                );
            }
            let cm = ctx.m.class_id(&w)?;
            let ca = ctx.a.class_id(&pair.a_word)?;
            match &m_seen[cm] {
                None => m_seen[cm] = Some((ca, pair.theta.clone())),
                Some((a0, t0)) => {
                    if *a0 != ca || *t0 != pair.theta {
                        note(
                            &mut report.violations,
                            format!("psi/theta not constant on the M-class of {w}"),
                        );
                    }
                }
            }
            let own = ctx.a.class_id(&w)?;
            let f = phi(sol, &w)?;
            match &a_seen[own] {
                None => a_seen[own] = Some(f),
                Some(f0) => {
                    if *f0 != f {
                        note(
                            &mut report.violations,
                            format!("phi not constant on the A-class of {w}"),
                        );
                    }
                }
            }
            for split in 1..deg {
                let (u, v) = (Word(w.0[..split].to_vec()), Word(w.0[split..].to_vec()));
                let pu = psi_theta(sol, &u)?;
                let pv = psi_theta(sol, &v)?;
                let moved = Word(
                    pv.a_word
                        .letters()
                        .iter()
                        .map(|&x| pu.theta.apply(x))
                        .collect(),
                );
                if pu.theta.compose(&pv.theta) != pair.theta
                    || pu.a_word.concat(&moved) != pair.a_word
                {
                    note(
                        &mut report.violations,
                        format!("cocycle rule fails at {u}·{v}"),
                    );
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn w(names: &[usize]) -> Word {
        Word::from_names(names)
    }

    #[test]
    fn dual_cocycle_by_hand() {
        let s = catalog::transposition_quandle_dual();
        let pair = psi_theta(&s, &w(&[1, 2])).unwrap();
        assert_eq!(pair.a_word, w(&[1, 3]));
        assert_eq!(psi_inverse(&s, &w(&[1, 3])).unwrap(), w(&[1, 2]));
        let sig = catalog::transposition_sigmas();
        assert_eq!(phi(&s, &w(&[1, 2])).unwrap(), sig[0].compose(&sig[2]));
        assert_eq!(phi(&s, &w(&[1])).unwrap(), sig[0]);
    }

    #[test]
    fn rack_form_cocycle_is_trivial() {
        let r = catalog::transposition_quandle();
        let u = w(&[3, 1, 2, 2]);
        let pair = psi_theta(&r, &u).unwrap();
        assert_eq!(pair.a_word, u);
        assert!(pair.theta.is_identity());
        assert_eq!(psi_inverse(&r, &u).unwrap(), u);
        assert!(phi(&r, &u).unwrap().is_identity());
    }

    #[test]
    fn tau_examples() {
        for sol in [
            catalog::transposition_quandle(),
            catalog::flip(3),
            catalog::transposition_quandle_dual(),
        ] {
            let t = tau_data(&sol).unwrap();
            assert_eq!(t.tau, vec![0, 1, 2]);
            assert_eq!(t.p, 1);
        }
    }

    #[test]
    fn tau_idempotent_power() {
        // λ_0 = (0 1 2), others chosen so that τ is not a bijection
        let l = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let sol = Solution::from_fn(3, |x, y| (if x == 0 { l.apply(y) } else { y }, x)).unwrap();
        let t = tau_data(&sol).unwrap();
        assert_eq!(t.tau, vec![2, 1, 2]);
        assert_eq!(t.p, 1);
    }

    #[test]
    fn central_elements_examples() {
        let ctx = Context::new(catalog::flip(2)).unwrap();
        let c = central_elements(&ctx).unwrap();
        assert_eq!(c.z, w(&[1, 2]));
        assert_eq!(c.k, 1);
        assert!(socle_test(&ctx, &c.w).unwrap());

        let ctx = Context::new(catalog::transposition_quandle()).unwrap();
        let c = central_elements(&ctx).unwrap();
        assert_eq!(c.z, Word::from_exponents(&[6, 6, 6]));
        assert_eq!(c.w, c.z);

        let ctx = Context::new(catalog::transposition_quandle_dual()).unwrap();
        let c = central_elements(&ctx).unwrap();
        assert!(socle_test(&ctx, &c.w).unwrap());
        assert!(!socle_test(&ctx, &w(&[1])).unwrap());
    }

    #[test]
    fn socle_exponents() {
        let ctx = Context::new(catalog::transposition_quandle()).unwrap();
        let rep = socle_exponent_check(&ctx, 2).unwrap();
        assert_eq!(rep.pq, 6);
        assert_eq!(rep.verified, vec![0, 1, 2]);
        assert!(rep.normality_failures.is_empty() && rep.truncated.is_none());

        let ctx = Context::new(catalog::flip(2)).unwrap();
        let rep = socle_exponent_check(&ctx, 2).unwrap();
        assert_eq!(rep.pq, 1);
        assert_eq!(rep.verified, vec![0, 1]);
    }

    #[test]
    fn power_factorization() {
        for sol in [
            catalog::transposition_quandle_dual(),
            catalog::flip(3),
            catalog::five_point_rack(),
        ] {
            let ctx = Context::new(sol).unwrap();
            for x in 0..ctx.n() {
                check_power_factorization(&ctx, x, 4).unwrap();
            }
        }
    }

    #[test]
    fn phi_exponent() {
        let r = catalog::transposition_quandle();
        assert_eq!(phi_exponent_bounded(&r, 10, 3).unwrap().unwrap().t, 1);
        let s = catalog::transposition_quandle_dual();
        let t = phi_exponent_bounded(&s, 12, 3).unwrap().unwrap();
        for x in 0..3 {
            assert!(phi(&s, &Word::power(x, t.t)).unwrap().is_identity());
        }
        assert!(phi_exponent_bounded(&s, 1, 2).unwrap().is_none());
    }

    #[test]
    fn eta_examples() {
        let sigma = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let ctx = Context::new(catalog::permutation_solution(&sigma)).unwrap();
        assert_eq!(
            eta_test(&ctx, Kind::A, &w(&[1, 1]), &w(&[2, 1]), 4).unwrap(),
            EtaOutcome::Related { i: 1 }
        );
        let flip = Context::new(catalog::flip(2)).unwrap();
        assert_eq!(
            eta_test(&flip, Kind::A, &w(&[1, 1]), &w(&[1, 2]), 4).unwrap(),
            EtaOutcome::NotRelatedUpTo { i_max: 4 }
        );
        assert_eq!(
            eta_test(&flip, Kind::M, &w(&[1]), &w(&[1]), 2).unwrap(),
            EtaOutcome::Related { i: 1 }
        );
        let dual = Context::new(catalog::transposition_quandle_dual()).unwrap();
        assert_eq!(
            eta_test(&dual, Kind::M, &w(&[1]), &w(&[2]), 2).unwrap(),
            EtaOutcome::ThetaDiffers
        );
    }

    #[test]
    fn cocycle_verification_on_examples() {
        for sol in [
            catalog::transposition_quandle_dual(),
            catalog::four_point_rack(),
        ] {
            let ctx = Context::new(sol).unwrap();
            let rep = verify_cocycle(&ctx, 4).unwrap();
            assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        }
    }
}
