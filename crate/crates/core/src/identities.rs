//! Fixed identity suites in the derived structure algebra `K[A]`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraElement};
use crate::catalog;
use crate::context::Context;
use crate::error::Result;
use crate::field::{Characteristic, Field};
use crate::perm::Permutation;
use crate::solution::{isomorphic, Solution};
use crate::word::Word;

/// A linear combination `Σ c_i w_i` of 0-based words.
pub type Combination = Vec<(i64, Word)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// The power of the product is zero.
    Vanishes,
    /// The product is nonzero and some power up to `k_max` is zero.
    NonzeroNilpotent,
    /// No power up to `k_max` is zero.
    NoVanishingPower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub name: String,
    pub factors: Vec<Combination>,
    pub power: usize,
    pub expect: Expectation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub example: String,
    pub identity: String,
    pub characteristic: u64,
    pub status: Status,
    /// Least vanishing power found, for nilpotency checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    /// Search bound for nilpotency checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A solution together with identities expected to hold in its `K[A]`.
#[derive(Clone, Debug)]
pub struct Suite {
    pub example: String,
    pub solution: Solution,
    pub identities: Vec<Identity>,
}

fn x(i: usize) -> Word {
    Word::from_names(&[i])
}

fn diff(a: usize, b: usize) -> Combination {
    vec![(1, x(a)), (-1, x(b))]
}

fn single(w: Word) -> Combination {
    vec![(1, w)]
}

fn vanishing(name: String, factors: Vec<Combination>, power: usize) -> Identity {
    Identity {
        name,
        factors,
        power,
        expect: Expectation::Vanishes,
    }
}

/// `a(b - c) = 0` with 1-based names.
fn annihilates(a: usize, b: usize, c: usize) -> Identity {
    vanishing(
        format!("x{a}(x{b}-x{c}) = 0"),
        vec![single(x(a)), diff(b, c)],
        1,
    )
}

/// `(x - σ(x))^d = 0` for every `x` moved by σ.
fn constant_sigma_identities(sigma: &Permutation) -> Vec<Identity> {
    let d = sigma.order();
    (0..sigma.degree())
        .filter(|&i| sigma.apply(i) != i)
        .map(|i| {
            let (a, b) = (i + 1, sigma.apply(i) + 1);
            vanishing(format!("(x{a}-x{b})^{d} = 0"), vec![diff(a, b)], d)
        })
        .collect()
}

fn constant_sigma_suite(cycles: &[&[usize]], n: usize) -> Suite {
    let sigma = Permutation::from_cycles(n, cycles).expect("valid cycles");
    Suite {
        example: format!("constant-sigma n={n} sigma={}", cycle_label(&sigma)),
        identities: constant_sigma_identities(&sigma),
        solution: catalog::permutation_solution(&sigma),
    }
}

fn cycle_label(p: &Permutation) -> String {
    p.cycles()
        .iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            format!(
                "({})",
                c.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect()
}

/// The probe `x1(x2 - x3)` on the transposition quandle, whose behaviour
/// depends on whether the characteristic is 3.
fn transposition_probe(c: Characteristic) -> Identity {
    let factors = vec![single(x(1)), diff(2, 3)];
    if c.0 == 3 {
        Identity {
            name: "x1(x2-x3) != 0 and nilpotent".into(),
            factors,
            power: 1,
            expect: Expectation::NonzeroNilpotent,
        }
    } else {
        Identity {
            name: "x1(x2-x3) has no vanishing power".into(),
            factors,
            power: 1,
            expect: Expectation::NoVanishingPower,
        }
    }
}

/// The catalog suites whose identities hold in every characteristic, plus
/// the characteristic-dependent transposition quandle probe.
pub fn catalog_suites(c: Characteristic) -> Vec<Suite> {
    vec![
        Suite {
            example: "five-point-rack".into(),
            solution: catalog::five_point_rack(),
            identities: vec![
                annihilates(4, 3, 5),
                annihilates(1, 1, 2),
                annihilates(2, 1, 2),
            ],
        },
        Suite {
            example: "four-point-rack".into(),
            solution: catalog::four_point_rack(),
            identities: vec![
                annihilates(3, 3, 4),
                annihilates(4, 3, 4),
                annihilates(3, 1, 2),
                annihilates(4, 1, 2),
            ],
        },
        constant_sigma_suite(&[&[0, 1]], 2),
        constant_sigma_suite(&[&[0, 1, 2]], 3),
        constant_sigma_suite(&[&[0, 1]], 3),
        Suite {
            example: "transposition-quandle".into(),
            solution: catalog::transposition_quandle(),
            identities: vec![transposition_probe(c)],
        },
    ]
}

/// Identities valid for every solution: `x^d` commutes with each generator,
/// and `y(x^d - σ_y(x)^d) = 0`.
pub fn generic_identities(ctx: &Context) -> Vec<Identity> {
    let n = ctx.n();
    let d = ctx.sys.d;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let xd = Word::power(a, d);
            out.push(vanishing(
                format!("x{0}^{d} x{1} - x{1} x{0}^{d} = 0", a + 1, b + 1),
                vec![vec![(1, xd.concat(&x(b + 1))), (-1, x(b + 1).concat(&xd))]],
                1,
            ));
            let s = ctx.sys.apply(b, a);
            if s != a {
                out.push(vanishing(
                    format!("x{}(x{}^{d} - x{}^{d}) = 0", b + 1, a + 1, s + 1),
                    vec![single(x(b + 1)), vec![(1, xd), (-1, Word::power(s, d))]],
                    1,
                ));
            }
        }
    }
    out
}

fn relabel_identity(id: &Identity, f: &Permutation) -> Identity {
    let map = |w: &Word| Word(w.letters().iter().map(|&l| f.apply(l)).collect());
    let rename = |s: &str| {
        let mut out = String::new();
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            out.push(ch);
            if ch == 'x' {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                match digits.parse::<usize>() {
                    Ok(i) => out.push_str(&(f.apply(i - 1) + 1).to_string()),
                    Err(_) => out.push_str(&digits),
                }
            }
        }
        out
    };
    Identity {
        name: rename(&id.name),
        factors: id
            .factors
            .iter()
            .map(|c| c.iter().map(|(k, w)| (*k, map(w))).collect())
            .collect(),
        power: id.power,
        expect: id.expect,
    }
}

/// Catalog identities carried over to `sol` along an isomorphism, if any.
pub fn transported_identities(
    sol: &Solution,
    c: Characteristic,
) -> Result<Vec<(String, Vec<Identity>)>> {
    let mut out = Vec::new();
    for suite in catalog_suites(c) {
        if suite.solution.n() != sol.n() {
            continue;
        }
        if let Some(f) = isomorphic(&suite.solution, sol)? {
            out.push((
                suite.example,
                suite
                    .identities
                    .iter()
                    .map(|i| relabel_identity(i, &f))
                    .collect(),
            ));
        }
    }
    Ok(out)
}

fn evaluate<F: Field>(
    alg: &Algebra<'_, F>,
    id: &Identity,
    k_max: usize,
) -> Result<(bool, Option<usize>)> {
    let factors: Vec<AlgebraElement<F>> = id
        .factors
        .iter()
        .map(|c| alg.from_terms(c))
        .collect::<Result<_>>()?;
    let base = alg.product(&factors)?;
    Ok(match id.expect {
        Expectation::Vanishes => (alg.pow(&base, id.power)?.is_zero(), None),
        Expectation::NonzeroNilpotent => {
            let k = alg.nilpotency_index(&alg.pow(&base, id.power)?, k_max)?;
            (!base.is_zero() && k.is_some(), k)
        }
        Expectation::NoVanishingPower => {
            let k = alg.nilpotency_index(&alg.pow(&base, id.power)?, k_max)?;
            (k.is_none(), k)
        }
    })
}

/// Evaluates `identities` in `K[A]` of `ctx`; errors become `Status::Error`.
pub fn run_identities(
    ctx: &Context,
    example: &str,
    identities: &[Identity],
    c: Characteristic,
    k_max: usize,
) -> Vec<IdentityResult> {
    identities
        .iter()
        .map(|id| {
            let bounded = id.expect != Expectation::Vanishes;
            let outcome: Result<(bool, Option<usize>)> = crate::with_field!(c, f => {
                let alg = Algebra::new(f, &ctx.a);
                evaluate(&alg, id, k_max)
            });
            let (status, index, detail) = match outcome {
                Ok((true, k)) => (Status::Pass, k, None),
                Ok((false, k)) => (Status::Fail, k, None),
                Err(e) => (Status::Error, None, Some(e.to_string())),
            };
            IdentityResult {
                example: example.to_string(),
                identity: id.name.clone(),
                characteristic: c.0,
                status,
                index,
                k_max: bounded.then_some(k_max),
                detail,
            }
        })
        .collect()
}

/// Runs every catalog suite in characteristic `c`.
pub fn builtin_example_checks(c: Characteristic, k_max: usize) -> Result<Vec<IdentityResult>> {
    let c = c.validate()?;
    let mut out = Vec::new();
    for suite in catalog_suites(c) {
        let ctx = Context::new(suite.solution)?;
        out.extend(run_identities(
            &ctx,
            &suite.example,
            &suite.identities,
            c,
            k_max,
        ));
    }
    Ok(out)
}

/// Generic identities plus any transported catalog identities for `ctx`.
pub fn identity_suite_for(
    ctx: &Context,
    chars: &[Characteristic],
    k_max: usize,
) -> Result<Vec<IdentityResult>> {
    let mut out = Vec::new();
    for &c in chars {
        let c = c.validate()?;
        out.extend(run_identities(
            ctx,
            "generic",
            &generic_identities(ctx),
            c,
            k_max,
        ));
        for (example, ids) in transported_identities(&ctx.sol, c)? {
            out.extend(run_identities(ctx, &example, &ids, c, k_max));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_suites_pass() {
        for c in [0, 2, 3] {
            let res = builtin_example_checks(Characteristic(c), 8).unwrap();
            for r in &res {
                assert_eq!(r.status, Status::Pass, "{r:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(builtin_example_checks(Characteristic(4), 8).is_err());
    }

    #[test]
    fn generic_identities_hold() {
        for sol in [
            catalog::five_point_rack(),
            catalog::transposition_quandle_dual(),
            catalog::flip(2),
        ] {
            let ctx = Context::new(sol).unwrap();
            let res = run_identities(
                &ctx,
                "generic",
                &generic_identities(&ctx),
                Characteristic(0),
                8,
            );
            assert!(res.iter().all(|r| r.status == Status::Pass), "{res:?}");
        }
    }

    #[test]
    fn transport_along_relabeling() {
        let g = Permutation::from_cycles(4, &[&[0, 3, 1]]).unwrap();
        let sol = catalog::four_point_rack().relabel(&g).unwrap();
        let ctx = Context::new(sol.clone()).unwrap();
        let ts = transported_identities(&sol, Characteristic(0)).unwrap();
        assert_eq!(ts.len(), 1);
        let res = run_identities(&ctx, &ts[0].0, &ts[0].1, Characteristic(0), 8);
        assert_eq!(res.len(), 4);
        assert!(res.iter().all(|r| r.status == Status::Pass), "{res:?}");
    }

    #[test]
    fn wrong_identity_fails() {
        let ctx = Context::new(catalog::five_point_rack()).unwrap();
        let res = run_identities(&ctx, "x", &[annihilates(3, 1, 2)], Characteristic(0), 8);
        assert_eq!(res[0].status, Status::Fail);
    }

    #[test]
    fn labels() {
        let p = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(cycle_label(&p), "(1,2,3)");
        let id = constant_sigma_identities(&p);
        assert_eq!(id[0].name, "(x1-x2)^3 = 0");
    }
}
