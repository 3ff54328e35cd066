//! Solution corpora on disk and property sweeps over them.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cocycle::verify_cocycle;
use crate::context::Context;
use crate::enumerate::{enumerate_solutions, Filter};
use crate::error::{Error, Result};
use crate::sigma::{check_rack_axioms, rack_solution};
use crate::solution::{PropertyFlags, Solution};
use crate::spectrum::{
    check_union_of_strata, gk_dimension, inclusion_mismatches, spec_m, trace_mismatches, z_family,
};
use crate::subset::Subset;
use crate::word::{all_words, Word};

pub const INDEX_FILE: &str = "index.json";
/// Above this size the fingerprint hashes the table as given.
pub const MAX_CANONICAL_N: usize = 8;

/// Degree bound for the word-level checks run by sweeps.
const SWEEP_DEGREE: usize = 4;
const SWEEP_GROWTH_DEGREE: usize = 6;
const SWEEP_COCYCLE_DEGREE: usize = 5;

/// SHA-256 of the canonically relabeled table; isomorphism-invariant for
/// `n <= MAX_CANONICAL_N`.
pub fn fingerprint(sol: &Solution) -> String {
    let (tag, table) = if sol.n() <= MAX_CANONICAL_N {
        ("canonical", sol.canonical_form().0)
    } else {
        ("raw", sol.table().to_vec())
    };
    let mut h = Sha256::new();
    h.update(format!("{tag}:{}:", sol.n()));
    for (u, v) in table {
        h.update(format!("{u},{v};"));
    }
    hex::encode(h.finalize())
}

pub fn parse_filter(name: &str) -> Result<Filter> {
    match name {
        "all" => Ok(Filter::default()),
        "involutive" => Ok(Filter::involutive()),
        "rack-form" => Ok(Filter::rack_form()),
        other => Err(Error::Parse(format!(
            "unknown filter {other:?}; expected all, involutive or rack-form"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub id: String,
    pub file: String,
    pub n: usize,
    pub flags: PropertyFlags,
    /// Exponent of the σ group.
    pub d: usize,
    /// Order of the λ group.
    pub m: usize,
    pub gk_dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusIndex {
    pub n: usize,
    pub filter: String,
    pub solutions: Vec<IndexEntry>,
}

fn index_entry(sol: &Solution) -> Result<IndexEntry> {
    let ctx = Context::new(sol.clone())?;
    let id = fingerprint(sol);
    Ok(IndexEntry {
        file: format!("{}.json", &id[..16]),
        id,
        n: sol.n(),
        flags: sol.flags(),
        d: ctx.sys.d,
        m: ctx.sys.m,
        gk_dimension: gk_dimension(&ctx.sys)?,
    })
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

/// Enumerates solutions on `n` points and writes one file per isomorphism
/// class plus [`INDEX_FILE`]. Rewriting an existing corpus is idempotent.
pub fn write_corpus(dir: &Path, n: usize, filter_name: &str) -> Result<CorpusIndex> {
    let filter = parse_filter(filter_name)?;
    let sols = enumerate_solutions(n, &filter)?;
    let solutions: Vec<IndexEntry> = sols.par_iter().map(index_entry).collect::<Result<_>>()?;
    fs::create_dir_all(dir).map_err(io)?;
    for (entry, sol) in solutions.iter().zip(&sols) {
        fs::write(dir.join(&entry.file), sol.to_json() + "\n").map_err(io)?;
    }
    let index = CorpusIndex {
        n,
        filter: filter_name.to_string(),
        solutions,
    };
    let text = serde_json::to_string_pretty(&index).expect("index serializes");
    fs::write(dir.join(INDEX_FILE), text + "\n").map_err(io)?;
    Ok(index)
}

/// Solutions listed in the index, or every `*.json` file when there is none.
pub fn read_corpus(dir: &Path) -> Result<Vec<(String, Solution)>> {
    let index_path = dir.join(INDEX_FILE);
    let files: Vec<String> = if index_path.exists() {
        let text = fs::read_to_string(&index_path).map_err(io)?;
        let index: CorpusIndex = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", index_path.display())))?;
        index.solutions.into_iter().map(|e| e.file).collect()
    } else {
        let mut v: Vec<String> = fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok())
            .map(|e| e.file_name().to_string_lossy().into_owned())
            .filter(|f| f.ends_with(".json"))
            .collect();
        v.sort();
        v
    };
    files
        .into_iter()
        .map(|f| {
            let text = fs::read_to_string(dir.join(&f)).map_err(io)?;
            let sol = Solution::from_json(&text).map_err(|e| Error::Parse(format!("{f}: {e}")))?;
            Ok((f, sol))
        })
        .collect()
}

pub const SUITES: &[&str] = &[
    "involutive-iff-gk-n",
    "spectrum-bijection",
    "spectrum-m",
    "cocycle-roundtrip",
    "rack-solution",
    "sigma-formulas",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub file: String,
    pub id: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub suite: String,
    pub solutions: usize,
    pub failures: Vec<SweepFailure>,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn check_involutive_iff_gk(ctx: &Context) -> Result<Option<String>> {
    let n = ctx.n();
    let involutive = ctx.sol.flags().involutive;
    let gk = gk_dimension(&ctx.sys)?;
    if involutive != (gk == n) {
        return Ok(Some(format!(
            "involutive={involutive} but gk_dimension={gk} with n={n}"
        )));
    }
    if involutive {
        for l in 0..=SWEEP_GROWTH_DEGREE {
            let want = binomial(l + n - 1, n - 1);
            let (a, m) = (ctx.a.count(l)?, ctx.m.count(l)?);
            if a != want || m != want {
                return Ok(Some(format!(
                    "degree {l}: A has {a}, M has {m}, expected {want} classes"
                )));
            }
        }
    }
    Ok(None)
}

fn check_spectrum_bijection(ctx: &Context) -> Result<Option<String>> {
    let n = ctx.n();
    for q in z_family(&ctx.sys)? {
        let trace = Subset::from_iter(
            (0..n).filter(|&x| ctx.a.member_pz(&Word::letter(x), q.z).unwrap_or(false)),
        );
        if trace != q.z {
            return Ok(Some(format!("X meets P({}) in {trace}", q.z)));
        }
        for deg in 2..=SWEEP_DEGREE {
            let mut seen: Vec<Option<bool>> = vec![None; ctx.a.count(deg)?];
            for w in all_words(n, deg) {
                let inside = ctx.a.member_pz(&w, q.z)?;
                let c = ctx.a.class_id(&w)?;
                match seen[c] {
                    Some(prev) if prev != inside => {
                        return Ok(Some(format!(
                            "P({}) membership differs within the A-class of {w}",
                            q.z
                        )));
                    }
                    _ => seen[c] = Some(inside),
                }
            }
        }
    }
    Ok(None)
}

fn check_spectrum_m(ctx: &Context) -> Result<Option<String>> {
    let primes = match spec_m(&ctx.sol, &ctx.sys) {
        Ok(p) => p,
        Err(e) => return Ok(Some(e.to_string())),
    };
    let family = z_family(&ctx.sys)?;
    for p in &primes {
        for z in &p.zs {
            let q = family
                .iter()
                .find(|q| q.z == *z)
                .expect("closure stays in the family");
            if q.height != p.height {
                return Ok(Some(format!(
                    "{z} has height {} in a prime of height {}",
                    q.height, p.height
                )));
            }
        }
        for deg in 1..=SWEEP_DEGREE {
            if let Err(e) = check_union_of_strata(ctx, p, deg) {
                return Ok(Some(e.to_string()));
            }
        }
    }
    let bad = trace_mismatches(ctx)?;
    if !bad.is_empty() {
        return Ok(Some(format!("trace mismatches at {bad:?}")));
    }
    let bad = inclusion_mismatches(ctx, &primes, SWEEP_DEGREE)?;
    if !bad.is_empty() {
        return Ok(Some(format!(
            "inclusion rule disagrees with membership for prime pairs {bad:?}"
        )));
    }
    Ok(None)
}

fn check_cocycle(ctx: &Context) -> Result<Option<String>> {
    let rep = verify_cocycle(ctx, SWEEP_COCYCLE_DEGREE)?;
    Ok(rep
        .violations
        .first()
        .map(|v| format!("{} violations, first: {v}", rep.violations.len())))
}

fn check_rack(ctx: &Context) -> Result<Option<String>> {
    let rack = check_rack_axioms(&ctx.sys);
    if !rack.is_rack {
        return Ok(Some(format!(
            "derived operation is not a rack, witness {:?}",
            rack.witness
        )));
    }
    match rack_solution(&ctx.sol) {
        Ok(_) => Ok(None),
        Err(e) => Ok(Some(e.to_string())),
    }
}

fn run_one(suite: &str, sol: &Solution) -> Result<Option<String>> {
    let flags = sol.flags();
    if !(flags.is_ybe && flags.bijective && flags.left_nd) {
        return Ok(Some("not a bijective left non-degenerate solution".into()));
    }
    let ctx = match Context::new(sol.clone()) {
        Ok(c) => c,
        Err(e) if suite == "sigma-formulas" => return Ok(Some(e.to_string())),
        Err(e) => return Err(e),
    };
    match suite {
        "involutive-iff-gk-n" => check_involutive_iff_gk(&ctx),
        "spectrum-bijection" => check_spectrum_bijection(&ctx),
        "spectrum-m" => check_spectrum_m(&ctx),
        "cocycle-roundtrip" => check_cocycle(&ctx),
        "rack-solution" => check_rack(&ctx),
        "sigma-formulas" => Ok(None),
        other => Err(Error::Parse(format!("unknown suite {other:?}"))),
    }
}

/// Runs `suite` over every solution in `corpus`; errors count as failures.
pub fn sweep(corpus: &[(String, Solution)], suite: &str) -> Result<SweepReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::Parse(format!(
            "unknown suite {suite:?}; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let failures: Vec<SweepFailure> = corpus
        .par_iter()
        .filter_map(|(file, sol)| {
            let witness = match run_one(suite, sol) {
                Ok(None) => return None,
                Ok(Some(w)) => w,
                Err(e) => format!("error: {e}"),
            };
            Some(SweepFailure {
                file: file.clone(),
                id: fingerprint(sol),
                witness,
            })
        })
        .collect();
    Ok(SweepReport {
        suite: suite.to_string(),
        solutions: corpus.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::perm::Permutation;

    #[test]
    fn fingerprint_is_isomorphism_invariant() {
        let s = catalog::five_point_rack();
        let g = Permutation::from_cycles(5, &[&[0, 4, 2]]).unwrap();
        assert_eq!(fingerprint(&s), fingerprint(&s.relabel(&g).unwrap()));
        assert_ne!(fingerprint(&s), fingerprint(&catalog::flip(5)));
        assert_eq!(fingerprint(&s).len(), 64);
    }

    #[test]
    fn write_and_read_back() {
        let dir = tempfile::tempdir().unwrap();
        let a = write_corpus(dir.path(), 2, "all").unwrap();
        let first = fs::read_to_string(dir.path().join(INDEX_FILE)).unwrap();
        let b = write_corpus(dir.path(), 2, "all").unwrap();
        assert_eq!(a, b);
        assert_eq!(
            first,
            fs::read_to_string(dir.path().join(INDEX_FILE)).unwrap()
        );
        let corpus = read_corpus(dir.path()).unwrap();
        assert_eq!(corpus.len(), a.solutions.len());
        for suite in SUITES {
            let rep = sweep(&corpus, suite).unwrap();
            assert!(rep.failures.is_empty(), "{suite}: {:?}", rep.failures);
        }
    }

    #[test]
    fn empty_corpus() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = read_corpus(dir.path()).unwrap();
        let rep = sweep(&corpus, "cocycle-roundtrip").unwrap();
        assert_eq!((rep.solutions, rep.failures.len()), (0, 0));
    }

    #[test]
    fn unknown_names() {
        assert!(parse_filter("squarefree").is_err());
        assert!(sweep(&[], "nope").is_err());
    }

    #[test]
    fn failures_carry_witnesses() {
        let bad = Solution::from_fn(2, |_, y| (0, y)).unwrap();
        let rep = sweep(&[("bad.json".into(), bad)], "sigma-formulas").unwrap();
        assert_eq!(rep.failures.len(), 1);
        assert!(rep.failures[0].witness.contains("non-degenerate"));
    }
}
