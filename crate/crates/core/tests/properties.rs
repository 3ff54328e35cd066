use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use ybe_core::algebra::{annihilator_compare, Algebra, AlgebraElement};
use ybe_core::brute::{degree_partition, Closure};
use ybe_core::catalog;
use ybe_core::cocycle::{phi, psi_inverse, psi_theta};
use ybe_core::corpus::fingerprint;
use ybe_core::enumerate::{enumerate_solutions, Filter};
use ybe_core::field::{Field, PrimeField, Rationals};
use ybe_core::solution::{isomorphic, validate_ybe};
use ybe_core::word::all_words;
use ybe_core::{Context, Error, Kind, Permutation, Solution, Subset, Word};

fn corpus() -> &'static [Context] {
    static CORPUS: OnceLock<Vec<Context>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut sols: Vec<Solution> = (1..=3)
            .flat_map(|n| enumerate_solutions(n, &Filter::default()).unwrap())
            .collect();
        sols.push(catalog::five_point_rack());
        sols.push(catalog::four_point_rack());
        sols.into_iter().map(|s| Context::new(s).unwrap()).collect()
    })
}

fn pick() -> impl Strategy<Value = usize> {
    0..corpus().len()
}

fn word_in(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..n, 0..=max_len).prop_map(Word)
}

fn element<F: Field>(alg: &Algebra<'_, F>, terms: &[(i64, Word)]) -> AlgebraElement<F> {
    alg.from_terms(terms).unwrap()
}

fn terms_in(n: usize, max_len: usize) -> impl Strategy<Value = Vec<(i64, Word)>> {
    prop::collection::vec((-3i64..=3, word_in(n, max_len)), 1..4)
}

/// Partition of the degree-`k` words by engine class id.
fn engine_partition(ctx: &Context, kind: Kind, k: usize) -> Vec<Vec<Word>> {
    let e = ctx.engine(kind);
    let mut by_class: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    for w in all_words(ctx.n(), k) {
        by_class.entry(e.class_id(&w).unwrap()).or_default().push(w);
    }
    by_class.into_values().collect()
}

/// Exhaustive at these sizes, not sampled.
#[test]
fn engine_matches_both_brute_closures() {
    for ctx in corpus() {
        for kind in [Kind::A, Kind::M] {
            let pres = ctx.engine(kind).presentation();
            for k in 0..=5 {
                if (ctx.n() as u128).pow(k as u32) > 20_000 {
                    continue;
                }
                let ours = engine_partition(ctx, kind, k);
                let bi = degree_partition(pres, k, u128::MAX, Closure::Bidirectional).unwrap();
                assert_eq!(ours, bi, "{kind:?} degree {k}");
                if pres.is_invertible() {
                    let fw = degree_partition(pres, k, u128::MAX, Closure::Forward).unwrap();
                    assert_eq!(bi, fw, "{kind:?} degree {k}: forward closure differs");
                }
                let total: u128 = (0..ours.len())
                    .map(|c| ctx.engine(kind).class_size(k, c).unwrap())
                    .sum();
                assert_eq!(total, (ctx.n() as u128).pow(k as u32));
            }
        }
    }
}

#[test]
fn every_a_class_has_an_ordered_word() {
    for ctx in corpus() {
        for k in 0..=4 {
            for c in 0..ctx.a.count(k).unwrap() {
                let w = ctx.a.canonical_of(k, c).unwrap();
                let e = ctx.a.ordered_representative(&w).unwrap();
                assert!(ctx.a.equal(&Word::from_exponents(&e), &w).unwrap());
            }
        }
    }
}

#[test]
fn involutive_monoids_have_binomial_growth() {
    for ctx in corpus().iter().filter(|c| c.sol.flags().involutive) {
        let n = ctx.n();
        for (l, &c) in ctx.a.growth(6).unwrap().iter().enumerate() {
            let want = (1..n).fold(1usize, |acc, i| acc * (l + i) / i);
            assert_eq!(c, want);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rewriting_preserves_degree(idx in pick(), w in word_in(5, 4)) {
        let ctx = &corpus()[idx];
        let w = Word(w.0.into_iter().map(|x| x % ctx.n()).collect());
        for kind in [Kind::A, Kind::M] {
            let e = ctx.engine(kind);
            let c = e.class_id(&w).unwrap();
            for m in e.class_members(w.degree(), c).unwrap() {
                prop_assert_eq!(m.degree(), w.degree());
            }
            prop_assert_eq!(e.canonical(&w).unwrap().degree(), w.degree());
        }
    }

    #[test]
    fn generator_powers_are_central(idx in pick(), a in word_in(5, 4), x in 0usize..5) {
        let ctx = &corpus()[idx];
        let n = ctx.n();
        let a = Word(a.0.into_iter().map(|y| y % n).collect());
        let xd = Word::power(x % n, ctx.sys.d);
        prop_assert!(ctx.a.equal(&a.concat(&xd), &xd.concat(&a)).unwrap());
    }

    #[test]
    fn equal_across_degrees_is_false(idx in pick(), a in word_in(5, 3), b in word_in(5, 3)) {
        let ctx = &corpus()[idx];
        let n = ctx.n();
        let a = Word(a.0.into_iter().map(|y| y % n).collect());
        let b = Word(b.0.into_iter().map(|y| y % n).collect());
        if a.degree() != b.degree() {
            prop_assert!(!ctx.a.equal(&a, &b).unwrap());
        }
    }

    #[test]
    fn cocycle_round_trip(idx in pick(), w in word_in(5, 6)) {
        let ctx = &corpus()[idx];
        let n = ctx.n();
        let w = Word(w.0.into_iter().map(|y| y % n).collect());
        let pair = psi_theta(&ctx.sol, &w).unwrap();
        prop_assert_eq!(psi_inverse(&ctx.sol, &pair.a_word).unwrap(), w.clone());
        prop_assert_eq!(phi(&ctx.sol, &pair.a_word).unwrap(), pair.theta.clone());
        // ψ maps M-classes into A-classes
        let c = ctx.m.class_id(&w).unwrap();
        for other in ctx.m.class_members(w.degree(), c).unwrap().into_iter().take(8) {
            let p = psi_theta(&ctx.sol, &other).unwrap();
            prop_assert!(ctx.a.equal(&p.a_word, &pair.a_word).unwrap());
            prop_assert_eq!(p.theta, pair.theta.clone());
        }
    }

    #[test]
    fn algebra_is_associative_with_unit(
        idx in pick(),
        a in terms_in(5, 2),
        b in terms_in(5, 2),
        c in terms_in(5, 2),
    ) {
        let ctx = &corpus()[idx];
        let n = ctx.n();
        let fix = |t: Vec<(i64, Word)>| -> Vec<(i64, Word)> {
            t.into_iter().map(|(k, w)| (k, Word(w.0.into_iter().map(|y| y % n).collect()))).collect()
        };
        let (a, b, c) = (fix(a), fix(b), fix(c));
        let q = Algebra::new(Rationals, &ctx.a);
        let f = Algebra::new(PrimeField::new(3).unwrap(), &ctx.m);
        let (qa, qb, qc) = (element(&q, &a), element(&q, &b), element(&q, &c));
        let lhs = q.mul(&q.mul(&qa, &qb).unwrap(), &qc).unwrap();
        let rhs = q.mul(&qa, &q.mul(&qb, &qc).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(q.mul(&qa, &q.one()).unwrap(), qa.clone());
        prop_assert_eq!(q.mul(&q.one(), &qa).unwrap(), qa.clone());
        if let (Some(da), Some(db)) = (qa.degree(), qb.degree()) {
            let p = q.mul(&qa, &qb).unwrap();
            prop_assert!(p.terms().keys().all(|w| w.degree() <= da + db));
        }
        let (fa, fb, fc) = (element(&f, &a), element(&f, &b), element(&f, &c));
        prop_assert_eq!(
            f.mul(&f.mul(&fa, &fb).unwrap(), &fc).unwrap(),
            f.mul(&fa, &f.mul(&fb, &fc).unwrap()).unwrap()
        );
    }

    #[test]
    fn equal_words_cancel(idx in pick(), w in word_in(5, 4)) {
        let ctx = &corpus()[idx];
        let n = ctx.n();
        let w = Word(w.0.into_iter().map(|y| y % n).collect());
        let alg = Algebra::new(PrimeField::new(2).unwrap(), &ctx.a);
        let c = ctx.a.class_id(&w).unwrap();
        for other in ctx.a.class_members(w.degree(), c).unwrap().into_iter().take(6) {
            prop_assert!(alg.from_terms(&[(1, w.clone()), (-1, other)]).unwrap().is_zero());
        }
    }

    /// Bounded: no vanishing power up to 6 for a difference of distinct classes.
    #[test]
    fn involutive_algebras_have_no_sampled_nilpotents(idx in pick(), a in word_in(3, 2), b in word_in(3, 2)) {
        let ctx = &corpus()[idx];
        prop_assume!(ctx.sol.flags().involutive);
        let n = ctx.n();
        let a = Word(a.0.into_iter().map(|y| y % n).collect());
        let b = Word(b.0.into_iter().map(|y| y % n).collect());
        prop_assume!(!ctx.a.equal(&a, &b).unwrap());
        let alg = Algebra::new(Rationals, &ctx.a);
        let e = alg.from_terms(&[(1, a), (-1, b)]).unwrap();
        prop_assert_eq!(alg.nilpotency_index(&e, 6).unwrap(), None);
    }

    #[test]
    fn relabeling_preserves_invariants(idx in pick(), seed in any::<u64>()) {
        let ctx = &corpus()[idx];
        let n = ctx.n();
        let mut images: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (s >> 33) as usize % (i + 1));
        }
        let g = Permutation::from_images(images).unwrap();
        let t = ctx.sol.relabel(&g).unwrap();
        prop_assert!(isomorphic(&ctx.sol, &t).unwrap().is_some());
        prop_assert_eq!(fingerprint(&ctx.sol), fingerprint(&t));
        prop_assert_eq!(t.flags(), ctx.sol.flags());
        let other = Context::new(t).unwrap();
        prop_assert_eq!(other.a.growth(4).unwrap(), ctx.a.growth(4).unwrap());
        prop_assert_eq!(other.m.growth(4).unwrap(), ctx.m.growth(4).unwrap());
    }

    #[test]
    fn ybe_checks_agree_on_arbitrary_tables(n in 1usize..4, raw in prop::collection::vec(any::<(u8, u8)>(), 9)) {
        let table: Vec<(usize, usize)> = raw[..n * n].iter().map(|&(u, v)| (u as usize % n, v as usize % n)).collect();
        let sol = Solution::new(n, table).unwrap();
        let r = validate_ybe(&sol);
        prop_assert!(!matches!(r, Err(Error::InternalInconsistency(_))));
    }
}

/// For `Z ⊆ Y` and `s ∈ D_Z` of degree `k`, every
/// product of `k` classes from `M_i` (`i = |Y|`) landing in `D_Y` is left divisible by `s`.
#[test]
fn strata_products_are_left_divisible() {
    for ctx in corpus().iter().filter(|c| c.n() <= 3) {
        let e = &ctx.m;
        for k in 1..=2usize {
            let targets = e.divisibility_strata(k).unwrap();
            for deg in 1..=2usize {
                let classes: Vec<(usize, Subset)> = (0..e.count(deg).unwrap())
                    .map(|c| (c, e.first_letters(deg, c).unwrap()))
                    .collect();
                let mut tuples: Vec<Vec<usize>> = vec![vec![]];
                for _ in 0..k {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            classes
                                .iter()
                                .map(move |&(c, _)| [t.clone(), vec![c]].concat())
                        })
                        .collect();
                }
                for t in tuples {
                    let mut word = Word::empty();
                    for &c in &t {
                        word = word.concat(&e.canonical_of(deg, c).unwrap());
                    }
                    let y = e.left_divisor_set(&word).unwrap();
                    let i = y.len();
                    if !t.iter().all(|&c| classes[c].1.len() >= i) {
                        continue;
                    }
                    for (z, ss) in &targets {
                        if !z.is_subset_of(y) {
                            continue;
                        }
                        for &s in ss {
                            let s = e.canonical_of(k, s).unwrap();
                            assert!(
                                e.left_divisible_by(&word, &s).unwrap(),
                                "{word} not divisible by {s}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn annihilator_span_inside_nullspace() {
    for ctx in corpus().iter().filter(|c| c.n() <= 3) {
        for kind in [Kind::A, Kind::M] {
            for deg in 0..=3 {
                let rep = annihilator_compare(ctx, kind, &Rationals, deg, 3).unwrap();
                assert!(rep.steps.iter().all(|s| s.span_in_nullspace), "{rep:?}");
                if ctx.sol.flags().involutive {
                    assert!(rep.steps.iter().all(|s| s.nullspace_dim == 0));
                }
            }
        }
    }
}
