//! Exact structural properties: product formulas, permutation symmetries,
//! recurrence identities, degree bounds, and oracle agreements. Everything
//! here is exact — no tolerances.

mod props;

use cfn_core::exactmath::{rat, Polynomial, Rat};
use cfn_core::recurrence::{
    cfindex_to_label, enumerate_order, loop_coefficient, loop_coefficient_rad, loop_spec, rank1_cf,
    reduce_step, shared_engine, LoopId, Rank3Label, ReduceStep, SumLabel,
};
use cfn_core::tracecoords::{
    evaluate_traces, random_triple, reduce_trace_word, trace_word_eval, TraceWord,
};
use num_traits::One;
use proptest::prelude::*;

#[test]
fn rank1_product_formula() {
    props::rank1_product_formula();
}

#[test]
fn rank2_permutation_symmetry() {
    props::rank2_permutation_symmetry();
}

#[test]
fn rank2_four_term_relation() {
    props::rank2_four_term_relation();
}

#[test]
fn fusion_swap_and_normalization() {
    props::fusion_swap_and_normalization();
}

#[test]
fn theta_permutation_symmetry() {
    props::theta_permutation_symmetry();
}

#[test]
fn t123_quadratic_relation() {
    props::t123_quadratic_relation();
}

#[test]
fn word_reduction_matches_matrix_oracle() {
    props::word_reduction_matches_matrix_oracle();
}

#[test]
fn t123_degree_bound_through_order_six() {
    props::t123_degree_bound_through_order_six();
}

#[test]
fn tensorial_conjugation_invariance() {
    props::tensorial_conjugation_invariance();
}

/// χ_n(λ + 1/λ) = Σ_{k=0}^{n} λ^{n−2k}, exactly.
fn eigenvalue_oracle_holds(lam: Rat) {
    let inv = Rat::one() / lam.clone();
    let x = lam.clone() + inv.clone();
    for n in 0..=10u32 {
        let val = rank1_cf(n).eval_slice(std::slice::from_ref(&x));
        let mut expect = num_traits::Zero::zero();
        let mut pw = num_traits::pow::pow(lam.clone(), n as usize);
        for _ in 0..=n {
            expect += pw.clone();
            pw = pw * inv.clone() * inv.clone();
        }
        assert_eq!(val, expect, "n={} λ={}", n, lam);
    }
}

#[test]
fn rank1_eigenvalue_oracle() {
    for (p, q) in [(2i64, 3i64), (-5, 7), (9, 4), (-1, 6), (12, 5)] {
        eigenvalue_oracle_holds(rat(p, q));
    }
}

proptest! {
    #[test]
    fn rank1_eigenvalue_oracle_prop(p in -24i64..=24, q in 1i64..=24) {
        prop_assume!(p != 0);
        eigenvalue_oracle_holds(rat(p, q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn word_reduction_prop(tokens in proptest::collection::vec(
        prop_oneof![Just(1i8), Just(-1), Just(2), Just(-2), Just(3), Just(-3)],
        1..=7,
    )) {
        if let Ok(w) = TraceWord::new(tokens) {
            let poly = reduce_trace_word(&w);
            for s in 0..4u64 {
                let mats = random_triple(0xabcd + s, 6);
                let t = evaluate_traces(&mats[0], &mats[1], &mats[2]).as_slice();
                prop_assert_eq!(poly.eval_slice(&t), trace_word_eval(&w, &mats));
            }
        }
    }
}

/// Structural well-foundedness: from every admissible label of order ≤ 8
/// the reduction chain reaches the base label, with (a+b+c, d+e+f)
/// strictly lex-decreasing at every step.
#[test]
fn reduction_terminates_through_order_eight() {
    fn measure(l: &Rank3Label) -> (u32, u32) {
        (l.a + l.b + l.c, l.d + l.e + l.f)
    }
    let mut seen: std::collections::HashSet<Rank3Label> = Default::default();
    let mut stack: Vec<Rank3Label> = Vec::new();
    for s in 0..=8u32 {
        for (a, b, c, d, i, j) in enumerate_order(s) {
            stack.push(cfindex_to_label(a, b, c, d, i, j).unwrap());
        }
    }
    while let Some(label) = stack.pop() {
        if label.is_base() || !seen.insert(label.clone()) {
            continue;
        }
        match reduce_step(&label).unwrap() {
            ReduceStep::Barbell(_) => {}
            ReduceStep::Loop {
                decremented, lower, ..
            } => {
                assert!(measure(&decremented) < measure(&label), "{:?}", label);
                stack.push(decremented);
                for (sl, _) in lower.iter() {
                    if let SumLabel::Rank3(l) = sl {
                        assert!(measure(l) < measure(&label), "{:?} -> {:?}", label, l);
                        stack.push(l.clone());
                    }
                }
            }
        }
    }
}

/// Degenerate one-variable labels reproduce the rank-1 functions through
/// the full loop machinery.
#[test]
fn rank1_embeddings() {
    let eng = shared_engine();
    for n in 0..=6u32 {
        let one_var = rank1_cf(n);
        for (label, var) in [
            (Rank3Label::new(n, 0, 0, n, n, n).unwrap(), 0usize),
            (Rank3Label::new(0, n, 0, n, n, n).unwrap(), 1),
            (Rank3Label::new(0, 0, n, n, 0, 0).unwrap(), 2),
        ] {
            let got = eng.rank3_cf(&label);
            let expect = one_var.map_vars(
                got.alphabet().clone(),
                &[Polynomial::var(got.alphabet().clone(), var)],
            );
            assert_eq!(*got, expect, "embedding {:?}", label);
        }
    }
}

#[test]
fn loop_coefficient_routes_agree_entries_le5() {
    let ids = [
        LoopId::AB,
        LoopId::CD,
        LoopId::AEDF,
        LoopId::BEDF,
        LoopId::BECF,
        LoopId::AECF,
    ];
    let mut checked = 0u64;
    for a in 0..=5u32 {
        for b in 0..=5u32 {
            for c in 0..=5u32 {
                for d in 0..=5u32 {
                    for e in 0..=5u32 {
                        for f in 0..=5u32 {
                            let label = match Rank3Label::new(a, b, c, d, e, f) {
                                Ok(l) => l,
                                Err(_) => continue,
                            };
                            for id in ids {
                                let spec = loop_spec(id);
                                let n = spec.edges.len();
                                for pattern in 0..(1u32 << n) {
                                    let signs: Vec<i8> = (0..n)
                                        .map(|i| if pattern & (1 << i) != 0 { -1 } else { 1 })
                                        .collect();
                                    let rational = loop_coefficient(spec, &label, &signs);
                                    let rad = loop_coefficient_rad(spec, &label, &signs)
                                        .map(|r| r.to_rational().unwrap());
                                    assert_eq!(rational, rad, "{:?} {:?} {:?}", label, id, signs);
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 10_000);
}
