//! The nine exact property suites of the acceptance gate, shared between
//! the property tests and the acceptance target. Each panics on the first
//! violated instance.
#![allow(dead_code)]

use cfn_core::exactmath::{rat, Polynomial, Rat, ALPHA_XYZ};
use cfn_core::recurrence::{cfindex_to_label, enumerate_order, rank1_cf, shared_engine};
use cfn_core::reptheory::{
    e_count, fusion_coeff, fusion_const, is_admissible, norm_fusion_coeff, theta, FusionCoeffKey,
};
use cfn_core::tensorial::contract_cached;
use cfn_core::tracecoords::{
    evaluate_traces, pq_polys, random_sl2, random_triple, reduce_trace_word, trace_word_eval,
    triple_entries, TraceWord,
};
use num_traits::{One, Zero};

/// ⌈a,b⌋ = {|a−b|, |a−b|+2, …, a+b}.
pub fn admissible_with(a: u32, b: u32) -> Vec<u32> {
    (a.abs_diff(b)..=a + b).step_by(2).collect()
}

pub fn rank1_product_formula() {
    for a in 0..=8u32 {
        for b in 0..=8u32 {
            let prod = rank1_cf(a).mul(&rank1_cf(b)).unwrap();
            let mut sum = Polynomial::zero(prod.alphabet().clone());
            for c in admissible_with(a, b) {
                sum = sum.add(&rank1_cf(c)).unwrap();
            }
            assert_eq!(prod, sum, "χ_{}·χ_{}", a, b);
        }
    }
}

pub fn rank2_permutation_symmetry() {
    let eng = shared_engine();
    // slot ↔ variable pairing: a↔y, b↔x, c↔z (the variable not sharing a
    // vertex with the slot's edge)
    let v: [usize; 3] = [1, 0, 2];
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            for c in 0..=4u32 {
                if !is_admissible(a, b, c) {
                    continue;
                }
                let base = eng.rank2_cf(a, b, c).unwrap();
                let t = [a, b, c];
                for p in perms {
                    // new slot i holds old slot p[i], so σ(p[i]) = i
                    let mut sigma = [0usize; 3];
                    for (i, &s) in p.iter().enumerate() {
                        sigma[s] = i;
                    }
                    let images: Vec<Polynomial> = (0..3)
                        .map(|j| Polynomial::var(ALPHA_XYZ.clone(), v[sigma[v[j]]]))
                        .collect();
                    let mapped = base.map_vars(ALPHA_XYZ.clone(), &images);
                    let permuted = eng.rank2_cf(t[p[0]], t[p[1]], t[p[2]]).unwrap();
                    assert_eq!(permuted, mapped, "({},{},{}) perm {:?}", a, b, c, p);
                }
            }
        }
    }
}

pub fn rank2_four_term_relation() {
    let eng = shared_engine();
    let z = Polynomial::var(ALPHA_XYZ.clone(), 2);
    for a in 0..=5u32 {
        for b in 0..=5u32 {
            for c in 0..=5u32 {
                if !is_admissible(a, b, c) {
                    continue;
                }
                let lhs = z.mul(&eng.rank2_cf(a, b, c).unwrap()).unwrap();
                let mut rhs = Polynomial::zero(ALPHA_XYZ.clone());
                let (ai, bi, ci) = (a as i64, b as i64, c as i64);
                for (da, db) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                    let (na, nb) = (ai + da, bi + db);
                    if na < 0 || nb < 0 || !is_admissible(na as u32, nb as u32, c) {
                        continue;
                    }
                    // coefficients sit at the undecremented label, so the
                    // admissibility gate keeps every denominator nonzero
                    let coeff = match (da, db) {
                        (1, 1) => Rat::one(),
                        (1, -1) => rat(e_count(ai, bi, ci).pow(2), bi * (bi + 1)),
                        (-1, 1) => rat(e_count(bi, ai, ci).pow(2), ai * (ai + 1)),
                        _ => rat(
                            e_count(ci, ai, bi).pow(2) * ((ai + bi + ci) / 2 + 1).pow(2),
                            ai * (ai + 1) * bi * (bi + 1),
                        ),
                    };
                    let term = eng.rank2_cf(na as u32, nb as u32, c).unwrap();
                    rhs = rhs.add(&term.scale(&coeff)).unwrap();
                }
                assert_eq!(lhs, rhs, "four-term at ({},{},{})", a, b, c);
            }
        }
    }
}

pub fn fusion_swap_and_normalization() {
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            for c in 0..=6u32 {
                if !is_admissible(a, b, c) {
                    continue;
                }
                for (da, dc) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                    let (an, cn) = (a as i64 + da, c as i64 + dc);
                    if an < 0 || cn < 0 {
                        continue;
                    }
                    let key = FusionCoeffKey::new(b, a, an as u32, c, cn as u32);
                    let swapped = FusionCoeffKey::new(b, c, cn as u32, a, an as u32);
                    let f = fusion_coeff(key);
                    let fhat = norm_fusion_coeff(key);
                    assert_eq!(f.is_some(), fhat.is_some());
                    // swap symmetry on both forms
                    assert_eq!(f, fusion_coeff(swapped));
                    assert_eq!(fhat, norm_fusion_coeff(swapped));
                    // 𝔉 = √(𝔣_{a′}(1,a)·𝔣_{c′}(1,c))·𝔉̂
                    if let (Some(f), Some(fhat)) = (f, fhat) {
                        let fa = fusion_const(an as u32, 1, a).unwrap();
                        let fc = fusion_const(cn as u32, 1, c).unwrap();
                        let root = cfn_core::RadExact::sqrt_of(fa * fc);
                        let recovered = root.mul(&fhat).to_rational().unwrap();
                        assert_eq!(f, recovered, "normalization at {:?}", key);
                    }
                }
            }
        }
    }
}

pub fn theta_permutation_symmetry() {
    for a in 0..=10u32 {
        for b in 0..=10u32 {
            for c in 0..=10u32 {
                if !is_admissible(a, b, c) {
                    continue;
                }
                let t = theta(a, b, c).unwrap();
                for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    assert_eq!(theta(x, y, z).unwrap(), t, "Θ({},{},{})", a, b, c);
                }
            }
        }
    }
}

pub fn t123_quadratic_relation() {
    let (p, q) = pq_polys();
    for seed in 0..100u64 {
        let mats = random_triple(seed, 8);
        let t = evaluate_traces(&mats[0], &mats[1], &mats[2]).as_slice();
        let pv = p.eval_slice(&t);
        let qv = q.eval_slice(&t);
        let t123 = t[6].clone();
        assert!(
            (t123.clone() * t123.clone() - pv * t123 + qv).is_zero(),
            "seed {}",
            seed
        );
    }
}

/// All cyclically reduced words over {±1, ±2, ±3} up to `max_len`.
pub fn all_words(max_len: usize) -> Vec<TraceWord> {
    let letters = [1i8, -1, 2, -2, 3, -3];
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i8>> = letters.iter().map(|&l| vec![l]).collect();
    while let Some(w) = stack.pop() {
        if let Ok(tw) = TraceWord::new(w.clone()) {
            out.push(tw);
        }
        if w.len() < max_len {
            for &l in &letters {
                if l != -w[w.len() - 1] {
                    let mut next = w.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
    }
    out
}

pub fn word_reduction_matches_matrix_oracle() {
    let triples: Vec<_> = (0..20u64).map(|s| random_triple(0x517e + s, 8)).collect();
    let tuples: Vec<Vec<Rat>> = triples
        .iter()
        .map(|m| evaluate_traces(&m[0], &m[1], &m[2]).as_slice().to_vec())
        .collect();
    for w in all_words(5) {
        let poly = reduce_trace_word(&w);
        for (mats, t) in triples.iter().zip(&tuples) {
            assert_eq!(
                poly.eval_slice(t),
                trace_word_eval(&w, mats),
                "word {:?}",
                w
            );
        }
    }
}

pub fn t123_degree_bound_through_order_six() {
    let eng = shared_engine();
    for s in 0..=6u32 {
        for (a, b, c, d, i, j) in enumerate_order(s) {
            let label = cfindex_to_label(a, b, c, d, i, j).unwrap();
            let poly = eng.rank3_cf(&label);
            assert!(poly.degree_in(6) <= 1, "t123 degree at {:?}", label);
        }
    }
}

pub fn tensorial_conjugation_invariance() {
    for s in 0..=3u32 {
        for (a, b, c, d, i, j) in enumerate_order(s) {
            let label = cfindex_to_label(a, b, c, d, i, j).unwrap();
            let poly = contract_cached(&label);
            let mats = random_triple(0x90 + s as u64, 8);
            let base = poly.eval_slice(&triple_entries(&mats));
            for k in 0..10u64 {
                let g = random_sl2(0x7000 + k, 6);
                let gi = g.inverse();
                let conj = [
                    g.mul(&mats[0]).mul(&gi),
                    g.mul(&mats[1]).mul(&gi),
                    g.mul(&mats[2]).mul(&gi),
                ];
                assert_eq!(
                    poly.eval_slice(&triple_entries(&conj)),
                    base,
                    "{:?} conjugator {}",
                    label,
                    k
                );
            }
        }
    }
}
