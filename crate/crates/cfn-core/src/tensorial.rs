//! Tensorial engine: symmetric-power matrices of generic SL2 elements,
//! Clebsch–Gordan injections, the central tensor of a label, and its
//! contraction to an exact polynomial in the twelve matrix entries.
//!
//! All coefficient bookkeeping (the delicate part) is normalized so that
//! dual-basis pairings carry 1/binom(n,k): CG maps store the image of the
//! basis vector itself, the central tensor carries binom(d,k) on the
//! diagonal, and the symmetric-power entries carry binom(n,k)⁻¹.

use crate::exactmath::{binomial, Polynomial, Rat, ALPHA_ENTRIES};
use crate::recurrence::Rank3Label;
use crate::reptheory::{edge_counts, is_admissible};
use crate::tracecoords::SL2Rational;
use num_traits::Zero;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("inadmissible triple ({0},{1},{2})")]
    Inadmissible(u32, u32, u32),
}

fn binom_rat(n: u32, k: u32) -> Rat {
    Rat::from_integer(binomial(n as u64, k as u64))
}

/// Action of a generic matrix X_slot on V_n in the basis 𝗇_{n−k}, with the
/// dual-pairing normalization binom(n,k)⁻¹ built into row k.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    pub slot: usize,
    pub n: u32,
    /// (n+1)×(n+1), entry (k,l) = 𝗇*_{n−k}(X·𝗇_{n−l})
    pub entries: Vec<Vec<Polynomial>>,
}

impl SymMatrix {
    pub fn entry(&self, k: u32, l: u32) -> &Polynomial {
        &self.entries[k as usize][l as usize]
    }

    /// Entries evaluated at a concrete matrix.
    pub fn value_at(&self, m: &SL2Rational) -> Vec<Vec<Rat>> {
        let vals = slot_values(self.slot, m);
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.eval_slice(&vals)).collect())
            .collect()
    }
}

/// Twelve-entry evaluation slice with `m` placed in `slot` (other slots are
/// never read by a slot-homogeneous polynomial).
fn slot_values(slot: usize, m: &SL2Rational) -> [Rat; 12] {
    let mut vals: [Rat; 12] = std::array::from_fn(|_| Rat::zero());
    let base = 4 * (slot - 1);
    vals[base] = m.a.clone();
    vals[base + 1] = m.b.clone();
    vals[base + 2] = m.c.clone();
    vals[base + 3] = m.d.clone();
    vals
}

fn entry_var(slot: usize, row: usize, col: usize) -> usize {
    4 * (slot - 1) + 2 * row + col
}

fn sym_entry_poly(slot: usize, n: u32, k: u32, l: u32) -> Polynomial {
    let mut p = Polynomial::zero(ALPHA_ENTRIES.clone());
    let inv = binom_rat(n, k).recip();
    for i in 0..=k.min(n - l) {
        let j = k - i;
        if j > l {
            continue;
        }
        let coeff =
            Rat::from_integer(binomial((n - l) as u64, i as u64) * binomial(l as u64, j as u64))
                * inv.clone();
        let mut exps = vec![0u32; 12];
        exps[entry_var(slot, 0, 0)] = n - l - i;
        exps[entry_var(slot, 0, 1)] = l - j;
        exps[entry_var(slot, 1, 0)] = i;
        exps[entry_var(slot, 1, 1)] = j;
        p = p
            .add(&Polynomial::from_terms(
                ALPHA_ENTRIES.clone(),
                vec![(exps, coeff)],
            ))
            .unwrap();
    }
    p
}

type SymMemo = Lazy<Mutex<HashMap<(usize, u32), Arc<SymMatrix>>>>;

static SYM_MEMO: SymMemo = Lazy::new(|| Mutex::new(HashMap::new()));

/// slot ∈ 1..=3 selects the generator whose generic entries appear.
pub fn sym_power_matrix(slot: usize, n: u32) -> Arc<SymMatrix> {
    assert!((1..=3).contains(&slot));
    if let Some(m) = SYM_MEMO.lock().unwrap().get(&(slot, n)) {
        return m.clone();
    }
    let entries: Vec<Vec<Polynomial>> = (0..=n)
        .map(|k| (0..=n).map(|l| sym_entry_poly(slot, n, k, l)).collect())
        .collect();
    let m = Arc::new(SymMatrix { slot, n, entries });
    // idempotent: concurrent builders insert identical matrices
    SYM_MEMO
        .lock()
        .unwrap()
        .entry((slot, n))
        .or_insert_with(|| m.clone())
        .clone()
}

/// Representation matrix R = D·M (D = diag binom(n,k)) at a concrete
/// matrix; this is the honest operator matrix, multiplicative in X.
pub fn representation_at(n: u32, m: &SL2Rational) -> Vec<Vec<Rat>> {
    let sym = sym_power_matrix(1, n);
    sym.value_at(m)
        .into_iter()
        .enumerate()
        .map(|(k, row)| {
            let d = binom_rat(n, k as u32);
            row.into_iter().map(|v| v * d.clone()).collect()
        })
        .collect()
}

/// ι: V_c ↪ V_a⊗V_b on basis vectors: coeffs[k] lists (i_index, j_index,
/// coefficient) of ι(𝖼_k), the binom(c,k) of the defining formula divided
/// out.
#[derive(Debug, Clone)]
pub struct CGMap {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub coeffs: Vec<Vec<(u32, u32, Rat)>>,
}

pub fn cg_injection(a: u32, b: u32, c: u32) -> Result<CGMap, TensorError> {
    let ec = edge_counts(a, b, c).ok_or(TensorError::Inadmissible(a, b, c))?;
    let (alpha, beta, gamma) = (ec.e_a, ec.e_b, ec.e_c);
    let mut coeffs = Vec::with_capacity(c as usize + 1);
    for k in 0..=c {
        let inv = binom_rat(c, k).recip();
        let mut acc: HashMap<(u32, u32), Rat> = HashMap::new();
        for i in 0..=beta.min(k) {
            let j = k - i;
            if j > alpha {
                continue;
            }
            for m in 0..=gamma {
                let mut coeff = Rat::from_integer(
                    binomial(beta as u64, i as u64)
                        * binomial(alpha as u64, j as u64)
                        * binomial(gamma as u64, m as u64),
                ) * inv.clone();
                if m % 2 == 1 {
                    coeff = -coeff;
                }
                *acc.entry((i + gamma - m, j + m)).or_insert_with(Rat::zero) += coeff;
            }
        }
        let mut terms: Vec<(u32, u32, Rat)> = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((u, v), c)| (u, v, c))
            .collect();
        terms.sort_by_key(|(u, v, _)| (*u, *v));
        coeffs.push(terms);
    }
    Ok(CGMap { a, b, c, coeffs })
}

pub type TripleIndex = [u32; 3];

/// (cg(i₁,i₂,e) ⊗ id) ∘ cg(e,i₃,d): image of each V_d basis vector in the
/// V_{i₁}⊗V_{i₂}⊗V_{i₃} basis. Re-injecting 𝖾_s uses the map on 𝖾_s
/// itself, i.e. the 1/binom(e,s) bookkeeping is already folded in.
pub fn left_assoc_injection(
    i: [u32; 3],
    e: u32,
    d: u32,
) -> Result<Vec<Vec<(TripleIndex, Rat)>>, TensorError> {
    let outer = cg_injection(e, i[2], d)?;
    let inner = cg_injection(i[0], i[1], e)?;
    let mut out = Vec::with_capacity(d as usize + 1);
    for k in 0..=d {
        let mut acc: HashMap<TripleIndex, Rat> = HashMap::new();
        for (s, t, c1) in &outer.coeffs[k as usize] {
            for (u, v, c2) in &inner.coeffs[*s as usize] {
                let coeff = c1.clone() * c2.clone();
                *acc.entry([*u, *v, *t]).or_insert_with(Rat::zero) += coeff;
            }
        }
        let mut terms: Vec<(TripleIndex, Rat)> =
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        terms.sort_by_key(|(ix, _)| *ix);
        out.push(terms);
    }
    Ok(out)
}

/// Σ_k binom(d,k) 𝖽*_k⊗𝖽_k pushed through the injections: e on the vector
/// side, f on the dual side (the dual injection reuses the same CG
/// coefficients).
#[derive(Debug, Clone)]
pub struct CentralTensor {
    pub label: Rank3Label,
    /// (dual multi-index, vector multi-index, coefficient)
    pub terms: Vec<(TripleIndex, TripleIndex, Rat)>,
}

pub fn central_tensor(label: &Rank3Label) -> CentralTensor {
    let i = [label.a, label.b, label.c];
    // admissibility of all four triples is a Rank3Label invariant
    let vec_side = left_assoc_injection(i, label.e, label.d).expect("label invariant");
    let dual_side = left_assoc_injection(i, label.f, label.d).expect("label invariant");
    let mut acc: HashMap<(TripleIndex, TripleIndex), Rat> = HashMap::new();
    for k in 0..=label.d {
        let dk = binom_rat(label.d, k);
        for (di, dc) in &dual_side[k as usize] {
            for (vi, vc) in &vec_side[k as usize] {
                let coeff = dk.clone() * dc.clone() * vc.clone();
                *acc.entry((*di, *vi)).or_insert_with(Rat::zero) += coeff;
            }
        }
    }
    let mut terms: Vec<(TripleIndex, TripleIndex, Rat)> = acc
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((d, v), c)| (d, v, c))
        .collect();
    terms.sort_by_key(|(d, v, _)| (*d, *v));
    CentralTensor {
        label: label.clone(),
        terms,
    }
}

/// Σ over tensor terms of coeff × Π_slots 𝗇*_{n−μ′}(X_slot·𝗇_{n−μ}).
pub fn contract(t: &CentralTensor) -> Polynomial {
    let dims = [t.label.a, t.label.b, t.label.c];
    let syms: Vec<Arc<SymMatrix>> = (0..3).map(|s| sym_power_matrix(s + 1, dims[s])).collect();
    let mut out = Polynomial::zero(ALPHA_ENTRIES.clone());
    for (dual, vec, coeff) in &t.terms {
        let mut term = Polynomial::constant(ALPHA_ENTRIES.clone(), coeff.clone());
        for s in 0..3 {
            let n = dims[s];
            term = term.mul(syms[s].entry(n - dual[s], n - vec[s])).unwrap();
        }
        out = out.add(&term).unwrap();
    }
    out
}

pub fn tensorial_central_function(label: &Rank3Label) -> Polynomial {
    contract(&central_tensor(label))
}

static CONTRACT_MEMO: Lazy<Mutex<HashMap<Rank3Label, Arc<Polynomial>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn contract_cached(label: &Rank3Label) -> Arc<Polynomial> {
    if let Some(p) = CONTRACT_MEMO.lock().unwrap().get(label) {
        return p.clone();
    }
    let p = Arc::new(tensorial_central_function(label));
    CONTRACT_MEMO
        .lock()
        .unwrap()
        .entry(label.clone())
        .or_insert(p)
        .clone()
}

/// Rank-reduction sanity helper: admissibility of the four label triples,
/// exposed for tests that build degenerate labels directly.
pub fn degenerate_label(a: u32, b: u32, c: u32) -> Result<Rank3Label, TensorError> {
    if !is_admissible(a, b, c) {
        return Err(TensorError::Inadmissible(a, b, c));
    }
    Rank3Label::new(a, b, 0, c, c, c).map_err(|_| TensorError::Inadmissible(a, b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{poly_parse, rat, rint};

    fn entry_poly(text: &str) -> Polynomial {
        poly_parse(ALPHA_ENTRIES.clone(), text).unwrap()
    }

    #[test]
    fn sym_matrix_small() {
        let s1 = sym_power_matrix(1, 1);
        assert_eq!(*s1.entry(0, 0), entry_poly("x1_11"));
        assert_eq!(*s1.entry(0, 1), entry_poly("x1_12"));
        assert_eq!(*s1.entry(1, 0), entry_poly("x1_21"));
        assert_eq!(*s1.entry(1, 1), entry_poly("x1_22"));
        let s2 = sym_power_matrix(2, 2);
        assert_eq!(
            *s2.entry(1, 1),
            entry_poly("1/2*x2_12*x2_21 + 1/2*x2_11*x2_22")
        );
        let s3 = sym_power_matrix(1, 3);
        assert_eq!(
            *s3.entry(1, 1),
            entry_poly("1/3*x1_11^2*x1_22 + 2/3*x1_11*x1_12*x1_21")
        );
        // n = 0 is the 1×1 identity
        let s0 = sym_power_matrix(3, 0);
        assert!(!s0.entry(0, 0).is_zero());
        assert_eq!(s0.entry(0, 0).coeff(&[0; 12]), rint(1));
    }

    #[test]
    fn cg_examples() {
        // (a,a,0): 𝖼₀ ↦ Σ_m (−1)^m binom(a,m) 𝖺_{a−m}⊗𝖻_m
        let m = cg_injection(1, 1, 0).unwrap();
        assert_eq!(m.coeffs[0], vec![(0, 1, -rint(1)), (1, 0, rint(1))]);
        let m = cg_injection(2, 2, 0).unwrap();
        assert_eq!(
            m.coeffs[0],
            vec![(0, 2, rint(1)), (1, 1, -rint(2)), (2, 0, rint(1))]
        );
        // (1,1,2) top summand, no contraction
        let m = cg_injection(1, 1, 2).unwrap();
        assert_eq!(m.coeffs[0], vec![(0, 0, rint(1))]);
        assert_eq!(m.coeffs[1], vec![(0, 1, rat(1, 2)), (1, 0, rat(1, 2))]);
        assert_eq!(m.coeffs[2], vec![(1, 1, rint(1))]);
        assert!(cg_injection(1, 1, 1).is_err());
    }

    #[test]
    fn contraction_base_examples() {
        // trace of the first slot
        let l = Rank3Label::new(1, 0, 0, 1, 1, 1).unwrap();
        assert_eq!(tensorial_central_function(&l), entry_poly("x1_11 + x1_22"));
        // the ch011 pattern
        let l = Rank3Label::new(1, 1, 0, 0, 0, 0).unwrap();
        assert_eq!(
            tensorial_central_function(&l),
            entry_poly("x1_11*x2_22 + x1_22*x2_11 - x1_12*x2_21 - x1_21*x2_12")
        );
        // scalar 1 tensor
        let l = Rank3Label::new(0, 0, 0, 0, 0, 0).unwrap();
        assert_eq!(
            tensorial_central_function(&l),
            Polynomial::one(ALPHA_ENTRIES.clone())
        );
        // (1,1,0,2): (t₁t₂ + t₁₂)/2 written in entry variables
        let l = Rank3Label::new(1, 1, 0, 2, 2, 2).unwrap();
        assert_eq!(
            tensorial_central_function(&l),
            entry_poly(
                "x1_11*x2_11 + x1_22*x2_22 + 1/2*x1_11*x2_22 + 1/2*x1_22*x2_11 \
                 + 1/2*x1_12*x2_21 + 1/2*x1_21*x2_12"
            )
        );
    }

    #[test]
    fn identity_evaluation() {
        let l = Rank3Label::new(1, 0, 0, 1, 1, 1).unwrap();
        let p = tensorial_central_function(&l);
        let ones: Vec<Rat> = (0..12)
            .map(|i| {
                if i % 4 == 0 || i % 4 == 3 {
                    rint(1)
                } else {
                    rint(0)
                }
            })
            .collect();
        assert_eq!(p.eval_slice(&ones), rint(2));
    }
}
