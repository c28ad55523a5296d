//! Admissibility combinatorics and the closed-form spin-network constants:
//! edge counts, signs, Δ and Θ, bubble/fusion constants, the spin-1 6j
//! symbols, fusion coefficients, i-admissible sequences, and multiplicity
//! bookkeeping.

use crate::exactmath::{factorial, RadExact, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// {a,b,c} is admissible iff a+b+c is even and the triangle inequalities
/// hold — equivalently all three edge counts are ≥ 0.
pub fn is_admissible(a: u32, b: u32, c: u32) -> bool {
    (a + b + c).is_multiple_of(2) && a + b >= c && b + c >= a && a + c >= b
}

/// The c with {a,b,c} admissible: {a+b−2j : 0 ≤ j ≤ min(a,b)}, decreasing.
pub fn admissible_range(a: u32, b: u32) -> Vec<u32> {
    (0..=a.min(b)).map(|j| a + b - 2 * j).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeCounts {
    pub e_a: u32,
    pub e_b: u32,
    pub e_c: u32,
    pub e_total: u32,
}

/// e_a = (b+c−a)/2 etc.; e_total = (a+b+c)/2. None if inadmissible.
pub fn edge_counts(a: u32, b: u32, c: u32) -> Option<EdgeCounts> {
    if !is_admissible(a, b, c) {
        return None;
    }
    Some(EdgeCounts {
        e_a: (b + c - a) / 2,
        e_b: (a + c - b) / 2,
        e_c: (a + b - c) / 2,
        e_total: (a + b + c) / 2,
    })
}

/// e_a(b,c) as a signed value, defined for any labels with matching parity.
/// Used by the reduction-case gates, where negativity means "inadmissible".
pub fn e_count(a: i64, b: i64, c: i64) -> i64 {
    debug_assert!((a + b + c) % 2 == 0);
    (b + c - a) / 2
}

/// 𝔰_a(b,c) = (−1)^{e_a(b,c)}.
pub fn sign_s(a: u32, b: u32, c: u32) -> Option<i8> {
    let ec = edge_counts(a, b, c)?;
    Some(if ec.e_a % 2 == 0 { 1 } else { -1 })
}

/// Δ(c) = c+1, the value of a single c-labeled loop.
pub fn delta(c: u32) -> i64 {
    c as i64 + 1
}

/// Θ(a,b,c) = e_a! e_b! e_c! (e+1)! / (a! b! c!).
pub fn theta(a: u32, b: u32, c: u32) -> Option<Rat> {
    let ec = edge_counts(a, b, c)?;
    let num = factorial(ec.e_a as u64)
        * factorial(ec.e_b as u64)
        * factorial(ec.e_c as u64)
        * factorial(ec.e_total as u64 + 1);
    let den = factorial(a as u64) * factorial(b as u64) * factorial(c as u64);
    Some(Rat::new(num, den))
}

/// 𝔟_c(a,b) = Θ(a,b,c)/Δ(c); popping a bubble multiplies by this.
pub fn bubble_const(c: u32, a: u32, b: u32) -> Option<Rat> {
    Some(theta(a, b, c)? / Rat::from_integer(BigInt::from(delta(c))))
}

/// 𝔣_c(a,b) = 1/𝔟_c(a,b).
pub fn fusion_const(c: u32, a: u32, b: u32) -> Option<Rat> {
    let b_const = bubble_const(c, a, b)?;
    debug_assert!(!b_const.is_zero());
    Some(b_const.recip())
}

/// Spin-1 6j symbol for a' ∈ {a±1}, c' ∈ {c±1}; both {a,b,c} and {a',b,c'}
/// must be admissible. Values from the four-row table:
///   {a+1,c+1} → 1
///   {a−1,c+1} → e_c(a,b)/a
///   {a+1,c−1} → −e_a(c,b)/(c+1)
///   {a−1,c−1} → e_b(a,c)(e(a,b,c)+1)/(a(c+1))
pub fn six_j_spin1(a_new: u32, c_new: u32, a: u32, b: u32, c: u32) -> Option<Rat> {
    let ec = edge_counts(a, b, c)?;
    if !is_admissible(a_new, b, c_new) {
        return None;
    }
    let up_a = if a_new == a + 1 {
        true
    } else if a >= 1 && a_new == a - 1 {
        false
    } else {
        return None;
    };
    let up_c = if c_new == c + 1 {
        true
    } else if c >= 1 && c_new == c - 1 {
        false
    } else {
        return None;
    };
    let r = |n: i64, d: i64| Rat::new(BigInt::from(n), BigInt::from(d));
    Some(match (up_a, up_c) {
        (true, true) => Rat::one(),
        (false, true) => r(ec.e_c as i64, a as i64),
        (true, false) => r(-(ec.e_a as i64), c as i64 + 1),
        (false, false) => r(
            ec.e_b as i64 * (ec.e_total as i64 + 1),
            a as i64 * (c as i64 + 1),
        ),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FusionCoeffKey {
    pub b: u32,
    pub a: u32,
    pub a_new: u32,
    pub c: u32,
    pub c_new: u32,
}

impl FusionCoeffKey {
    pub fn new(b: u32, a: u32, a_new: u32, c: u32, c_new: u32) -> Self {
        FusionCoeffKey {
            b,
            a,
            a_new,
            c,
            c_new,
        }
    }
}

/// 𝔉(b; a,a'; c,c') = 𝔰_{a'}(1,a)·𝔣_{a'}(1,a)·6j. Absent (None) on
/// inadmissible keys — callers must skip such terms, not treat them as 0.
pub fn fusion_coeff(k: FusionCoeffKey) -> Option<Rat> {
    let sj = six_j_spin1(k.a_new, k.c_new, k.a, k.b, k.c)?;
    let s = sign_s(k.a_new, 1, k.a)?;
    let f = fusion_const(k.a_new, 1, k.a)?;
    let signed = if s < 0 { -f } else { f };
    Some(signed * sj)
}

/// 𝔉̂(b; a,a'; c,c') = 𝔰_{a'}(1,a)·√(𝔣_{a'}(1,a)/𝔣_{c'}(1,c))·6j.
pub fn norm_fusion_coeff(k: FusionCoeffKey) -> Option<RadExact> {
    let sj = six_j_spin1(k.a_new, k.c_new, k.a, k.b, k.c)?;
    let s = sign_s(k.a_new, 1, k.a)?;
    let fa = fusion_const(k.a_new, 1, k.a)?;
    let fc = fusion_const(k.c_new, 1, k.c)?;
    let root = RadExact::sqrt_of(fa / fc);
    let mut out = root.mul(&RadExact::from_rational(&sj));
    if s < 0 {
        out = out.neg();
    }
    Some(out)
}

/// j is i-admissible iff 0 ≤ j_l ≤ min(i_1+…+i_l − 2(j_1+…+j_{l−1}), i_{l+1}).
pub fn is_i_admissible(i: &[u32], j: &[u32]) -> bool {
    if i.is_empty() || j.len() + 1 != i.len() {
        return false;
    }
    let mut isum: i64 = i[0] as i64;
    let mut jsum: i64 = 0;
    for (l, &jl) in j.iter().enumerate() {
        let cap = (isum - 2 * jsum).min(i[l + 1] as i64);
        if (jl as i64) > cap {
            return false;
        }
        isum += i[l + 1] as i64;
        jsum += jl as i64;
    }
    true
}

/// All i-admissible j-vectors in lexicographic order.
pub fn enumerate_i_admissible(i: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if i.is_empty() {
        return out;
    }
    let mut j = Vec::with_capacity(i.len() - 1);
    fn rec(i: &[u32], isum: i64, jsum: i64, j: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let l = j.len();
        if l == i.len() - 1 {
            out.push(j.clone());
            return;
        }
        // isum − 2·jsum ≥ 0 is maintained, so the cap is never negative
        let cap = (isum - 2 * jsum).min(i[l + 1] as i64);
        for jl in 0..=cap {
            j.push(jl as u32);
            rec(i, isum + i[l + 1] as i64, jsum + jl, j, out);
            j.pop();
        }
    }
    rec(i, i[0] as i64, 0, &mut j, &mut out);
    out
}

/// Intermediate labels e with e ∈ ⌈a,b⌋ and d ∈ ⌈e,c⌋, in decreasing-e
/// (left-associative enumeration) order. Its length is the multiplicity of
/// V_d inside V_a⊗V_b⊗V_c; multiplicity indices are 1-based into this list.
pub fn multiplicity_intermediates(a: u32, b: u32, c: u32, d: u32) -> Vec<u32> {
    admissible_range(a, b)
        .into_iter()
        .filter(|&e| is_admissible(e, c, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rint};

    #[test]
    fn theta_values() {
        assert_eq!(theta(0, 0, 0).unwrap(), rint(1));
        assert_eq!(theta(2, 2, 2).unwrap(), rint(3));
        assert_eq!(theta(1, 1, 2).unwrap(), rint(3));
        assert_eq!(bubble_const(2, 1, 1).unwrap(), rint(1));
    }

    #[test]
    fn fusion_const_spin1() {
        for a in 1..10 {
            assert_eq!(fusion_const(a + 1, 1, a).unwrap(), rint(1));
            assert_eq!(
                fusion_const(a - 1, 1, a).unwrap(),
                rat(a as i64, a as i64 + 1)
            );
        }
    }

    #[test]
    fn six_j_table_spot() {
        assert_eq!(six_j_spin1(0, 2, 1, 2, 1).unwrap(), rint(1));
        assert_eq!(six_j_spin1(1, 1, 2, 2, 2).unwrap(), rat(2, 3));
        assert_eq!(six_j_spin1(3, 3, 2, 2, 2).unwrap(), rint(1));
    }

    #[test]
    fn intermediates() {
        assert_eq!(multiplicity_intermediates(1, 1, 1, 1), vec![2, 0]);
        assert_eq!(multiplicity_intermediates(3, 2, 2, 3), vec![5, 3, 1]);
        assert_eq!(multiplicity_intermediates(3, 2, 2, 7), vec![5]);
    }

    #[test]
    fn i_admissible_multiset() {
        let js = enumerate_i_admissible(&[3, 2, 2]);
        let mut ds: Vec<i64> = js
            .iter()
            .map(|j| 3 + 2 + 2 - 2 * (j[0] as i64 + j[1] as i64))
            .collect();
        ds.sort_unstable();
        assert_eq!(ds, vec![1, 1, 3, 3, 3, 5, 5, 7]);
    }
}
