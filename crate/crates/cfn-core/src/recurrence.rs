//! Combinatorial engine: rank-1/2/3 central functions and barbell
//! functions by exact loop-multiplication recurrences with memoization.
//!
//! Multiplying a simple loop into a diagram relabels each edge it runs
//! along by ±1; the coefficient of a relabeling is the cycle product
//! Π𝔉 / Π𝔣_{a′}(1,a) (radical-free form of Π𝔉̂), times 𝔰_{a′}(1,a)^{N}
//! per edge — i.e. −1 per decremented edge of odd kink parity N. The
//! frozen parities are forced by exact pointwise solves against the
//! tensorial contraction at asymmetric labels; every other candidate
//! sign layer agrees at e=f labels but fails there.

use crate::exactmath::{
    poly_parse, rat, rint, Polynomial, RadExact, Rat, ALPHA_T, ALPHA_X, ALPHA_XYZ,
};
use crate::reptheory::{
    e_count, fusion_coeff, fusion_const, is_admissible, multiplicity_intermediates,
    norm_fusion_coeff, sign_s, six_j_spin1, FusionCoeffKey,
};
use crate::tracecoords::{reduce_t123, reduce_trace_word, TraceWord};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error(
        "inadmissible vertex triple {name}=({t0},{t1},{t2}) in label ({a},{b},{c},{d},{e},{f})"
    )]
    InadmissibleVertex {
        name: &'static str,
        t0: u32,
        t1: u32,
        t2: u32,
        a: u32,
        b: u32,
        c: u32,
        d: u32,
        e: u32,
        f: u32,
    },
    #[error("inadmissible triple ({0},{1},{2})")]
    InadmissibleTriple(u32, u32, u32),
    #[error("multiplicity index ({i},{j}) out of range 1..={m} for (a,b,c,d)=({a},{b},{c},{d})")]
    IndexOutOfRange {
        a: u32,
        b: u32,
        c: u32,
        d: u32,
        i: u32,
        j: u32,
        m: usize,
    },
    #[error("base label has no reduction step")]
    BaseLabel,
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

/// Edge labels of the rank-3 diagram: two trivalent vertices {a,b,e},
/// {e,c,d} on the vector side joined through e, mirrored with f on the
/// dual side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank3Label {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub e: u32,
    pub f: u32,
}

impl Rank3Label {
    pub fn new(a: u32, b: u32, c: u32, d: u32, e: u32, f: u32) -> Result<Self, RecurrenceError> {
        let vertices: [(&'static str, u32, u32, u32); 4] = [
            ("{a,b,e}", a, b, e),
            ("{e,c,d}", e, c, d),
            ("{a,b,f}", a, b, f),
            ("{f,c,d}", f, c, d),
        ];
        for (name, t0, t1, t2) in vertices {
            if !is_admissible(t0, t1, t2) {
                return Err(RecurrenceError::InadmissibleVertex {
                    name,
                    t0,
                    t1,
                    t2,
                    a,
                    b,
                    c,
                    d,
                    e,
                    f,
                });
            }
        }
        Ok(Rank3Label { a, b, c, d, e, f })
    }

    pub fn base() -> Self {
        Rank3Label {
            a: 0,
            b: 0,
            c: 0,
            d: 0,
            e: 0,
            f: 0,
        }
    }

    pub fn is_base(&self) -> bool {
        *self == Rank3Label::base()
    }

    /// Fundamental order a+b+c.
    pub fn order(&self) -> u32 {
        self.a + self.b + self.c
    }

    fn get(&self, edge: Edge) -> u32 {
        match edge {
            Edge::A => self.a,
            Edge::B => self.b,
            Edge::C => self.c,
            Edge::D => self.d,
            Edge::E => self.e,
            Edge::F => self.f,
        }
    }

    fn with(&self, edge: Edge, value: u32) -> Rank3Label {
        let mut l = self.clone();
        match edge {
            Edge::A => l.a = value,
            Edge::B => l.b = value,
            Edge::C => l.c = value,
            Edge::D => l.d = value,
            Edge::E => l.e = value,
            Edge::F => l.f = value,
        }
        l
    }

    fn is_valid(&self) -> bool {
        is_admissible(self.a, self.b, self.e)
            && is_admissible(self.e, self.c, self.d)
            && is_admissible(self.a, self.b, self.f)
            && is_admissible(self.f, self.c, self.d)
    }
}

/// Two loops labeled a and c joined by a bar labeled b.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarbellLabel {
    pub a: u32,
    pub c: u32,
    pub b: u32,
}

impl BarbellLabel {
    pub fn new(a: u32, c: u32, b: u32) -> Result<Self, RecurrenceError> {
        if !is_admissible(a, a, b) {
            return Err(RecurrenceError::InadmissibleTriple(a, a, b));
        }
        if !is_admissible(c, c, b) {
            return Err(RecurrenceError::InadmissibleTriple(c, c, b));
        }
        Ok(BarbellLabel { a, c, b })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumLabel {
    Rank3(Rank3Label),
    Barbell(BarbellLabel),
}

/// Labels with merged coefficients; zero coefficients dropped.
#[derive(Debug, Clone, Default)]
pub struct FormalSum {
    terms: BTreeMap<SumLabel, Rat>,
}

impl FormalSum {
    pub fn new() -> Self {
        FormalSum::default()
    }

    pub fn push(&mut self, coeff: Rat, label: SumLabel) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(label);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn take(&mut self, label: &SumLabel) -> Option<Rat> {
        self.terms.remove(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SumLabel, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    A,
    B,
    C,
    D,
    E,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopId {
    AB,
    CD,
    AEDF,
    BEDF,
    BECF,
    AECF,
    BarbellX,
    BarbellY,
    BarbellZ,
}

/// A simple cycle of the fixed rank-3 diagram. `externals[i]` sits at the
/// vertex between `edges[i-1]` and `edges[i]` (cyclically); `kinks[i]` is
/// the frozen N_i parity of `edges[i]`.
#[derive(Debug, Clone)]
pub struct LoopSpec {
    pub id: LoopId,
    pub edges: &'static [Edge],
    pub externals: &'static [Edge],
    pub kinks: &'static [u8],
    /// trace word of the multiplying central function
    pub multiplier: &'static [i8],
}

use Edge::*;

static LOOPS: [LoopSpec; 6] = [
    LoopSpec {
        id: LoopId::AB,
        edges: &[A, B],
        externals: &[E, F],
        kinks: &[0, 0],
        multiplier: &[1, -2],
    },
    LoopSpec {
        id: LoopId::CD,
        edges: &[C, D],
        externals: &[E, F],
        kinks: &[0, 0],
        multiplier: &[3],
    },
    LoopSpec {
        id: LoopId::AEDF,
        edges: &[A, E, D, F],
        externals: &[B, B, C, C],
        kinks: &[0, 1, 0, 1],
        multiplier: &[1],
    },
    LoopSpec {
        id: LoopId::BEDF,
        edges: &[B, E, D, F],
        externals: &[A, A, C, C],
        kinks: &[0, 0, 0, 0],
        multiplier: &[2],
    },
    LoopSpec {
        id: LoopId::BECF,
        edges: &[B, E, C, F],
        externals: &[A, A, D, D],
        kinks: &[0, 1, 0, 1],
        multiplier: &[2, -3],
    },
    LoopSpec {
        id: LoopId::AECF,
        edges: &[A, E, C, F],
        externals: &[B, B, D, D],
        kinks: &[0, 0, 0, 0],
        multiplier: &[1, -3],
    },
];

pub fn loop_spec(id: LoopId) -> &'static LoopSpec {
    LOOPS
        .iter()
        .find(|l| l.id == id)
        .expect("rank-3 loop table covers all six cycles")
}

/// The shared sign layer of both coefficient routes: 𝔰_{a′}(1,a)^{N} per
/// edge, i.e. −1 per decremented edge of odd kink parity.
fn sign_layer(spec: &LoopSpec, signs: &[i8]) -> i8 {
    let mut sign = 1i8;
    for (&s, &k) in signs.iter().zip(spec.kinks.iter()) {
        if s < 0 && k == 1 {
            sign = -sign;
        }
    }
    sign
}

/// Exact rational coefficient of the relabeling `signs` (±1 per loop
/// edge), evaluated at `label`; None exactly when the relabeling is
/// inadmissible (excluded-term convention).
pub fn loop_coefficient(spec: &LoopSpec, label: &Rank3Label, signs: &[i8]) -> Option<Rat> {
    let n = spec.edges.len();
    assert_eq!(signs.len(), n);
    let mut acc = Rat::one();
    for i in 0..n {
        let pi = (i + n - 1) % n;
        let prev = label.get(spec.edges[pi]);
        let next = label.get(spec.edges[i]);
        let new_of = |v: u32, s: i8| -> Option<u32> {
            if s > 0 {
                Some(v + 1)
            } else {
                v.checked_sub(1)
            }
        };
        let key = FusionCoeffKey {
            b: label.get(spec.externals[i]),
            a: prev,
            a_new: new_of(prev, signs[pi])?,
            c: next,
            c_new: new_of(next, signs[i])?,
        };
        acc *= fusion_coeff(key)?;
    }
    for (&edge, &s) in spec.edges.iter().zip(signs.iter()) {
        let v = label.get(edge);
        let v_new = if s > 0 { v + 1 } else { v.checked_sub(1)? };
        acc /= fusion_const(v_new, 1, v)?;
    }
    let s = sign_layer(spec, signs);
    Some(if s < 0 { -acc } else { acc })
}

/// Cross-check route: the same coefficient as a product of normalized
/// fusion coefficients (radicals cancel around the closed cycle).
pub fn loop_coefficient_rad(spec: &LoopSpec, label: &Rank3Label, signs: &[i8]) -> Option<RadExact> {
    let n = spec.edges.len();
    let mut acc = RadExact::one();
    for i in 0..n {
        let pi = (i + n - 1) % n;
        let prev = label.get(spec.edges[pi]);
        let next = label.get(spec.edges[i]);
        let new_of = |v: u32, s: i8| -> Option<u32> {
            if s > 0 {
                Some(v + 1)
            } else {
                v.checked_sub(1)
            }
        };
        let key = FusionCoeffKey {
            b: label.get(spec.externals[i]),
            a: prev,
            a_new: new_of(prev, signs[pi])?,
            c: next,
            c_new: new_of(next, signs[i])?,
        };
        acc = acc.mul(&norm_fusion_coeff(key)?);
    }
    if sign_layer(spec, signs) < 0 {
        acc = acc.neg();
    }
    Some(acc)
}

/// t_loop · χ_label = Σ (admissible ±1 relabelings of the loop edges).
pub fn multiply_simple_loop(label: &Rank3Label, spec: &LoopSpec) -> FormalSum {
    let n = spec.edges.len();
    let mut out = FormalSum::new();
    for pattern in 0..(1u32 << n) {
        let signs: Vec<i8> = (0..n)
            .map(|i| if pattern & (1 << i) != 0 { -1 } else { 1 })
            .collect();
        let mut relabeled = label.clone();
        let mut valid = true;
        for (i, &edge) in spec.edges.iter().enumerate() {
            let v = label.get(edge);
            match if signs[i] > 0 {
                Some(v + 1)
            } else {
                v.checked_sub(1)
            } {
                Some(nv) => relabeled = relabeled.with(edge, nv),
                None => {
                    valid = false;
                    break;
                }
            }
        }
        if !valid || !relabeled.is_valid() {
            continue;
        }
        let coeff =
            loop_coefficient(spec, label, &signs).expect("admissible relabeling has a coefficient");
        out.push(coeff, SumLabel::Rank3(relabeled));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarbellCase {
    /// e = 0: barbell in f after closing the (X₁X₂⁻¹, X₃) pair
    EZero,
    /// f = 0: mirrored barbell in e
    FZero,
}

#[derive(Debug, Clone)]
pub enum ReduceStep {
    Loop {
        loop_id: LoopId,
        multiplier: TraceWord,
        decremented: Rank3Label,
        /// relabelings other than the all-(+1) one (whose term is χ_label
        /// itself, coefficient exactly 1), evaluated at `decremented`
        lower: FormalSum,
    },
    Barbell(BarbellCase),
}

/// The eight reduction cases, tried in a fixed order: the two-edge loops
/// first, then the four-edge loops, then the degenerate barbell cases.
pub fn reduce_step(label: &Rank3Label) -> Result<ReduceStep, RecurrenceError> {
    if label.is_base() {
        return Err(RecurrenceError::BaseLabel);
    }
    let (a, b, c, d, e, f) = (
        label.a as i64,
        label.b as i64,
        label.c as i64,
        label.d as i64,
        label.e as i64,
        label.f as i64,
    );
    let pos = |x: i64| x > 0;
    let case: Option<LoopId> = if pos(e_count(e, a, b)) && pos(e_count(f, a, b)) {
        Some(LoopId::AB)
    } else if pos(e_count(e, c, d)) && pos(e_count(f, c, d)) {
        Some(LoopId::CD)
    } else if pos(e_count(b, a, e))
        && pos(e_count(b, a, f))
        && pos(e_count(c, d, e))
        && pos(e_count(c, d, f))
    {
        Some(LoopId::AEDF)
    } else if pos(e_count(a, b, e))
        && pos(e_count(a, b, f))
        && pos(e_count(c, d, e))
        && pos(e_count(c, d, f))
    {
        Some(LoopId::BEDF)
    } else if pos(e_count(a, b, e))
        && pos(e_count(a, b, f))
        && pos(e_count(d, c, e))
        && pos(e_count(d, c, f))
    {
        Some(LoopId::BECF)
    } else if pos(e_count(b, a, e))
        && pos(e_count(b, a, f))
        && pos(e_count(d, c, e))
        && pos(e_count(d, c, f))
    {
        Some(LoopId::AECF)
    } else if label.e == 0 {
        return Ok(ReduceStep::Barbell(BarbellCase::EZero));
    } else if label.f == 0 {
        return Ok(ReduceStep::Barbell(BarbellCase::FZero));
    } else {
        None
    };
    let Some(id) = case else {
        return Err(RecurrenceError::InternalInvariant(format!(
            "no reduction case applies to ({},{},{},{},{},{})",
            label.a, label.b, label.c, label.d, label.e, label.f
        )));
    };
    let spec = loop_spec(id);
    let mut decremented = label.clone();
    for &edge in spec.edges {
        let v = label.get(edge);
        debug_assert!(v > 0, "reduction gate guarantees positive loop edges");
        decremented = decremented.with(edge, v - 1);
    }
    debug_assert!(decremented.is_valid());
    let mut lower = multiply_simple_loop(&decremented, spec);
    let top = lower.take(&SumLabel::Rank3(label.clone())).ok_or_else(|| {
        RecurrenceError::InternalInvariant("all-(+1) term missing from loop sum".into())
    })?;
    if top != Rat::one() {
        return Err(RecurrenceError::InternalInvariant(format!(
            "all-(+1) coefficient is {}, expected 1",
            top
        )));
    }
    let multiplier = TraceWord::new(spec.multiplier.to_vec()).expect("loop table words are valid");
    Ok(ReduceStep::Loop {
        loop_id: id,
        multiplier,
        decremented,
        lower,
    })
}

/// Table "Rank 1 Central Functions": χ₀=1, χ₁=x, χ_{n+1}=x·χ_n − χ_{n−1}.
pub fn rank1_cf(n: u32) -> Polynomial {
    let x = Polynomial::var(ALPHA_X.clone(), 0);
    let mut prev = Polynomial::one(ALPHA_X.clone());
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = cur.mul(&x).unwrap().sub(&prev).unwrap();
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficient of the two-term single-edge loop recurrence:
/// x·χ̃_{ā,c} = χ̃_{ā+1,c} + q(ā,b)·χ̃_{ā−1,c}.
fn single_loop_q(abar: u32, b: u32) -> Rat {
    let a = rint(abar as i64);
    let h = rat(b as i64, 2);
    (a.clone() - h.clone()) * (a.clone() + h + Rat::one()) / (a.clone() * (a + Rat::one()))
}

/// Net rational coefficient of one term of the Tr(XY) barbell recurrence
/// (the four-𝔉̂ product with radicals cancelled): requires {a,a′,b′},
/// {c,c′,b′}, {a′,a′,b″}, {c′,c′,b″} all admissible.
fn z_term_coeff(
    a: u32,
    c: u32,
    b: u32,
    a_new: u32,
    c_new: u32,
    b_mid: u32,
    b_new: u32,
) -> Option<Rat> {
    if !is_admissible(a, a_new, b_mid)
        || !is_admissible(c, c_new, b_mid)
        || !is_admissible(a_new, a_new, b_new)
        || !is_admissible(c_new, c_new, b_new)
    {
        return None;
    }
    let j1 = six_j_spin1(a_new, b_mid, a, a, b)?;
    let j2 = six_j_spin1(c_new, b_mid, c, c, b)?;
    let j3 = six_j_spin1(a_new, b_new, a, a_new, b_mid)?;
    let j4 = six_j_spin1(c_new, b_new, c, c_new, b_mid)?;
    let sa = sign_s(a_new, 1, a)?;
    let sc = sign_s(c_new, 1, c)?;
    let num = fusion_const(a_new, 1, a)? * fusion_const(c_new, 1, c)?;
    let den = fusion_const(b_mid, 1, b)? * fusion_const(b_new, 1, b_mid)?;
    let mut coeff = j1 * j2 * j3 * j4 * num / den;
    if sa * sc < 0 {
        coeff = -coeff;
    }
    Some(coeff)
}

fn xyz_var(name: &str) -> Polynomial {
    Polynomial::var(ALPHA_XYZ.clone(), ALPHA_XYZ.index_of(name).unwrap())
}

/// Cached engine for the memoized recurrences.
#[derive(Default)]
pub struct Engine {
    rank3: RwLock<HashMap<Rank3Label, Arc<Polynomial>>>,
    barbell: RwLock<HashMap<BarbellLabel, Arc<Polynomial>>>,
}

static SHARED: Lazy<Engine> = Lazy::new(Engine::default);

pub fn shared_engine() -> &'static Engine {
    &SHARED
}

impl Engine {
    pub fn new() -> Self {
        Engine::default()
    }

    /// All memoized rank-3 entries, label-sorted so snapshots of equal
    /// caches are byte-identical when serialized.
    pub fn rank3_snapshot(&self) -> Vec<(Rank3Label, Arc<Polynomial>)> {
        let map = self.rank3.read().unwrap();
        let mut out: Vec<_> = map.iter().map(|(l, p)| (l.clone(), p.clone())).collect();
        out.sort_by_key(|(l, _)| (l.a, l.b, l.c, l.d, l.e, l.f));
        out
    }

    /// Seeds the rank-3 memo, e.g. from a persisted cache. Existing
    /// entries win; callers are trusted on the label→polynomial pairing.
    pub fn preload_rank3<I>(&self, entries: I)
    where
        I: IntoIterator<Item = (Rank3Label, Polynomial)>,
    {
        let mut map = self.rank3.write().unwrap();
        for (l, p) in entries {
            map.entry(l).or_insert_with(|| Arc::new(p));
        }
    }

    /// χ_{a,b,c,d,e,f} as a polynomial in the seven trace coordinates,
    /// t₁₂₃-degree ≤ 1.
    pub fn rank3_cf(&self, label: &Rank3Label) -> Arc<Polynomial> {
        if let Some(p) = self.rank3.read().unwrap().get(label) {
            return p.clone();
        }
        let result = self.compute_rank3(label);
        self.rank3
            .write()
            .unwrap()
            .entry(label.clone())
            .or_insert_with(|| Arc::new(result))
            .clone()
    }

    fn compute_rank3(&self, label: &Rank3Label) -> Polynomial {
        if label.is_base() {
            return Polynomial::one(ALPHA_T.clone());
        }
        match reduce_step(label).expect("admissible non-base label reduces") {
            ReduceStep::Loop {
                multiplier,
                decremented,
                lower,
                ..
            } => {
                let mult = reduce_trace_word(&multiplier);
                let mut acc = mult.mul(&self.rank3_cf(&decremented)).unwrap();
                for (term, coeff) in lower.iter() {
                    let SumLabel::Rank3(l) = term else {
                        unreachable!("loop sums carry rank-3 labels")
                    };
                    acc = acc.sub(&self.rank3_cf(l).scale(coeff)).unwrap();
                }
                reduce_t123(&acc)
            }
            ReduceStep::Barbell(case) => {
                let (bar, lbl, images) = match case {
                    BarbellCase::EZero => {
                        // a=b and c=d; close X₁X₂⁻¹ against X₃
                        let lbl =
                            BarbellLabel::new(label.a, label.c, label.f).expect("label invariant");
                        (label.f, lbl, ["t1*t2 - t12", "t3", "t2*t13 - t123"])
                    }
                    BarbellCase::FZero => {
                        let lbl =
                            BarbellLabel::new(label.c, label.a, label.e).expect("label invariant");
                        (
                            label.e,
                            lbl,
                            ["t3", "t1*t2 - t12", "t123 + t1*t2*t3 - t12*t3 - t1*t23"],
                        )
                    }
                };
                let images: Vec<Polynomial> = images
                    .iter()
                    .map(|s| poly_parse(ALPHA_T.clone(), s).unwrap())
                    .collect();
                let p = self.barbell(&lbl).map_vars(ALPHA_T.clone(), &images);
                let p = if (bar / 2) % 2 == 1 { p.neg() } else { p };
                reduce_t123(&p)
            }
        }
    }

    /// χ̃_{a,c}^b in x = Tr X, y = Tr Y, z = Tr XY.
    pub fn barbell(&self, lbl: &BarbellLabel) -> Arc<Polynomial> {
        if let Some(p) = self.barbell.read().unwrap().get(lbl) {
            return p.clone();
        }
        let result = self.compute_barbell(lbl);
        self.barbell
            .write()
            .unwrap()
            .entry(lbl.clone())
            .or_insert_with(|| Arc::new(result))
            .clone()
    }

    fn compute_barbell(&self, lbl: &BarbellLabel) -> Polynomial {
        let (a, c, b) = (lbl.a, lbl.c, lbl.b);
        if b == 0 {
            let px = rank1_cf(a).map_vars(ALPHA_XYZ.clone(), &[xyz_var("x")]);
            let py = rank1_cf(c).map_vars(ALPHA_XYZ.clone(), &[xyz_var("y")]);
            return px.mul(&py).unwrap();
        }
        if 2 * a > b {
            // x-loop: χ̃_{a,c} = x·χ̃_{a−1,c} − q(a−1,b)·χ̃_{a−2,c}
            let mut acc = xyz_var("x")
                .mul(&self.barbell(&BarbellLabel::new(a - 1, c, b).unwrap()))
                .unwrap();
            let q = single_loop_q(a - 1, b);
            if !q.is_zero() {
                acc = acc
                    .sub(
                        &self
                            .barbell(&BarbellLabel::new(a - 2, c, b).unwrap())
                            .scale(&q),
                    )
                    .unwrap();
            }
            return acc;
        }
        if 2 * c > b {
            let mut acc = xyz_var("y")
                .mul(&self.barbell(&BarbellLabel::new(a, c - 1, b).unwrap()))
                .unwrap();
            let q = single_loop_q(c - 1, b);
            if !q.is_zero() {
                acc = acc
                    .sub(
                        &self
                            .barbell(&BarbellLabel::new(a, c - 2, b).unwrap())
                            .scale(&q),
                    )
                    .unwrap();
            }
            return acc;
        }
        // a = c = b/2: apply the Tr(XY) recurrence at (a−1, c−1, b−2);
        // its unique highest term is (a,c,b) with coefficient exactly 1
        let (ab, cb, bb) = (a - 1, c - 1, b - 2);
        let mut acc = xyz_var("z")
            .mul(&self.barbell(&BarbellLabel::new(ab, cb, bb).unwrap()))
            .unwrap();
        let mut found_top = false;
        let mut sum = FormalSum::new();
        for da in [-1i64, 1] {
            let Some(an) = add_signed(ab, da) else {
                continue;
            };
            for dc in [-1i64, 1] {
                let Some(cn) = add_signed(cb, dc) else {
                    continue;
                };
                for dbm in [-1i64, 1] {
                    let Some(bm) = add_signed(bb, dbm) else {
                        continue;
                    };
                    for dbn in [-1i64, 1] {
                        let Some(bn) = add_signed(bm, dbn) else {
                            continue;
                        };
                        let Some(coeff) = z_term_coeff(ab, cb, bb, an, cn, bm, bn) else {
                            continue;
                        };
                        if (an, cn, bn) == (a, c, b) {
                            debug_assert!(coeff.is_one(), "highest z-term coefficient");
                            found_top = true;
                            continue;
                        }
                        sum.push(
                            coeff,
                            SumLabel::Barbell(BarbellLabel::new(an, cn, bn).unwrap()),
                        );
                    }
                }
            }
        }
        assert!(found_top, "z-recurrence must reach ({},{},{})", a, c, b);
        for (term, coeff) in sum.iter() {
            let SumLabel::Barbell(l) = term else {
                unreachable!("barbell sums carry barbell labels")
            };
            acc = acc.sub(&self.barbell(l).scale(coeff)).unwrap();
        }
        acc
    }

    /// χ^c_{a,b}(X₁,X₂) in x = Tr X₁, y = Tr X₂, z = Tr(X₁X₂⁻¹), via the
    /// degenerate rank-3 embedding (third slot V₀, X₃ = I).
    pub fn rank2_cf(&self, a: u32, b: u32, c: u32) -> Result<Polynomial, RecurrenceError> {
        if !is_admissible(a, b, c) {
            return Err(RecurrenceError::InadmissibleTriple(a, b, c));
        }
        let label = Rank3Label::new(a, b, 0, c, c, c)?;
        let p = self.rank3_cf(&label);
        let img = |s: &str| poly_parse(ALPHA_XYZ.clone(), s).unwrap();
        // traces at X₃ = I: t₃=2, t₁₃=x, t₂₃=y, t₁₂ and t₁₂₃ = x·y − z
        let images = [
            img("x"),
            img("y"),
            img("2"),
            img("x*y - z"),
            img("x"),
            img("y"),
            img("x*y - z"),
        ];
        Ok(p.map_vars(ALPHA_XYZ.clone(), &images))
    }
}

fn add_signed(v: u32, d: i64) -> Option<u32> {
    let r = v as i64 + d;
    if r < 0 {
        None
    } else {
        Some(r as u32)
    }
}

/// e = intermediates[i−1] on the vector side, f = intermediates[j−1] on
/// the dual side (1-based multiplicity indices).
pub fn cfindex_to_label(
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    i: u32,
    j: u32,
) -> Result<Rank3Label, RecurrenceError> {
    let list = multiplicity_intermediates(a, b, c, d);
    let m = list.len();
    if i == 0 || j == 0 || i as usize > m || j as usize > m {
        return Err(RecurrenceError::IndexOutOfRange {
            a,
            b,
            c,
            d,
            i,
            j,
            m,
        });
    }
    Rank3Label::new(a, b, c, d, list[i as usize - 1], list[j as usize - 1])
}

/// All admissible (a,b,c,d,i,j) with a+b+c = s, lex order.
pub fn enumerate_order(s: u32) -> Vec<(u32, u32, u32, u32, u32, u32)> {
    let mut out = Vec::new();
    for a in 0..=s {
        for b in 0..=(s - a) {
            let c = s - a - b;
            for d in 0..=s {
                let m = multiplicity_intermediates(a, b, c, d).len() as u32;
                for i in 1..=m {
                    for j in 1..=m {
                        out.push((a, b, c, d, i, j));
                    }
                }
            }
        }
    }
    out
}

/// Data-parallel batch evaluation over the shared engine.
pub fn batch_rank3(labels: &[Rank3Label]) -> Vec<Arc<Polynomial>> {
    crate::par::par_map(labels, |l| shared_engine().rank3_cf(l))
}

/// Sequential fallback, always compiled.
pub fn batch_rank3_seq(labels: &[Rank3Label]) -> Vec<Arc<Polynomial>> {
    crate::par::seq_map(labels, |l| shared_engine().rank3_cf(l))
}
