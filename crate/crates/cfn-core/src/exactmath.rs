//! Exact rational scalars, sparse multivariate polynomials with a canonical
//! graded-lex form, and `RadExact` values sign·√(q) for the normalized
//! fusion coefficients.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Arbitrary-precision rational; always stored reduced with positive
/// denominator (guaranteed by the backing implementation).
pub type Rat = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("missing variable in assignment: {0}")]
    MissingVar(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("radicand {0} is not a perfect rational square")]
    NotRational(String),
}

/// Fixed, ordered list of variable names. Order is the term order's
/// tie-break and never changes after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarAlphabet {
    names: Vec<String>,
}

impl VarAlphabet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                assert!(names[i] != names[j], "duplicate variable {}", names[i]);
            }
        }
        VarAlphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn brief(&self) -> String {
        self.names.join(",")
    }
}

/// The alphabets used across the crate.
pub static ALPHA_X: Lazy<Arc<VarAlphabet>> = Lazy::new(|| Arc::new(VarAlphabet::new(vec!["x"])));
pub static ALPHA_XYZ: Lazy<Arc<VarAlphabet>> =
    Lazy::new(|| Arc::new(VarAlphabet::new(vec!["x", "y", "z"])));
pub static ALPHA_T: Lazy<Arc<VarAlphabet>> = Lazy::new(|| {
    Arc::new(VarAlphabet::new(vec![
        "t1", "t2", "t3", "t12", "t13", "t23", "t123",
    ]))
});
/// Generic-matrix entry variables x{k}_{ij}, k = matrix slot 1..3.
pub static ALPHA_ENTRIES: Lazy<Arc<VarAlphabet>> = Lazy::new(|| {
    let mut names = Vec::new();
    for k in 1..=3 {
        for i in 1..=2 {
            for j in 1..=2 {
                names.push(format!("x{}_{}{}", k, i, j));
            }
        }
    }
    Arc::new(VarAlphabet::new(names))
});

/// Exponent vector under graded lexicographic order (total degree first,
/// then lex over the alphabet order).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over `Rat` in a fixed alphabet.
/// No stored coefficient is zero; term order is graded-lex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    alphabet: Arc<VarAlphabet>,
    terms: BTreeMap<Mono, Rat>,
}

impl Polynomial {
    pub fn zero(alphabet: Arc<VarAlphabet>) -> Self {
        Polynomial {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alphabet: Arc<VarAlphabet>, c: Rat) -> Self {
        let mut p = Polynomial::zero(alphabet);
        if !c.is_zero() {
            let n = p.alphabet.len();
            p.terms.insert(Mono(vec![0; n]), c);
        }
        p
    }

    pub fn one(alphabet: Arc<VarAlphabet>) -> Self {
        Polynomial::constant(alphabet, Rat::one())
    }

    pub fn var(alphabet: Arc<VarAlphabet>, idx: usize) -> Self {
        assert!(idx < alphabet.len());
        let mut exps = vec![0; alphabet.len()];
        exps[idx] = 1;
        let mut p = Polynomial::zero(alphabet);
        p.terms.insert(Mono(exps), Rat::one());
        p
    }

    pub fn from_terms<I>(alphabet: Arc<VarAlphabet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut p = Polynomial::zero(alphabet);
        for (exps, c) in terms {
            assert_eq!(exps.len(), p.alphabet.len());
            p.add_term(Mono(exps), c);
        }
        p
    }

    pub fn alphabet(&self) -> &Arc<VarAlphabet> {
        &self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Mono(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_alphabet(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.alphabet != other.alphabet {
            return Err(PolyError::AlphabetMismatch(
                self.alphabet.brief(),
                other.alphabet.brief(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_alphabet(other)?;
        let mut out = Polynomial::zero(self.alphabet.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(Mono(exps), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.alphabet.clone());
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.clone() * k.clone();
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.alphabet.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    /// Exact evaluation with a full assignment, one value per variable.
    pub fn eval_slice(&self, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.alphabet.len());
        let maxdeg: Vec<u32> = (0..self.alphabet.len())
            .map(|i| self.degree_in(i))
            .collect();
        // power tables keep repeated monomial evaluation linear
        let powers: Vec<Vec<Rat>> = values
            .iter()
            .zip(&maxdeg)
            .map(|(v, &d)| {
                let mut ps = Vec::with_capacity(d as usize + 1);
                ps.push(Rat::one());
                for _ in 0..d {
                    ps.push(ps.last().unwrap().clone() * v.clone());
                }
                ps
            })
            .collect();
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= powers[i][e as usize].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluation from a name→value map; every variable actually used must
    /// be assigned.
    pub fn eval_map(
        &self,
        assignment: &std::collections::HashMap<String, Rat>,
    ) -> Result<Rat, PolyError> {
        let mut values = Vec::with_capacity(self.alphabet.len());
        for i in 0..self.alphabet.len() {
            match assignment.get(self.alphabet.name(i)) {
                Some(v) => values.push(v.clone()),
                None => {
                    if self.degree_in(i) > 0 {
                        return Err(PolyError::MissingVar(self.alphabet.name(i).to_string()));
                    }
                    values.push(Rat::zero());
                }
            }
        }
        Ok(self.eval_slice(&values))
    }

    /// Ring morphism into `target`: variable i ↦ `images[i]`.
    pub fn map_vars(&self, target: Arc<VarAlphabet>, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.alphabet.len());
        for im in images {
            assert!(im.alphabet == target);
        }
        // per-variable power cache
        let mut pow_cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|im| vec![Polynomial::one(target.clone()), im.clone()])
            .collect();
        let mut out = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut pow_cache[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&images[i]).unwrap();
                    cache.push(next);
                }
                t = t.mul(&cache[e as usize]).unwrap();
            }
            out = out.add(&t).unwrap();
        }
        out
    }

    /// Canonical text form, leading term first: "1/2*t1*t2 + 1/2*t12".
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.mono_text(m);
            if mono.is_empty() {
                out.push_str(&rat_text(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&rat_text(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    fn mono_text(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.alphabet.name(i).to_string()),
                _ => parts.push(format!("{}^{}", self.alphabet.name(i), e)),
            }
        }
        parts.join("*")
    }

    /// JSON form: {"alphabet": [...], "terms": [{"coeff": {"num","den"},
    /// "exps": [...]}]} with terms in canonical order, leading term first.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                serde_json::json!({
                    "coeff": {
                        "num": c.numer().to_string(),
                        "den": c.denom().to_string(),
                    },
                    "exps": m.0.clone(),
                })
            })
            .collect();
        serde_json::json!({
            "alphabet": self.alphabet.names(),
            "terms": terms,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Polynomial, PolyError> {
        let bad = |m: &str| PolyError::Parse(format!("json: {}", m));
        let names = v
            .get("alphabet")
            .and_then(|a| a.as_array())
            .ok_or_else(|| bad("missing alphabet"))?;
        let names: Vec<String> = names
            .iter()
            .map(|n| n.as_str().map(str::to_string))
            .collect::<Option<_>>()
            .ok_or_else(|| bad("alphabet entries must be strings"))?;
        let alphabet = Arc::new(VarAlphabet::new(names));
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| bad("missing terms"))?;
        let mut p = Polynomial::zero(alphabet.clone());
        for t in terms {
            let coeff = t.get("coeff").ok_or_else(|| bad("missing coeff"))?;
            let num = coeff
                .get("num")
                .and_then(|x| x.as_str())
                .ok_or_else(|| bad("missing num"))?;
            let den = coeff
                .get("den")
                .and_then(|x| x.as_str())
                .ok_or_else(|| bad("missing den"))?;
            let num: BigInt = num.parse().map_err(|_| bad("bad num"))?;
            let den: BigInt = den.parse().map_err(|_| bad("bad den"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            let exps = t
                .get("exps")
                .and_then(|e| e.as_array())
                .ok_or_else(|| bad("missing exps"))?;
            let exps: Vec<u32> = exps
                .iter()
                .map(|e| e.as_u64().map(|x| x as u32))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("bad exps"))?;
            if exps.len() != alphabet.len() {
                return Err(bad("exps length != alphabet length"));
            }
            p.add_term(Mono(exps), Rat::new(num, den));
        }
        Ok(p)
    }

    pub fn serialize(&self, format: SerFormat) -> String {
        match format {
            SerFormat::Text => self.to_text(),
            SerFormat::Json => self.to_json().to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SerFormat {
    Text,
    Json,
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn rat_text(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inverse of `to_text`; also accepts unnormalized spacing.
pub fn poly_parse(alphabet: Arc<VarAlphabet>, text: &str) -> Result<Polynomial, PolyError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut p = Polynomial::zero(alphabet.clone());
    if s == "0" {
        return Ok(p);
    }
    // split into signed terms at top level (format has no parentheses)
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut started = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' if started && cur.trim().is_empty() => {
                // sign directly after another sign/exponent marker is part
                // of the term only for forms like "^-1", which the format
                // never emits; treat as error
                return Err(PolyError::Parse(format!("dangling sign in {:?}", s)));
            }
            '+' if started => {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = false;
            }
            '-' if started => {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = true;
            }
            '-' if !started => {
                neg = true;
                started = true;
            }
            c if c.is_whitespace() => {}
            c => {
                cur.push(c);
                started = true;
            }
        }
    }
    terms.push((neg, cur));
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(PolyError::Parse(format!("empty term in {:?}", s)));
        }
        let mut coeff = Rat::one();
        let mut exps = vec![0u32; alphabet.len()];
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(PolyError::Parse(format!("empty factor in {:?}", term)));
            }
            if factor
                .chars()
                .next()
                .map(|c| c.is_ascii_digit())
                .unwrap_or(false)
            {
                let r = parse_rat(factor)
                    .ok_or_else(|| PolyError::Parse(format!("bad coefficient {:?}", factor)))?;
                coeff *= r;
            } else {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: u32 = e.parse().map_err(|_| {
                            PolyError::Parse(format!("bad exponent in {:?}", factor))
                        })?;
                        (n, e)
                    }
                    None => (factor, 1),
                };
                let idx = alphabet
                    .index_of(name)
                    .ok_or_else(|| PolyError::Parse(format!("unknown variable {:?}", name)))?;
                exps[idx] += exp;
            }
        }
        if neg {
            coeff = -coeff;
        }
        p.add_term(Mono(exps), coeff);
    }
    Ok(p)
}

fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.trim().parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Exact value sign·√(radicand), radicand ≥ 0. Products of normalized
/// fusion coefficients around a closed cycle collapse to rationals; the
/// radicand is kept reduced but never factorized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadExact {
    sign: i8,
    radicand: Rat,
}

impl RadExact {
    pub fn new(sign: i8, radicand: Rat) -> Self {
        assert!(!radicand.is_negative(), "radicand must be ≥ 0");
        if sign == 0 || radicand.is_zero() {
            return RadExact {
                sign: 0,
                radicand: Rat::zero(),
            };
        }
        assert!(sign == 1 || sign == -1);
        RadExact { sign, radicand }
    }

    pub fn zero() -> Self {
        RadExact {
            sign: 0,
            radicand: Rat::zero(),
        }
    }

    pub fn one() -> Self {
        RadExact::new(1, Rat::one())
    }

    /// The value r itself (not √r): sign(r)·√(r²).
    pub fn from_rational(r: &Rat) -> Self {
        if r.is_zero() {
            return RadExact::zero();
        }
        let sign = if r.is_negative() { -1 } else { 1 };
        RadExact::new(sign, r.clone() * r.clone())
    }

    /// +√q for q ≥ 0.
    pub fn sqrt_of(q: Rat) -> Self {
        RadExact::new(1, q)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> &Rat {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn neg(&self) -> Self {
        RadExact {
            sign: -self.sign,
            radicand: self.radicand.clone(),
        }
    }

    pub fn mul(&self, other: &RadExact) -> RadExact {
        if self.sign == 0 || other.sign == 0 {
            return RadExact::zero();
        }
        RadExact::new(
            self.sign * other.sign,
            self.radicand.clone() * other.radicand.clone(),
        )
    }

    /// sign·√radicand as a rational; errors unless the radicand is a
    /// perfect square (a non-cycle product was attempted).
    pub fn to_rational(&self) -> Result<Rat, PolyError> {
        if self.sign == 0 {
            return Ok(Rat::zero());
        }
        let num = exact_sqrt(self.radicand.numer().magnitude())
            .ok_or_else(|| PolyError::NotRational(rat_text(&self.radicand)))?;
        let den = exact_sqrt(self.radicand.denom().magnitude())
            .ok_or_else(|| PolyError::NotRational(rat_text(&self.radicand)))?;
        let mag = Rat::new(BigInt::from(num), BigInt::from(den));
        Ok(if self.sign < 0 { -mag } else { mag })
    }
}

fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let a = ALPHA_T.clone();
        let p = Polynomial::from_terms(
            a.clone(),
            vec![
                (vec![1, 1, 0, 0, 0, 0, 0], rat(1, 2)),
                (vec![0, 0, 0, 1, 0, 0, 0], rat(1, 2)),
            ],
        );
        assert_eq!(p.to_text(), "1/2*t1*t2 + 1/2*t12");
        assert_eq!(poly_parse(a, &p.to_text()).unwrap(), p);
    }

    #[test]
    fn graded_lex_display_order() {
        let a = ALPHA_X.clone();
        let p = Polynomial::from_terms(
            a,
            vec![(vec![1], rint(3)), (vec![5], rint(1)), (vec![3], rint(-4))],
        );
        assert_eq!(p.to_text(), "x^5 - 4*x^3 + 3*x");
    }

    #[test]
    fn rad_exact_square() {
        let f = RadExact::new(-1, rat(1, 2));
        let sq = f.mul(&f);
        assert_eq!(sq.to_rational().unwrap(), rat(1, 2));
        assert!(RadExact::sqrt_of(rint(2)).to_rational().is_err());
    }
}
