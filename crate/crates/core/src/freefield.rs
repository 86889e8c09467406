//! Weight-truncated chiral differential operators on a (localized) affine
//! space, realized on the βγ Fock module.
//!
//! Elements are written in a word basis: a word `F⊙s₁…s_k` is the iterated
//! product `F_(−1)(s₁_(−1)(…(s_k)_(−1)𝟙))` with `F` a Laurent monomial in the
//! coordinates and each `s` a derivative `T^m y_i` (m ≥ 1) or `T^m ∂_i`.
//!
//! Internally every word is mapped to the Fock module generated by the modes
//! `γ_{i,0}^{±1}`, `γ_{i,−m}`, `β_{i,−m}` (m ≥ 1), where `y_(k) = γ_{k+1}`,
//! `∂_(k) = β_k` and `[β_p, γ_q] = δ_{p+q,0}`. Products of composite fields
//! are peeled one factor at a time with the normal-ordering identity
//!
//! `(A_(−1)B)_(n)c = Σ_{j≥0} A_(−1−j)B_(n+j)c + Σ_{j≥0} B_(n−1−j)A_(j)c`,
//!
//! bottoming out at single generator modes and at modes of a Laurent prefix.
//! Every sum above is finite because modes lower conformal weight.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::laurent::{fmt_scaled_term, monomial_string, LaurentElement};
use crate::scalar::{rat, ParamScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeFieldError {
    #[error("conformal weight {weight} exceeds the bound {bound}")]
    WeightBoundExceeded { weight: i64, bound: u32 },
    #[error("mismatched variable lists: {0} vs {1} coordinates")]
    MismatchedVariables(usize, usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

type Result<T> = std::result::Result<T, FreeFieldError>;

/// Largest conformal weight a product may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightBound {
    pub max_weight: u32,
}

impl Default for WeightBound {
    fn default() -> Self {
        WeightBound { max_weight: 3 }
    }
}

impl WeightBound {
    pub fn new(max_weight: u32) -> Self {
        WeightBound { max_weight }
    }

    fn check(&self, weight: i64) -> Result<()> {
        if weight > self.max_weight as i64 {
            Err(FreeFieldError::WeightBoundExceeded {
                weight,
                bound: self.max_weight,
            })
        } else {
            Ok(())
        }
    }
}

/// A field symbol of a word tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// `T^order y_var`, order ≥ 1.
    Coord { var: usize, order: u32 },
    /// `T^order ∂_var`, order ≥ 0.
    Frame { var: usize, order: u32 },
}

impl Symbol {
    pub fn weight(&self) -> u32 {
        match *self {
            Symbol::Coord { order, .. } => order,
            Symbol::Frame { order, .. } => order + 1,
        }
    }

    pub fn var(&self) -> usize {
        match *self {
            Symbol::Coord { var, .. } | Symbol::Frame { var, .. } => var,
        }
    }

    fn sort_key(&self) -> (u8, usize, std::cmp::Reverse<u32>) {
        match *self {
            Symbol::Coord { var, order } => (0, var, std::cmp::Reverse(order)),
            Symbol::Frame { var, order } => (1, var, std::cmp::Reverse(order)),
        }
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, order) = match *self {
            Symbol::Coord { var, order } => (format!("y{}", var + 1), order),
            Symbol::Frame { var, order } => (format!("d{}", var + 1), order),
        };
        for _ in 0..order {
            f.write_str("T(")?;
        }
        f.write_str(&base)?;
        for _ in 0..order {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Laurent prefix applied to a sorted tail of field symbols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    prefix: Vec<i32>,
    tail: Vec<Symbol>,
}

impl Word {
    pub fn new(prefix: Vec<i32>, mut tail: Vec<Symbol>) -> Self {
        for s in &tail {
            assert!(s.var() < prefix.len(), "symbol variable out of range");
            if let Symbol::Coord { order, .. } = s {
                assert!(*order >= 1, "undifferentiated coordinates belong in the prefix");
            }
        }
        tail.sort();
        Word { prefix, tail }
    }

    pub fn vacuum(n: usize) -> Self {
        Word::new(vec![0; n], Vec::new())
    }

    pub fn prefix(&self) -> &[i32] {
        &self.prefix
    }

    pub fn tail(&self) -> &[Symbol] {
        &self.tail
    }

    pub fn nvars(&self) -> usize {
        self.prefix.len()
    }

    pub fn weight(&self) -> u32 {
        self.tail.iter().map(Symbol::weight).sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.tail.is_empty() && self.prefix.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_string(self))
    }
}

fn word_string(w: &Word) -> String {
    let mut parts = Vec::new();
    let m = monomial_string(&w.prefix);
    if !m.is_empty() {
        parts.push(m);
    }
    parts.extend(w.tail.iter().map(|s| s.to_string()));
    parts.join("*")
}

/// Finite combination of words with parameter coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeFieldElement {
    n: usize,
    terms: BTreeMap<Word, ParamScalar>,
}

impl FreeFieldElement {
    pub fn zero(n: usize) -> Self {
        FreeFieldElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum(n: usize) -> Self {
        FreeFieldElement::word(Word::vacuum(n))
    }

    pub fn word(w: Word) -> Self {
        FreeFieldElement::term(w, ParamScalar::one())
    }

    pub fn term(w: Word, c: ParamScalar) -> Self {
        let mut out = FreeFieldElement::zero(w.nvars());
        out.add_term(w, c);
        out
    }

    /// The coordinate `y_{i+1}`.
    pub fn coord(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        FreeFieldElement::word(Word::new(e, Vec::new()))
    }

    /// The frame field `∂_{i+1}`.
    pub fn frame(n: usize, i: usize) -> Self {
        FreeFieldElement::word(Word::new(vec![0; n], vec![Symbol::Frame { var: i, order: 0 }]))
    }

    /// A weight-zero element.
    pub fn function(f: &LaurentElement) -> Self {
        let mut out = FreeFieldElement::zero(f.nvars());
        for (e, c) in f.terms() {
            out.add_term(Word::new(e.clone(), Vec::new()), c.clone());
        }
        out
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, ParamScalar)>) -> Self {
        let mut out = FreeFieldElement::zero(n);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> ParamScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Common conformal weight of all terms; `None` for zero or mixed weights.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(Word::weight);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    pub fn add_term(&mut self, w: Word, c: ParamScalar) {
        assert_eq!(w.nvars(), self.n, "word variable count");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        let mut out = FreeFieldElement::zero(self.n);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(FreeFieldError::MismatchedVariables(self.n, other.n));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&ParamScalar::int(-1)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Self {
        let mut out = FreeFieldElement::zero(self.n);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }
}

impl std::ops::Add for &FreeFieldElement {
    type Output = FreeFieldElement;
    fn add(self, rhs: &FreeFieldElement) -> FreeFieldElement {
        self.try_add(rhs).expect("free field add")
    }
}

impl std::ops::Sub for &FreeFieldElement {
    type Output = FreeFieldElement;
    fn sub(self, rhs: &FreeFieldElement) -> FreeFieldElement {
        self.try_sub(rhs).expect("free field sub")
    }
}

impl std::ops::Neg for &FreeFieldElement {
    type Output = FreeFieldElement;
    fn neg(self) -> FreeFieldElement {
        self.scale(&ParamScalar::int(-1))
    }
}

impl fmt::Display for FreeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            fmt_scaled_term(idx == 0, c, f, &word_string(w))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Fock module

const GAMMA: u8 = 0;
const BETA: u8 = 1;

/// Monomial `Π γ_{i,0}^{a_i} · Π γ_{i,−m}^{c} · Π β_{i,−m}^{d}` (m ≥ 1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct FockMono {
    g0: Vec<i32>,
    /// (kind, var, depth) → multiplicity; depth m means mode index −m.
    modes: BTreeMap<(u8, usize, u32), u32>,
}

type QVec = BTreeMap<FockMono, Rational>;
type PVec = BTreeMap<FockMono, ParamScalar>;

impl FockMono {
    fn weight(&self) -> i64 {
        self.modes.iter().map(|(&(_, _, d), &c)| (d * c) as i64).sum()
    }

    fn beta_count(&self) -> u32 {
        self.modes
            .iter()
            .filter(|((k, _, _), _)| *k == BETA)
            .map(|(_, c)| *c)
            .sum()
    }

    fn count(&self, key: (u8, usize, u32)) -> u32 {
        self.modes.get(&key).copied().unwrap_or(0)
    }

    fn bump(&mut self, key: (u8, usize, u32), delta: i64) {
        let c = self.count(key) as i64 + delta;
        debug_assert!(c >= 0);
        if c == 0 {
            self.modes.remove(&key);
        } else {
            self.modes.insert(key, c as u32);
        }
    }
}

fn qadd(v: &mut QVec, m: FockMono, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match v.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn padd(v: &mut PVec, m: FockMono, c: ParamScalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match v.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// `a(a−1)…(a−m+1)`.
fn falling(a: i64, m: u32) -> Rational {
    let mut acc = BigInt::one();
    for t in 0..m as i64 {
        acc *= a - t;
    }
    Rational::from_integer(acc)
}

/// `binom(m, j)` for any integer `m`.
fn binomial(m: i64, j: u32) -> Rational {
    falling(m, j) / factorial(j)
}

/// Action of the single mode `γ_{i,p}` (kind = GAMMA) or `β_{i,p}`.
fn apply_mode(kind: u8, var: usize, p: i64, v: &FockMono) -> Option<(Rational, FockMono)> {
    let mut out = v.clone();
    match (kind, p) {
        (GAMMA, 0) => {
            out.g0[var] += 1;
            Some((rat(1), out))
        }
        (GAMMA, p) if p < 0 => {
            out.bump((GAMMA, var, (-p) as u32), 1);
            Some((rat(1), out))
        }
        (GAMMA, p) => {
            let key = (BETA, var, p as u32);
            let c = v.count(key);
            if c == 0 {
                return None;
            }
            out.bump(key, -1);
            Some((rat(-(c as i64)), out))
        }
        (_, p) if p < 0 => {
            out.bump((BETA, var, (-p) as u32), 1);
            Some((rat(1), out))
        }
        (_, 0) => {
            let a = v.g0[var];
            if a == 0 {
                return None;
            }
            out.g0[var] -= 1;
            Some((rat(a as i64), out))
        }
        (_, p) => {
            let key = (GAMMA, var, p as u32);
            let c = v.count(key);
            if c == 0 {
                return None;
            }
            out.bump(key, -1);
            Some((rat(c as i64), out))
        }
    }
}

/// `(T^m g)_(k) = (−1)^m k(k−1)…(k−m+1) g_(k−m)`, as a single Fock mode.
fn symbol_mode(s: Symbol, k: i64) -> (Rational, u8, usize, i64) {
    let (kind, var, order) = match s {
        Symbol::Coord { var, order } => (GAMMA, var, order),
        Symbol::Frame { var, order } => (BETA, var, order),
    };
    let mut c = falling(k, order);
    if order % 2 == 1 {
        c = -c;
    }
    let base = k - order as i64;
    let p = if kind == GAMMA { base + 1 } else { base };
    (c, kind, var, p)
}

/// All multisets of (var, depth) parts with Σ depth = total, drawn from `vars`.
fn creator_partitions(vars: &[usize], total: u32) -> Vec<Vec<((usize, u32), u32)>> {
    let mut parts: Vec<(usize, u32)> = Vec::new();
    for q in 1..=total {
        for &v in vars {
            parts.push((v, q));
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        parts: &[(usize, u32)],
        idx: usize,
        remaining: u32,
        cur: &mut Vec<((usize, u32), u32)>,
        out: &mut Vec<Vec<((usize, u32), u32)>>,
    ) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        if idx == parts.len() {
            return;
        }
        let q = parts[idx].1;
        let mut mult = 0;
        loop {
            if mult > 0 {
                cur.push((parts[idx], mult));
            }
            rec(parts, idx + 1, remaining - mult * q, cur, out);
            if mult > 0 {
                cur.pop();
            }
            mult += 1;
            if mult * q > remaining {
                break;
            }
        }
    }
    rec(&parts, 0, total, &mut cur, &mut out);
    out
}

/// Mode `F_(k)` of the Laurent prefix `F = y^alpha`: the coefficient of
/// `z^{−k−1}` in `F(γ_0 + Σ_{p≠0} γ_p z^{−p})`.
fn prefix_mode(alpha: &[i32], k: i64, v: &FockMono, out: &mut QVec, scale: &Rational) {
    let active: Vec<usize> = (0..alpha.len()).filter(|&i| alpha[i] != 0).collect();
    let candidates: Vec<((usize, u32), u32)> = v
        .modes
        .iter()
        .filter(|((kind, var, _), _)| *kind == BETA && alpha[*var] != 0)
        .map(|(&(_, var, d), &c)| ((var, d), c))
        .collect();
    let mut choice = vec![0u32; candidates.len()];
    loop {
        let s_a: i64 = candidates
            .iter()
            .zip(&choice)
            .map(|(((_, d), _), &m)| (*d as i64) * m as i64)
            .sum();
        let s_c = s_a - k - 1;
        if s_c >= 0 {
            let mut base_coeff = scale.clone();
            let mut nu = vec![0u32; alpha.len()];
            let mut mono = v.clone();
            for (((var, d), c), &m) in candidates.iter().zip(&choice) {
                if m == 0 {
                    continue;
                }
                let mut f = falling(*c as i64, m) / factorial(m);
                if m % 2 == 1 {
                    f = -f;
                }
                base_coeff *= f;
                nu[*var] += m;
                mono.bump((BETA, *var, *d), -(m as i64));
            }
            for part in creator_partitions(&active, s_c as u32) {
                let mut coeff = base_coeff.clone();
                let mut nu2 = nu.clone();
                let mut m2 = mono.clone();
                for ((var, q), mult) in &part {
                    coeff /= factorial(*mult);
                    nu2[*var] += mult;
                    m2.bump((GAMMA, *var, *q), *mult as i64);
                }
                for &i in &active {
                    coeff *= falling(alpha[i] as i64, nu2[i]);
                    m2.g0[i] += alpha[i] - nu2[i] as i32;
                }
                qadd(out, m2, coeff);
            }
        }
        // odometer over annihilator multiplicities
        let mut idx = 0;
        loop {
            if idx == choice.len() {
                return;
            }
            if choice[idx] < candidates[idx].1 {
                choice[idx] += 1;
                break;
            }
            choice[idx] = 0;
            idx += 1;
        }
    }
}

/// How composite words are split during peeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Peel the prefix first, then tail symbols in canonical order.
    Canonical,
    /// Peel a pseudo-randomly chosen tail symbol at every step.
    Shuffled(u64),
    /// Reverse the arguments with skew-symmetry, then peel canonically.
    SkewSymmetric,
}

struct Ctx {
    ops: HashMap<(Word, i64, FockMono), Rc<QVec>>,
    embeds: HashMap<Word, Rc<QVec>>,
    rng: Option<ChaCha8Rng>,
}

impl Ctx {
    fn new(strategy: Strategy) -> Self {
        Ctx {
            ops: HashMap::new(),
            embeds: HashMap::new(),
            rng: match strategy {
                Strategy::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
                _ => None,
            },
        }
    }

    /// Splits a composite word as `A_(−1)B`. The prefix is always peeled
    /// first since it is applied last.
    fn split(&mut self, w: &Word) -> (Word, Word) {
        let n = w.nvars();
        if w.prefix.iter().any(|&e| e != 0) {
            return (
                Word::new(w.prefix.clone(), Vec::new()),
                Word::new(vec![0; n], w.tail.clone()),
            );
        }
        let i = match &mut self.rng {
            Some(rng) => rng.gen_range(0..w.tail.len()),
            None => 0,
        };
        let mut rest = w.tail.clone();
        let s = rest.remove(i);
        (Word::new(vec![0; n], vec![s]), Word::new(vec![0; n], rest))
    }

    /// `w_(k) v` for a single Fock monomial.
    fn op(&mut self, w: &Word, k: i64, v: &FockMono) -> Rc<QVec> {
        let wa = w.weight() as i64;
        let wv = v.weight();
        if wa + wv - k - 1 < 0 {
            return Rc::new(QVec::new());
        }
        let key = (w.clone(), k, v.clone());
        if let Some(hit) = self.ops.get(&key) {
            return hit.clone();
        }
        let mut out = QVec::new();
        let has_prefix = w.prefix.iter().any(|&e| e != 0);
        if w.tail.is_empty() {
            if has_prefix {
                prefix_mode(&w.prefix, k, v, &mut out, &rat(1));
            } else if k == -1 {
                out.insert(v.clone(), rat(1));
            }
        } else if !has_prefix && w.tail.len() == 1 {
            let (c, kind, var, p) = symbol_mode(w.tail[0], k);
            if !c.is_zero() {
                if let Some((c2, m)) = apply_mode(kind, var, p, v) {
                    qadd(&mut out, m, c * c2);
                }
            }
        } else {
            let (a, b) = self.split(w);
            let (wa, wb) = (a.weight() as i64, b.weight() as i64);
            for j in 0..=(wb + wv - k - 1).max(-1) {
                let inner = self.op(&b, k + j, v);
                for (m, c) in inner.iter() {
                    let outer = self.op(&a, -1 - j, m);
                    for (m2, c2) in outer.iter() {
                        qadd(&mut out, m2.clone(), c * c2);
                    }
                }
            }
            for j in 0..=(wa + wv - 1).max(-1) {
                let inner = self.op(&a, j, v);
                for (m, c) in inner.iter() {
                    let outer = self.op(&b, k - 1 - j, m);
                    for (m2, c2) in outer.iter() {
                        qadd(&mut out, m2.clone(), c * c2);
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.ops.insert(key, out.clone());
        out
    }

    fn embed_word(&mut self, w: &Word) -> Rc<QVec> {
        if let Some(hit) = self.embeds.get(w) {
            return hit.clone();
        }
        let n = w.nvars();
        let mut mono = FockMono {
            g0: vec![0; n],
            modes: BTreeMap::new(),
        };
        let mut lead = rat(1);
        for s in &w.tail {
            match *s {
                Symbol::Coord { var, order } => {
                    mono.bump((GAMMA, var, order), 1);
                    lead *= factorial(order);
                }
                Symbol::Frame { var, order } => {
                    mono.bump((BETA, var, order + 1), 1);
                    lead *= factorial(order);
                }
            }
        }
        let mut out = QVec::new();
        if w.prefix.iter().any(|&e| e != 0) {
            let pw = Word::new(w.prefix.clone(), Vec::new());
            for (m, c) in self.op(&pw, -1, &mono).iter() {
                qadd(&mut out, m.clone(), c * &lead);
            }
        } else {
            out.insert(mono, lead);
        }
        let out = Rc::new(out);
        self.embeds.insert(w.clone(), out.clone());
        out
    }

    fn embed(&mut self, a: &FreeFieldElement) -> PVec {
        let mut out = PVec::new();
        for (w, c) in &a.terms {
            for (m, q) in self.embed_word(w).iter() {
                padd(&mut out, m.clone(), c.scale(q));
            }
        }
        out
    }

    /// Inverts the word embedding, peeling off the monomials with the most
    /// β factors first (corrections always carry fewer).
    fn extract(&mut self, n: usize, mut v: PVec) -> FreeFieldElement {
        let mut out = FreeFieldElement::zero(n);
        while let Some(m) = v.keys().max_by_key(|m| m.beta_count()).cloned() {
            let c = v[&m].clone();
            let mut tail = Vec::new();
            let mut lead = rat(1);
            for (&(kind, var, d), &cnt) in &m.modes {
                for _ in 0..cnt {
                    if kind == GAMMA {
                        tail.push(Symbol::Coord { var, order: d });
                        lead *= factorial(d);
                    } else {
                        tail.push(Symbol::Frame { var, order: d - 1 });
                        lead *= factorial(d - 1);
                    }
                }
            }
            let w = Word::new(m.g0.clone(), tail);
            let coeff = c.scale(&lead.recip());
            for (m2, q) in self.embed_word(&w).iter() {
                padd(&mut v, m2.clone(), -coeff.scale(q));
            }
            debug_assert!(!v.contains_key(&m));
            out.add_term(w, coeff);
        }
        out
    }
}

fn fock_translate(v: &FockMono) -> QVec {
    let mut out = QVec::new();
    for (i, &a) in v.g0.iter().enumerate() {
        if a != 0 {
            let mut m = v.clone();
            m.g0[i] -= 1;
            m.bump((GAMMA, i, 1), 1);
            qadd(&mut out, m, rat(a as i64));
        }
    }
    for (&(kind, var, d), &c) in &v.modes {
        let mut m = v.clone();
        m.bump((kind, var, d), -1);
        m.bump((kind, var, d + 1), 1);
        let f = if kind == GAMMA { d + 1 } else { d };
        qadd(&mut out, m, rat((c * f) as i64));
    }
    out
}

/// One instance of a vertex algebra axiom; the defect is LHS − RHS.
#[derive(Clone, Debug)]
pub enum AxiomInstance {
    /// `a_(−1)𝟙 − a`.
    Vacuum { a: FreeFieldElement },
    /// `𝟙_(n)a − δ_{n,−1}a`.
    VacuumLeft { a: FreeFieldElement, n: i64 },
    /// `(Ta)_(n)b + n·a_(n−1)b`.
    Translation { a: FreeFieldElement, b: FreeFieldElement, n: i64 },
    /// `T(a_(n)b) − a_(n)(Tb) − (Ta)_(n)b`.
    TranslationCommutator { a: FreeFieldElement, b: FreeFieldElement, n: i64 },
    /// `a_(n)b − Σ_j (−1)^{n+1+j} T^j(b_(n+j)a)/j!`.
    Skew { a: FreeFieldElement, b: FreeFieldElement, n: i64 },
    /// `a_(m)(b_(n)c) − b_(n)(a_(m)c) − Σ_j binom(m,j)(a_(j)b)_(m+n−j)c`.
    Jacobi { a: FreeFieldElement, b: FreeFieldElement, c: FreeFieldElement, m: i64, n: i64 },
    /// `(a_(−1)b)_(n)c − Σ_{j≥0} a_(−1−j)b_(n+j)c − Σ_{j>0} b_(n−j)a_(−1+j)c`.
    QuasiAssoc { a: FreeFieldElement, b: FreeFieldElement, c: FreeFieldElement, n: i64 },
}

/// Input tree for [`FreeField::normal_form`].
#[derive(Clone, Debug)]
pub enum Tree {
    Scalar(ParamScalar),
    /// The Laurent monomial `y^exp`.
    Monomial(Vec<i32>),
    Frame(usize),
    Element(FreeFieldElement),
    T(Box<Tree>),
    Product(Box<Tree>, i64, Box<Tree>),
    Sum(Vec<Tree>),
    Scale(ParamScalar, Box<Tree>),
}

/// The oracle engine: products, translation and axiom checks under a weight
/// bound.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeField {
    bound: WeightBound,
}

fn max_weight(a: &FreeFieldElement) -> i64 {
    a.terms.keys().map(|w| w.weight() as i64).max().unwrap_or(0)
}

impl FreeField {
    pub fn new(bound: WeightBound) -> Self {
        FreeField { bound }
    }

    pub fn with_max_weight(max_weight: u32) -> Self {
        FreeField::new(WeightBound::new(max_weight))
    }

    pub fn bound(&self) -> WeightBound {
        self.bound
    }

    fn same_vars(a: &FreeFieldElement, b: &FreeFieldElement) -> Result<()> {
        if a.n == b.n {
            Ok(())
        } else {
            Err(FreeFieldError::MismatchedVariables(a.n, b.n))
        }
    }

    fn check_inputs(&self, items: &[&FreeFieldElement]) -> Result<()> {
        for a in items {
            self.bound.check(max_weight(a))?;
        }
        Ok(())
    }

    /// `a_(n)b`.
    pub fn nproduct(&self, a: &FreeFieldElement, n: i64, b: &FreeFieldElement) -> Result<FreeFieldElement> {
        self.nproduct_with(a, n, b, Strategy::Canonical)
    }

    pub fn nproduct_with(
        &self,
        a: &FreeFieldElement,
        n: i64,
        b: &FreeFieldElement,
        strategy: Strategy,
    ) -> Result<FreeFieldElement> {
        Self::same_vars(a, b)?;
        self.check_inputs(&[a, b])?;
        for wa in a.terms.keys() {
            for wb in b.terms.keys() {
                let w = wa.weight() as i64 + wb.weight() as i64 - n - 1;
                if w >= 0 {
                    self.bound.check(w)?;
                }
            }
        }
        let mut ctx = Ctx::new(strategy);
        if strategy == Strategy::SkewSymmetric {
            return self.skew_product(&mut ctx, a, n, b);
        }
        Ok(self.raw_product(&mut ctx, a, n, b))
    }

    fn raw_product(&self, ctx: &mut Ctx, a: &FreeFieldElement, n: i64, b: &FreeFieldElement) -> FreeFieldElement {
        let mut acc = PVec::new();
        for (wb, cb) in &b.terms {
            let vb = ctx.embed_word(wb);
            for (wa, ca) in &a.terms {
                let c = ca * cb;
                for (m, q) in vb.iter() {
                    for (m2, q2) in ctx.op(wa, n, m).iter() {
                        padd(&mut acc, m2.clone(), c.scale(&(q * q2)));
                    }
                }
            }
        }
        ctx.extract(a.n, acc)
    }

    fn raw_translate(&self, ctx: &mut Ctx, a: &FreeFieldElement) -> FreeFieldElement {
        let v = ctx.embed(a);
        let mut acc = PVec::new();
        for (m, c) in &v {
            for (m2, q) in fock_translate(m) {
                padd(&mut acc, m2, c.scale(&q));
            }
        }
        ctx.extract(a.n, acc)
    }

    fn skew_product(&self, ctx: &mut Ctx, a: &FreeFieldElement, n: i64, b: &FreeFieldElement) -> Result<FreeFieldElement> {
        let top = max_weight(a) + max_weight(b) - n - 1;
        let mut out = FreeFieldElement::zero(a.n);
        let mut j = 0i64;
        while j <= top {
            let mut t = self.raw_product(ctx, b, n + j, a);
            for _ in 0..j {
                t = self.raw_translate(ctx, &t);
            }
            let mut c = factorial(j as u32).recip();
            if (n + 1 + j) % 2 != 0 {
                c = -c;
            }
            out = &out + &t.scale(&c.into());
            j += 1;
        }
        Ok(out)
    }

    /// `T a`.
    pub fn translate(&self, a: &FreeFieldElement) -> Result<FreeFieldElement> {
        self.check_inputs(&[a])?;
        if !a.is_zero() {
            self.bound.check(max_weight(a) + 1)?;
        }
        Ok(self.raw_translate(&mut Ctx::new(Strategy::Canonical), a))
    }

    pub fn translate_power(&self, a: &FreeFieldElement, j: u32) -> Result<FreeFieldElement> {
        let mut t = a.clone();
        for _ in 0..j {
            t = self.translate(&t)?;
        }
        Ok(t)
    }

    pub fn normal_form(&self, n: usize, tree: &Tree) -> Result<FreeFieldElement> {
        let out = match tree {
            Tree::Scalar(c) => FreeFieldElement::vacuum(n).scale(c),
            Tree::Monomial(e) => {
                if e.len() != n {
                    return Err(FreeFieldError::MismatchedVariables(n, e.len()));
                }
                FreeFieldElement::word(Word::new(e.clone(), Vec::new()))
            }
            Tree::Frame(i) => {
                if *i >= n {
                    return Err(FreeFieldError::InvalidInput(format!("frame index {} out of range", i + 1)));
                }
                FreeFieldElement::frame(n, *i)
            }
            Tree::Element(e) => {
                if e.n != n {
                    return Err(FreeFieldError::MismatchedVariables(n, e.n));
                }
                self.check_inputs(&[e])?;
                e.clone()
            }
            Tree::T(t) => self.translate(&self.normal_form(n, t)?)?,
            Tree::Product(a, k, b) => self.nproduct(&self.normal_form(n, a)?, *k, &self.normal_form(n, b)?)?,
            Tree::Sum(ts) => {
                let mut acc = FreeFieldElement::zero(n);
                for t in ts {
                    acc = acc.try_add(&self.normal_form(n, t)?)?;
                }
                acc
            }
            Tree::Scale(c, t) => self.normal_form(n, t)?.scale(c),
        };
        if !out.is_homogeneous() {
            return Err(FreeFieldError::InvalidInput(format!("inhomogeneous expression {out}")));
        }
        Ok(out)
    }

    pub fn axiom_defect(&self, inst: &AxiomInstance) -> Result<FreeFieldElement> {
        match inst {
            AxiomInstance::Vacuum { a } => {
                let one = FreeFieldElement::vacuum(a.n);
                Ok(&self.nproduct(a, -1, &one)? - a)
            }
            AxiomInstance::VacuumLeft { a, n } => {
                let one = FreeFieldElement::vacuum(a.n);
                let lhs = self.nproduct(&one, *n, a)?;
                Ok(if *n == -1 { &lhs - a } else { lhs })
            }
            AxiomInstance::Translation { a, b, n } => {
                let ta = self.translate(a)?;
                let lhs = self.nproduct(&ta, *n, b)?;
                let rhs = self.nproduct(a, n - 1, b)?.scale(&ParamScalar::int(*n));
                Ok(&lhs + &rhs)
            }
            AxiomInstance::TranslationCommutator { a, b, n } => {
                let p = self.nproduct(a, *n, b)?;
                let lhs = if p.is_zero() { p } else { self.translate(&p)? };
                let tb = self.translate(b)?;
                let ta = self.translate(a)?;
                Ok(&(&lhs - &self.nproduct(a, *n, &tb)?) - &self.nproduct(&ta, *n, b)?)
            }
            AxiomInstance::Skew { a, b, n } => {
                let lhs = self.nproduct(a, *n, b)?;
                let top = max_weight(a) + max_weight(b) - n - 1;
                let mut rhs = FreeFieldElement::zero(a.n);
                for j in 0..=top.max(-1) {
                    let t = self.translate_power(&self.nproduct(b, n + j, a)?, j as u32)?;
                    let mut c = factorial(j as u32).recip();
                    if (n + 1 + j) % 2 != 0 {
                        c = -c;
                    }
                    rhs = &rhs + &t.scale(&c.into());
                }
                Ok(&lhs - &rhs)
            }
            AxiomInstance::Jacobi { a, b, c, m, n } => {
                let lhs = &self.nproduct(a, *m, &self.nproduct(b, *n, c)?)?
                    - &self.nproduct(b, *n, &self.nproduct(a, *m, c)?)?;
                let mut rhs = FreeFieldElement::zero(a.n);
                let top = max_weight(a) + max_weight(b) - 1;
                for j in 0..=top.max(-1) {
                    let ab = self.nproduct(a, j, b)?;
                    if ab.is_zero() {
                        continue;
                    }
                    let t = self.nproduct(&ab, m + n - j, c)?;
                    rhs = &rhs + &t.scale(&binomial(*m, j as u32).into());
                }
                Ok(&lhs - &rhs)
            }
            AxiomInstance::QuasiAssoc { a, b, c, n } => {
                let lhs = self.nproduct(&self.nproduct(a, -1, b)?, *n, c)?;
                let mut rhs = FreeFieldElement::zero(a.n);
                for j in 0..=(max_weight(b) + max_weight(c) - n - 1).max(-1) {
                    let bc = self.nproduct(b, n + j, c)?;
                    rhs = &rhs + &self.nproduct(a, -1 - j, &bc)?;
                }
                for j in 1..=(max_weight(a) + max_weight(c)).max(0) {
                    let ac = self.nproduct(a, j - 1, c)?;
                    rhs = &rhs + &self.nproduct(b, n - j, &ac)?;
                }
                Ok(&lhs - &rhs)
            }
        }
    }

    /// `L = Σ_j T(y_j)⊙∂_j`.
    pub fn virasoro(&self, n_vars: usize) -> Result<FreeFieldElement> {
        if n_vars == 0 {
            return Err(FreeFieldError::InvalidInput("need at least one variable".into()));
        }
        self.bound.check(2)?;
        let mut out = FreeFieldElement::zero(n_vars);
        for j in 0..n_vars {
            out.add_term(
                Word::new(
                    vec![0; n_vars],
                    vec![Symbol::Coord { var: j, order: 1 }, Symbol::Frame { var: j, order: 0 }],
                ),
                ParamScalar::one(),
            );
        }
        Ok(out)
    }

    /// `ξ_(0)L` for a polynomial vector field `ξ = Σ f_i⊙∂_i`, evaluated in
    /// the Poisson vertex algebra (the associated graded, where `_(−1)` is
    /// commutative and `ξ_(0)` a derivation commuting with `T`).
    ///
    /// In the quantum algebra the same product equals `−½T²(div ξ)`; use
    /// [`FreeField::nproduct`] for that value.
    pub fn lemma441_defect(&self, xi: &FreeFieldElement) -> Result<FreeFieldElement> {
        let n = xi.n;
        let mut fields = vec![LaurentElement::zero(n); n];
        for (w, c) in &xi.terms {
            match w.tail.as_slice() {
                [Symbol::Frame { var, order: 0 }] if w.prefix.iter().all(|&e| e >= 0) => {
                    fields[*var] += &LaurentElement::monomial(w.prefix.clone(), c.clone());
                }
                _ => {
                    return Err(FreeFieldError::InvalidInput(format!(
                        "expected a polynomial vector field, found the word {w}"
                    )))
                }
            }
        }
        let l = self.virasoro(n)?;
        self.bound.check(2)?;
        let mut out = FreeFieldElement::zero(n);
        for (w, c) in &l.terms {
            out = &out + &classical::derivation(&fields, w).scale(c);
        }
        Ok(out)
    }
}

/// The commutative (Poisson) vertex algebra on the same word basis.
pub mod classical {
    use super::*;

    /// Commutative product of two words.
    pub fn word_product(a: &Word, b: &Word) -> Word {
        let prefix = a.prefix.iter().zip(&b.prefix).map(|(x, y)| x + y).collect();
        let mut tail = a.tail.clone();
        tail.extend_from_slice(&b.tail);
        Word::new(prefix, tail)
    }

    pub fn product(a: &FreeFieldElement, b: &FreeFieldElement) -> FreeFieldElement {
        let mut out = FreeFieldElement::zero(a.n);
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                out.add_term(word_product(wa, wb), ca * cb);
            }
        }
        out
    }

    fn raise(s: Symbol) -> Symbol {
        match s {
            Symbol::Coord { var, order } => Symbol::Coord { var, order: order + 1 },
            Symbol::Frame { var, order } => Symbol::Frame { var, order: order + 1 },
        }
    }

    /// `T` as the derivation with `T(y_j) = T¹y_j` and `T(T^m s) = T^{m+1}s`.
    pub fn translate(a: &FreeFieldElement) -> FreeFieldElement {
        let n = a.n;
        let mut out = FreeFieldElement::zero(n);
        for (w, c) in &a.terms {
            for j in 0..n {
                let e = w.prefix[j];
                if e == 0 {
                    continue;
                }
                let mut p = w.prefix.clone();
                p[j] -= 1;
                let mut tail = w.tail.clone();
                tail.push(Symbol::Coord { var: j, order: 1 });
                out.add_term(Word::new(p, tail), c.scale(&rat(e as i64)));
            }
            for i in 0..w.tail.len() {
                let mut tail = w.tail.clone();
                tail[i] = raise(tail[i]);
                out.add_term(Word::new(w.prefix.clone(), tail), c.clone());
            }
        }
        out
    }

    fn translate_power(a: &FreeFieldElement, m: u32) -> FreeFieldElement {
        (0..m).fold(a.clone(), |acc, _| translate(&acc))
    }

    /// `ξ_(0)w` for the vector field `ξ = Σ f_i ∂_i`: `ξ(F)` on the prefix,
    /// `T^m(f_j)` on `T^m y_j` and `T^m([ξ, ∂_j])` on `T^m ∂_j`.
    pub fn derivation(fields: &[LaurentElement], w: &Word) -> FreeFieldElement {
        let n = w.nvars();
        let xi = crate::laurent::VectorField::from_components(fields.to_vec());
        let mut out = FreeFieldElement::zero(n);
        let prefix = LaurentElement::mono(&w.prefix);
        let rest = FreeFieldElement::word(Word::new(vec![0; n], w.tail.clone()));
        out = &out + &product(&FreeFieldElement::function(&xi.apply(&prefix)), &rest);
        for i in 0..w.tail.len() {
            let mut others = w.tail.clone();
            let s = others.remove(i);
            let others = FreeFieldElement::word(Word::new(w.prefix.clone(), others));
            let hit = match s {
                Symbol::Coord { var, order } => {
                    translate_power(&FreeFieldElement::function(&fields[var]), order)
                }
                Symbol::Frame { var, order } => {
                    let mut bracket = FreeFieldElement::zero(n);
                    for (k, f) in fields.iter().enumerate() {
                        let g = -f.derive(var);
                        for (e, c) in g.terms() {
                            bracket.add_term(
                                Word::new(e.clone(), vec![Symbol::Frame { var: k, order: 0 }]),
                                c.clone(),
                            );
                        }
                    }
                    translate_power(&bracket, order)
                }
            };
            out = &out + &product(&hit, &others);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ff() -> FreeField {
        FreeField::with_max_weight(4)
    }

    fn y(n: usize, i: usize) -> FreeFieldElement {
        FreeFieldElement::coord(n, i)
    }

    fn d(n: usize, i: usize) -> FreeFieldElement {
        FreeFieldElement::frame(n, i)
    }

    fn mono(e: &[i32]) -> FreeFieldElement {
        FreeFieldElement::word(Word::new(e.to_vec(), Vec::new()))
    }

    fn ty(n: usize, i: usize) -> FreeFieldElement {
        FreeFieldElement::word(Word::new(vec![0; n], vec![Symbol::Coord { var: i, order: 1 }]))
    }

    #[test]
    fn generator_contractions() {
        let e = ff();
        assert_eq!(e.nproduct(&d(2, 0), 0, &y(2, 0)).unwrap(), FreeFieldElement::vacuum(2));
        assert_eq!(
            e.nproduct(&y(2, 0), 0, &d(2, 0)).unwrap(),
            FreeFieldElement::vacuum(2).scale(&ParamScalar::int(-1))
        );
        assert!(e.nproduct(&d(2, 0), 0, &y(2, 1)).unwrap().is_zero());
        for n in 0..3 {
            assert!(e.nproduct(&y(2, 0), n, &y(2, 1)).unwrap().is_zero());
        }
        assert_eq!(
            e.nproduct(&d(1, 0), 0, &mono(&[3])).unwrap(),
            mono(&[2]).scale(&ParamScalar::int(3))
        );
        assert_eq!(
            e.nproduct(&d(1, 0), 0, &mono(&[-1])).unwrap(),
            mono(&[-2]).scale(&ParamScalar::int(-1))
        );
    }

    #[test]
    fn nested_prefix_picks_up_correction() {
        let e = ff();
        let inner = e.nproduct(&y(2, 1), -1, &d(2, 0)).unwrap();
        let got = e.nproduct(&y(2, 0), -1, &inner).unwrap();
        let word = FreeFieldElement::word(Word::new(vec![1, 1], vec![Symbol::Frame { var: 0, order: 0 }]));
        assert_eq!(got, &word + &ty(2, 1));
        assert_eq!(got.to_string(), "T(y2) + y1*y2*d1");
    }

    #[test]
    fn vacuum_and_translation_examples() {
        let e = ff();
        let one = FreeFieldElement::vacuum(2);
        let a = e.nproduct(&y(2, 0), -1, &d(2, 1)).unwrap();
        assert_eq!(e.nproduct(&one, -1, &a).unwrap(), a);
        assert!(e.translate(&one).unwrap().is_zero());
        assert_eq!(e.translate(&y(2, 0)).unwrap(), ty(2, 0));
        let y1d1 = e.nproduct(&y(2, 0), -1, &d(2, 0)).unwrap();
        let expected = FreeFieldElement::from_terms(
            2,
            [
                (
                    Word::new(vec![0, 0], vec![Symbol::Coord { var: 0, order: 1 }, Symbol::Frame { var: 0, order: 0 }]),
                    ParamScalar::one(),
                ),
                (Word::new(vec![1, 0], vec![Symbol::Frame { var: 0, order: 1 }]), ParamScalar::one()),
            ],
        );
        assert_eq!(e.translate(&y1d1).unwrap(), expected);
    }

    #[test]
    fn weight_bound_rejects() {
        let e = FreeField::with_max_weight(1);
        let err = e.nproduct(&d(1, 0), -1, &d(1, 0)).unwrap_err();
        assert_eq!(err, FreeFieldError::WeightBoundExceeded { weight: 2, bound: 1 });
        assert!(e.virasoro(1).is_err());
    }

    #[test]
    fn virasoro_relations() {
        let e = FreeField::with_max_weight(4);
        for n in 1..=2 {
            let l = e.virasoro(n).unwrap();
            assert_eq!(e.nproduct(&l, 0, &l).unwrap(), e.translate(&l).unwrap());
            assert_eq!(e.nproduct(&l, 1, &l).unwrap(), l.scale(&ParamScalar::int(2)));
            assert!(e.nproduct(&l, 2, &l).unwrap().is_zero());
            assert_eq!(
                e.nproduct(&l, 3, &l).unwrap(),
                FreeFieldElement::vacuum(n).scale(&ParamScalar::int(n as i64))
            );
        }
    }

    #[test]
    fn axiom_examples() {
        let e = ff();
        let skew = AxiomInstance::Skew {
            a: y(1, 0),
            b: d(1, 0),
            n: 0,
        };
        assert!(e.axiom_defect(&skew).unwrap().is_zero());
        let jac = AxiomInstance::Jacobi {
            a: y(1, 0),
            b: y(1, 0),
            c: y(1, 0),
            m: 0,
            n: 0,
        };
        assert!(e.axiom_defect(&jac).unwrap().is_zero());
        let qa = AxiomInstance::QuasiAssoc {
            a: y(2, 0),
            b: y(2, 1),
            c: d(2, 0),
            n: -1,
        };
        assert!(e.axiom_defect(&qa).unwrap().is_zero());
    }

    #[test]
    fn monomial_fields_kill_conformal_vector() {
        let e = ff();
        let xi1 = d(2, 0);
        let xi2 = e.nproduct(&mono(&[2, 0]), -1, &d(2, 1)).unwrap();
        let xi3 = e.nproduct(&mono(&[1, 1]), -1, &d(2, 0)).unwrap();
        for xi in [xi1, xi2, xi3.clone()] {
            assert!(e.lemma441_defect(&xi).unwrap().is_zero(), "{xi}");
        }
        // the quantum product carries the divergence anomaly −½T²(div ξ)
        let l = e.virasoro(2).unwrap();
        let anomaly = e.translate_power(&mono(&[0, 1]), 2).unwrap().scale(&ParamScalar::from(crate::scalar::ratio(-1, 2)));
        assert_eq!(e.nproduct(&xi3, 0, &l).unwrap(), anomaly);
    }

    #[test]
    fn creator_partitions_count() {
        // colored partitions of 3 with two colors: 4 + 4 + 2 = 10
        assert_eq!(creator_partitions(&[0, 1], 3).len(), 10);
        assert_eq!(creator_partitions(&[0], 0).len(), 1);
    }
}
