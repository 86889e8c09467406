//! Laurent polynomial chart rings and their classical Cartan calculus.
//!
//! Elements live on a fixed coordinate list `y1..yn`; exponents may be
//! negative. Regularity on a particular chart is a separate predicate (see
//! [`crate::geometry`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use thiserror::Error;

use crate::scalar::{rat, ParamScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("mismatched variable lists: {0} vs {1} coordinates")]
    MismatchedVariables(usize, usize),
}

pub type Exponent = Vec<i32>;

/// Laurent polynomial in `y1..yn` with parameter coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentElement {
    n: usize,
    terms: BTreeMap<Exponent, ParamScalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
}

/// Residue of the cyclic weight, or a flag that monomials disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZnWeight {
    Residue(u32),
    Inhomogeneous,
}

impl LaurentElement {
    pub fn zero(n: usize) -> Self {
        LaurentElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: ParamScalar) -> Self {
        LaurentElement::monomial(vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        LaurentElement::constant(n, ParamScalar::one())
    }

    /// The coordinate `y_{i+1}` (indices are zero-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        LaurentElement::monomial(e, ParamScalar::one())
    }

    pub fn monomial(exp: Exponent, c: ParamScalar) -> Self {
        let n = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentElement { n, terms }
    }

    /// `y^exp` with coefficient one.
    pub fn mono(exp: &[i32]) -> Self {
        LaurentElement::monomial(exp.to_vec(), ParamScalar::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exponent, ParamScalar)>) -> Self {
        let mut out = LaurentElement::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent length");
            out.add_term(e, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i32]) -> ParamScalar {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
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

    fn check(&self, other: &LaurentElement) -> Result<(), LaurentError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(LaurentError::MismatchedVariables(self.n, other.n))
        }
    }

    pub fn ring_op(&self, other: &LaurentElement, op: RingOp) -> Result<LaurentElement, LaurentError> {
        self.check(other)?;
        Ok(match op {
            RingOp::Add => self + other,
            RingOp::Mul => self * other,
        })
    }

    pub fn scale(&self, c: &ParamScalar) -> LaurentElement {
        if c.is_zero() {
            return LaurentElement::zero(self.n);
        }
        LaurentElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Multiplies every term by the monomial `y^shift`.
    pub fn shift(&self, shift: &[i32]) -> LaurentElement {
        LaurentElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    /// Partial derivative in `y_{i+1}`.
    pub fn derive(&self, i: usize) -> LaurentElement {
        let mut out = LaurentElement::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.scale(&rat(e[i] as i64)));
        }
        out
    }

    /// Integer power; negative powers need a single-term element.
    pub fn pow(&self, p: i32) -> Option<LaurentElement> {
        if p >= 0 {
            let mut out = LaurentElement::one(self.n);
            for _ in 0..p {
                out = &out * self;
            }
            return Some(out);
        }
        let (e, c) = self.single_term()?;
        let inv = c.as_rational().filter(|r| *r != rat(0))?.recip();
        let base = LaurentElement::monomial(e.iter().map(|x| -x).collect(), inv.into());
        base.pow(-p)
    }

    pub fn single_term(&self) -> Option<(&Exponent, &ParamScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Total degree shared by all terms, if any.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<i32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn min_exponent(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn zn_weight(&self, n: u32) -> ZnWeight {
        zn_residue(self.terms.keys().map(|e| e.iter().sum::<i32>()), n)
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> LaurentElement {
        let mut out = LaurentElement::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

fn zn_residue(degrees: impl Iterator<Item = i32>, n: u32) -> ZnWeight {
    assert!(n >= 1, "cyclic order must be positive");
    let mut res = None;
    for d in degrees {
        let r = d.rem_euclid(n as i32) as u32;
        match res {
            None => res = Some(r),
            Some(prev) if prev != r => return ZnWeight::Inhomogeneous,
            _ => {}
        }
    }
    ZnWeight::Residue(res.unwrap_or(0))
}

impl<'a> Add<&'a LaurentElement> for &'a LaurentElement {
    type Output = LaurentElement;
    fn add(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentElement {
    type Output = LaurentElement;
    fn add(mut self, rhs: LaurentElement) -> LaurentElement {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentElement> for LaurentElement {
    fn add_assign(&mut self, rhs: &LaurentElement) {
        self.check(rhs).expect("laurent add");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentElement> for &'a LaurentElement {
    type Output = LaurentElement;
    fn sub(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentElement {
    type Output = LaurentElement;
    fn sub(mut self, rhs: LaurentElement) -> LaurentElement {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentElement> for LaurentElement {
    fn sub_assign(&mut self, rhs: &LaurentElement) {
        self.check(rhs).expect("laurent sub");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Neg for LaurentElement {
    type Output = LaurentElement;
    fn neg(self) -> LaurentElement {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for &LaurentElement {
    type Output = LaurentElement;
    fn neg(self) -> LaurentElement {
        self.map_coeffs(|c| -c)
    }
}

impl<'a> Mul<&'a LaurentElement> for &'a LaurentElement {
    type Output = LaurentElement;
    fn mul(self, rhs: &LaurentElement) -> LaurentElement {
        self.check(rhs).expect("laurent mul");
        let mut out = LaurentElement::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentElement {
    type Output = LaurentElement;
    fn mul(self, rhs: LaurentElement) -> LaurentElement {
        &self * &rhs
    }
}

pub(crate) fn monomial_string(e: &[i32]) -> String {
    let mut parts = Vec::new();
    for (i, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 => parts.push(format!("y{}", i + 1)),
            _ => parts.push(format!("y{}^{}", i + 1, x)),
        }
    }
    parts.join("*")
}

/// Writes `c*rest` with a sign pulled out front; an empty `rest` prints the
/// bare coefficient.
pub(crate) fn fmt_scaled_term(
    first: bool,
    c: &ParamScalar,
    f: &mut fmt::Formatter<'_>,
    rest: &str,
) -> fmt::Result {
    let single = c.terms().count() == 1;
    let neg = single && c.terms().next().unwrap().1 < &rat(0);
    let body = if neg { -c.clone() } else { c.clone() };
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let text = if single {
        body.to_string()
    } else {
        format!("({body})")
    };
    match (body.is_one(), rest.is_empty()) {
        (_, true) => f.write_str(&text),
        (true, false) => f.write_str(rest),
        (false, false) => write!(f, "{text}*{rest}"),
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest total degree first reads more naturally
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            fmt_scaled_term(idx == 0, c, f, &monomial_string(e))?;
        }
        Ok(())
    }
}

/// `Σ g_j dy_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneForm {
    comps: Vec<LaurentElement>,
}

/// `Σ_{i<j} f_ij dy_i ∧ dy_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoForm {
    n: usize,
    comps: BTreeMap<(usize, usize), LaurentElement>,
}

/// `Σ f_i ∂_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    comps: Vec<LaurentElement>,
}

macro_rules! componentwise {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(n: usize) -> Self {
                $ty {
                    comps: vec![LaurentElement::zero(n); n],
                }
            }

            pub fn from_components(comps: Vec<LaurentElement>) -> Self {
                let n = comps.len();
                assert!(comps.iter().all(|c| c.nvars() == n), "component ring");
                $ty { comps }
            }

            /// Single component `f` in slot `i`.
            pub fn basis(n: usize, i: usize, f: LaurentElement) -> Self {
                let mut v = $ty::zero(n);
                v.comps[i] = f;
                v
            }

            pub fn nvars(&self) -> usize {
                self.comps.len()
            }

            pub fn component(&self, i: usize) -> &LaurentElement {
                &self.comps[i]
            }

            pub fn components(&self) -> &[LaurentElement] {
                &self.comps
            }

            pub fn is_zero(&self) -> bool {
                self.comps.iter().all(LaurentElement::is_zero)
            }

            pub fn scale(&self, c: &ParamScalar) -> Self {
                $ty {
                    comps: self.comps.iter().map(|f| f.scale(c)).collect(),
                }
            }

            /// Multiplication by a function (module structure).
            pub fn mul_fn(&self, g: &LaurentElement) -> Self {
                $ty {
                    comps: self.comps.iter().map(|f| f * g).collect(),
                }
            }

            pub fn map(&self, f: impl Fn(&LaurentElement) -> LaurentElement) -> Self {
                $ty {
                    comps: self.comps.iter().map(f).collect(),
                }
            }
        }

        impl<'a> Add<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $ty {
                    comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect(),
                }
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }

        impl<'a> Sub<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $ty {
                    comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect(),
                }
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    comps: self.comps.iter().map(|a| -a).collect(),
                }
            }
        }
    };
}

componentwise!(OneForm);
componentwise!(VectorField);

impl OneForm {
    pub fn zn_weight(&self, n: u32) -> ZnWeight {
        zn_residue(
            self.comps
                .iter()
                .flat_map(|c| c.terms().map(|(e, _)| e.iter().sum::<i32>() + 1)),
            n,
        )
    }

    /// Total internal degree (form degree counts `dy` as one), if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degs = self
            .comps
            .iter()
            .flat_map(|c| c.terms().map(|(e, _)| e.iter().sum::<i32>() + 1));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Exterior derivative.
    pub fn d(&self) -> TwoForm {
        let n = self.nvars();
        let mut out = TwoForm::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                let c = &self.comps[j].derive(i) - &self.comps[i].derive(j);
                out.set(i, j, c);
            }
        }
        out
    }
}

impl VectorField {
    pub fn zn_weight(&self, n: u32) -> ZnWeight {
        zn_residue(
            self.comps
                .iter()
                .flat_map(|c| c.terms().map(|(e, _)| e.iter().sum::<i32>() - 1)),
            n,
        )
    }

    /// The derivation applied to a function.
    pub fn apply(&self, f: &LaurentElement) -> LaurentElement {
        let mut out = LaurentElement::zero(f.nvars());
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                out += &(c * &f.derive(i));
            }
        }
        out
    }
}

impl TwoForm {
    pub fn zero(n: usize) -> Self {
        TwoForm {
            n,
            comps: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Sets the `dy_i ∧ dy_j` coefficient; `i > j` stores the negation.
    pub fn set(&mut self, i: usize, j: usize, f: LaurentElement) {
        assert!(i != j && i < self.n && j < self.n);
        let (key, f) = if i < j { ((i, j), f) } else { ((j, i), -f) };
        if f.is_zero() {
            self.comps.remove(&key);
        } else {
            self.comps.insert(key, f);
        }
    }

    /// Antisymmetric coefficient lookup.
    pub fn get(&self, i: usize, j: usize) -> LaurentElement {
        if i == j {
            return LaurentElement::zero(self.n);
        }
        if i < j {
            self.comps.get(&(i, j)).cloned().unwrap_or_else(|| LaurentElement::zero(self.n))
        } else {
            -self.comps.get(&(j, i)).cloned().unwrap_or_else(|| LaurentElement::zero(self.n))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentElement)> {
        self.comps.iter()
    }

    pub fn zn_weight(&self, n: u32) -> ZnWeight {
        zn_residue(
            self.comps
                .values()
                .flat_map(|c| c.terms().map(|(e, _)| e.iter().sum::<i32>() + 2)),
            n,
        )
    }
}

/// The de Rham differential of a function.
pub fn de_rham(f: &LaurentElement) -> OneForm {
    OneForm::from_components((0..f.nvars()).map(|j| f.derive(j)).collect())
}

/// Lie bracket of vector fields.
pub fn bracket(x: &VectorField, y: &VectorField) -> VectorField {
    VectorField::from_components(
        (0..x.nvars())
            .map(|k| &x.apply(y.component(k)) - &y.apply(x.component(k)))
            .collect(),
    )
}

/// Lie derivative of a one-form.
pub fn lie(x: &VectorField, w: &OneForm) -> OneForm {
    let n = x.nvars();
    OneForm::from_components(
        (0..n)
            .map(|j| {
                let mut c = x.apply(w.component(j));
                for i in 0..n {
                    if !w.component(i).is_zero() {
                        c += &(w.component(i) * &x.component(i).derive(j));
                    }
                }
                c
            })
            .collect(),
    )
}

/// Contraction of a vector field with a one-form.
pub fn iota(x: &VectorField, w: &OneForm) -> LaurentElement {
    let mut out = LaurentElement::zero(x.nvars());
    for i in 0..x.nvars() {
        if !x.component(i).is_zero() && !w.component(i).is_zero() {
            out += &(x.component(i) * w.component(i));
        }
    }
    out
}

/// Contraction of a vector field with a two-form.
pub fn iota2(x: &VectorField, w: &TwoForm) -> OneForm {
    let n = x.nvars();
    OneForm::from_components(
        (0..n)
            .map(|j| {
                let mut c = LaurentElement::zero(n);
                for i in 0..n {
                    if i != j && !x.component(i).is_zero() {
                        c += &(x.component(i) * &w.get(i, j));
                    }
                }
                c
            })
            .collect(),
    )
}

/// `d` on one-forms, for symmetry with [`de_rham`].
pub fn de_rham_one(w: &OneForm) -> TwoForm {
    w.d()
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_components(f, self.comps.iter().enumerate().map(|(j, c)| (c, format!("dy{}", j + 1))))
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_components(f, self.comps.iter().enumerate().map(|(j, c)| (c, format!("d{}", j + 1))))
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_components(
            f,
            self.comps
                .iter()
                .map(|((i, j), c)| (c, format!("dy{}^dy{}", i + 1, j + 1))),
        )
    }
}

fn fmt_components<'a>(
    f: &mut fmt::Formatter<'_>,
    comps: impl Iterator<Item = (&'a LaurentElement, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, label) in comps {
        for (e, coef) in c.terms.iter().rev() {
            let m = monomial_string(e);
            let rest = if m.is_empty() { label.clone() } else { format!("{m}*{label}") };
            fmt_scaled_term(first, coef, f, &rest)?;
            first = false;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ParamSet, ParamScalar};

    fn y(e: &[i32]) -> LaurentElement {
        LaurentElement::mono(e)
    }

    #[test]
    fn ring_examples() {
        let p = y(&[1, 0]).ring_op(&y(&[-1, 0]), RingOp::Mul).unwrap();
        assert_eq!(p, LaurentElement::one(2));
        assert_eq!(y(&[2, 1]).derive(0), y(&[1, 1]).scale(&ParamScalar::int(2)));
        assert_eq!(y(&[-1, 0]).derive(0), -y(&[-2, 0]));
        assert_eq!(
            y(&[1, 0]).ring_op(&LaurentElement::one(3), RingOp::Add),
            Err(LaurentError::MismatchedVariables(2, 3))
        );
    }

    #[test]
    fn de_rham_examples() {
        let d = de_rham(&y(&[1, 1]));
        assert_eq!(d.component(0), &y(&[0, 1]));
        assert_eq!(d.component(1), &y(&[1, 0]));
        let n = 5;
        let d = de_rham(&y(&[n, 0]));
        assert_eq!(d.component(0), &y(&[n - 1, 0]).scale(&ParamScalar::int(n as i64)));
        assert!(d.component(1).is_zero());
        // image of dx_j under x_j -> y1^(N-j) y2^j
        for j in 0..=n {
            let d = de_rham(&y(&[n - j, j]));
            assert_eq!(d.component(0), &y(&[n - j - 1, j]).scale(&ParamScalar::int((n - j) as i64)));
            assert_eq!(d.component(1), &y(&[n - j, j - 1]).scale(&ParamScalar::int(j as i64)));
        }
    }

    #[test]
    fn cartan_examples() {
        let y1d2 = VectorField::basis(2, 1, y(&[1, 0]));
        let y2d1 = VectorField::basis(2, 0, y(&[0, 1]));
        let expected = VectorField::from_components(vec![y(&[1, 0]), -y(&[0, 1])]);
        assert_eq!(bracket(&y1d2, &y2d1), expected);

        let dy2 = OneForm::basis(2, 1, LaurentElement::one(2));
        assert_eq!(iota(&y1d2, &dy2), y(&[1, 0]));

        let ps = ParamSet::new(["k"]);
        let k = ParamScalar::param(&ps.get("k").unwrap());
        let (a, b) = (2, 3);
        let mut w = TwoForm::zero(2);
        w.set(0, 1, y(&[-a, -b]).scale(&k));
        let d1 = VectorField::basis(2, 0, LaurentElement::one(2));
        assert_eq!(iota2(&d1, &w), OneForm::basis(2, 1, y(&[-a, -b]).scale(&k)));
    }

    #[test]
    fn zn_weight_examples() {
        let mut w11 = TwoForm::zero(2);
        w11.set(0, 1, y(&[-1, -1]));
        assert_eq!(w11.zn_weight(3), ZnWeight::Residue(0));
        let mut w12 = TwoForm::zero(2);
        w12.set(0, 1, y(&[-1, -2]));
        assert_eq!(w12.zn_weight(2), ZnWeight::Residue(1));
        let euler1 = VectorField::basis(2, 0, y(&[1, 0]));
        for n in 1..7 {
            assert_eq!(euler1.zn_weight(n), ZnWeight::Residue(0));
        }
        assert_eq!((y(&[1, 0]) + y(&[2, 0])).zn_weight(2), ZnWeight::Inhomogeneous);
    }

    #[test]
    fn display() {
        let f = y(&[2, -1]).scale(&ParamScalar::int(3)) - y(&[1, 0]);
        assert_eq!(f.to_string(), "3*y1^2*y2^-1 - y1");
        let w = OneForm::basis(2, 1, y(&[-1, 0]).scale(&ParamScalar::int(-2)));
        assert_eq!(w.to_string(), "-2*y1^-1*dy2");
    }
}
