//! Exact coefficients: rationals extended by polynomials in formal parameters.
//!
//! A [`ParamScalar`] is a sparse map from parameter monomials (`k`, `k^2*c`, ...)
//! to arbitrary-precision rationals. Every computation in the crate is carried
//! out over this ring; levels, charges and gluing coefficients are parameters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{AffineSystem, SolveStatus};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("non-scalar divisor: {0}")]
    NonScalarDivisor(String),
    #[error("nonlinear condition in `{param}`: {equation}")]
    NonlinearCondition { param: String, equation: String },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
}

/// A formal parameter, identified by name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Param(Arc<str>);

impl Param {
    pub fn name(&self) -> &str {
        &self.0
    }

    fn new(name: &str) -> Self {
        Param(Arc::from(name))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The parameters declared for one session.
///
/// Parameters can only be obtained through a declared set, which keeps the
/// canonical ordering of monomials stable for the whole computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamSet {
    params: BTreeMap<String, Param>,
}

impl ParamSet {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let params = names
            .into_iter()
            .map(|n| (n.as_ref().to_string(), Param::new(n.as_ref())))
            .collect();
        ParamSet { params }
    }

    pub fn get(&self, name: &str) -> Result<Param, ScalarError> {
        self.params
            .get(name)
            .cloned()
            .ok_or_else(|| ScalarError::UnknownParameter(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.params.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Param> {
        self.params.values()
    }
}

/// A product of parameters with positive exponents, sorted by parameter.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamMonomial(Vec<(Param, u32)>);

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial(Vec::new())
    }

    pub fn var(p: &Param) -> Self {
        ParamMonomial(vec![(p.clone(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, p: &Param) -> u32 {
        self.0.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(Param, u32)] {
        &self.0
    }

    /// Removes `p` entirely, returning the reduced monomial.
    pub fn without(&self, p: &Param) -> ParamMonomial {
        ParamMonomial(self.0.iter().filter(|(q, _)| q != p).cloned().collect())
    }

    fn mul(&self, other: &ParamMonomial) -> ParamMonomial {
        let mut out: Vec<(Param, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        ParamMonomial(out)
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (p, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in the formal parameters with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamScalar {
    terms: BTreeMap<ParamMonomial, Rational>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar::default()
    }

    pub fn one() -> Self {
        ParamScalar::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(ParamMonomial::one(), r);
        }
        ParamScalar { terms }
    }

    pub fn int(n: i64) -> Self {
        ParamScalar::from_rational(rat(n))
    }

    pub fn param(p: &Param) -> Self {
        ParamScalar::monomial(ParamMonomial::var(p), Rational::one())
    }

    pub fn monomial(m: ParamMonomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value when no parameter occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(p, _)| p.clone()))
            .collect()
    }

    pub fn degree_in(&self, p: &Param) -> u32 {
        self.terms.keys().map(|m| m.degree_in(p)).max().unwrap_or(0)
    }

    pub fn scale(&self, r: &Rational) -> ParamScalar {
        if r.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * r))
                .collect(),
        }
    }

    /// Substitutes `value` for every occurrence of `p`.
    pub fn substitute(&self, p: &Param, value: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(p);
            let mut term = ParamScalar::monomial(m.without(p), c.clone());
            for _ in 0..e {
                term = &term * value;
            }
            out += term;
        }
        out
    }

    pub fn substitute_all(&self, assignment: &BTreeMap<Param, ParamScalar>) -> ParamScalar {
        assignment
            .iter()
            .fold(self.clone(), |acc, (p, v)| acc.substitute(p, v))
    }

    /// Splits an affine-linear expression into coefficients of `unknowns` and
    /// the remaining constant part.
    ///
    /// Fails when an unknown occurs with degree above one or multiplied by
    /// another unknown.
    pub fn linear_split(
        &self,
        unknowns: &[Param],
    ) -> Result<(Vec<ParamScalar>, ParamScalar), ScalarError> {
        let mut coeffs = vec![ParamScalar::zero(); unknowns.len()];
        let mut constant = ParamScalar::zero();
        for (m, c) in &self.terms {
            let hits: Vec<usize> = unknowns
                .iter()
                .enumerate()
                .filter(|(_, u)| m.degree_in(u) > 0)
                .map(|(i, _)| i)
                .collect();
            match hits.as_slice() {
                [] => constant.add_term(m.clone(), c.clone()),
                [i] if m.degree_in(&unknowns[*i]) == 1 => {
                    coeffs[*i].add_term(m.without(&unknowns[*i]), c.clone())
                }
                [i, ..] => {
                    return Err(ScalarError::NonlinearCondition {
                        param: unknowns[*i].to_string(),
                        equation: self.to_string(),
                    })
                }
            }
        }
        Ok((coeffs, constant))
    }

    fn add_term(&mut self, m: ParamMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    /// Exact division by a constant; parameter-valued divisors are rejected.
    pub fn checked_div(&self, divisor: &ParamScalar) -> Result<ParamScalar, ScalarError> {
        match divisor.as_rational() {
            Some(r) if !r.is_zero() => Ok(self.scale(&r.recip())),
            _ => Err(ScalarError::NonScalarDivisor(divisor.to_string())),
        }
    }

    pub fn pow(&self, e: u32) -> ParamScalar {
        let mut out = ParamScalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl From<Rational> for ParamScalar {
    fn from(r: Rational) -> Self {
        ParamScalar::from_rational(r)
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        ParamScalar::int(n)
    }
}

impl<'a> Add<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ParamScalar {
    type Output = ParamScalar;
    fn add(mut self, rhs: ParamScalar) -> ParamScalar {
        self += rhs;
        self
    }
}

impl AddAssign<&ParamScalar> for ParamScalar {
    fn add_assign(&mut self, rhs: &ParamScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for ParamScalar {
    fn add_assign(&mut self, rhs: ParamScalar) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ParamScalar {
    type Output = ParamScalar;
    fn sub(mut self, rhs: ParamScalar) -> ParamScalar {
        self -= &rhs;
        self
    }
}

impl SubAssign<&ParamScalar> for ParamScalar {
    fn sub_assign(&mut self, rhs: &ParamScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(mut self) -> ParamScalar {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -self.clone()
    }
}

impl<'a> Mul<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        // Fast paths: most coefficients in the engine are plain rationals.
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        let mut out = ParamScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: ParamScalar) -> ParamScalar {
        &self * &rhs
    }
}

impl MulAssign<&ParamScalar> for ParamScalar {
    fn mul_assign(&mut self, rhs: &ParamScalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Arithmetic expression tree over rationals and parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarExpr {
    Rational(Rational),
    Param(Param),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Neg(Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
}

/// Brings an expression tree into canonical sparse form.
pub fn scalar_normalize(expr: &ScalarExpr) -> Result<ParamScalar, ScalarError> {
    Ok(match expr {
        ScalarExpr::Rational(r) => ParamScalar::from_rational(r.clone()),
        ScalarExpr::Param(p) => ParamScalar::param(p),
        ScalarExpr::Add(a, b) => scalar_normalize(a)? + scalar_normalize(b)?,
        ScalarExpr::Sub(a, b) => scalar_normalize(a)? - scalar_normalize(b)?,
        ScalarExpr::Mul(a, b) => scalar_normalize(a)? * scalar_normalize(b)?,
        ScalarExpr::Neg(a) => -scalar_normalize(a)?,
        ScalarExpr::Div(a, b) => scalar_normalize(a)?.checked_div(&scalar_normalize(b)?)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionStatus {
    Unique,
    Underdetermined,
    Inconsistent,
}

/// Outcome of [`solve_linear_system`].
///
/// `assignment` holds every unknown whose value is forced by the system. When
/// the status is `Unique` that is all of them; an underdetermined system may
/// still pin some unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub status: SolutionStatus,
    pub assignment: BTreeMap<Param, ParamScalar>,
}

impl LinearSolution {
    pub fn value(&self, p: &Param) -> Option<&ParamScalar> {
        self.assignment.get(p)
    }
}

/// Solves a system of affine-linear equations `eq = 0` in `unknowns`.
///
/// Coefficients of unknowns must be rational constants; other parameters may
/// appear in the constant parts, and forced values are then parameter
/// polynomials.
pub fn solve_linear_system(
    equations: &[ParamScalar],
    unknowns: &[Param],
) -> Result<LinearSolution, ScalarError> {
    let mut system = AffineSystem::new(unknowns.len());
    for eq in equations {
        let (coeffs, constant) = eq.linear_split(unknowns)?;
        let mut row = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            match c.as_rational() {
                Some(r) => row.push(r),
                None => return Err(ScalarError::NonScalarDivisor(c.to_string())),
            }
        }
        system.push_row(row, -constant);
    }
    let solved = system.solve();
    let assignment = unknowns
        .iter()
        .zip(solved.pinned.iter())
        .filter_map(|(u, v)| v.clone().map(|v| (u.clone(), v)))
        .collect();
    let status = match solved.status {
        SolveStatus::Unique => SolutionStatus::Unique,
        SolveStatus::Underdetermined => SolutionStatus::Underdetermined,
        SolveStatus::Inconsistent => SolutionStatus::Inconsistent,
    };
    Ok(LinearSolution { status, assignment })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Param {
        ParamSet::new(["k"]).get("k").unwrap()
    }

    #[test]
    fn rational_sum() {
        let e = ScalarExpr::Add(
            Box::new(ScalarExpr::Rational(ratio(1, 2))),
            Box::new(ScalarExpr::Rational(ratio(1, 3))),
        );
        assert_eq!(scalar_normalize(&e).unwrap(), ratio(5, 6).into());
    }

    #[test]
    fn square_cancels() {
        let k = k();
        let kk = ScalarExpr::Mul(
            Box::new(ScalarExpr::Param(k.clone())),
            Box::new(ScalarExpr::Param(k.clone())),
        );
        let sq = ScalarExpr::Mul(
            Box::new(ScalarExpr::Param(k.clone())),
            Box::new(ScalarExpr::Param(k)),
        );
        let e = ScalarExpr::Sub(Box::new(kk), Box::new(sq));
        assert!(scalar_normalize(&e).unwrap().is_zero());
    }

    #[test]
    fn charge_coefficient_at_n2_r0() {
        // N - 1 - 2r - k at N = 2, r = 0
        let k = ParamScalar::param(&k());
        let (n, r) = (2, 0);
        let c = ParamScalar::int(n - 1 - 2 * r) - k.clone();
        assert_eq!(c, ParamScalar::one() - k);
        assert_eq!(c.to_string(), "1 - k");
    }

    #[test]
    fn division_rules() {
        let k = k();
        let by_zero = ScalarExpr::Div(
            Box::new(ScalarExpr::Rational(rat(1))),
            Box::new(ScalarExpr::Rational(rat(0))),
        );
        assert!(matches!(
            scalar_normalize(&by_zero),
            Err(ScalarError::NonScalarDivisor(_))
        ));
        let by_param = ScalarExpr::Div(
            Box::new(ScalarExpr::Rational(rat(1))),
            Box::new(ScalarExpr::Param(k.clone())),
        );
        assert!(matches!(
            scalar_normalize(&by_param),
            Err(ScalarError::NonScalarDivisor(_))
        ));
        let half_k = ScalarExpr::Div(
            Box::new(ScalarExpr::Param(k.clone())),
            Box::new(ScalarExpr::Rational(rat(2))),
        );
        assert_eq!(
            scalar_normalize(&half_k).unwrap(),
            ParamScalar::param(&k).scale(&ratio(1, 2))
        );
    }

    #[test]
    fn solve_examples() {
        let k = k();
        let kp = ParamScalar::param(&k);
        let s = solve_linear_system(&[kp.clone() - ParamScalar::int(3)], &[k.clone()]).unwrap();
        assert_eq!(s.status, SolutionStatus::Unique);
        assert_eq!(s.value(&k), Some(&ParamScalar::int(3)));

        let s = solve_linear_system(
            &[kp.clone() + ParamScalar::one(), kp.clone() - ParamScalar::one()],
            &[k.clone()],
        )
        .unwrap();
        assert_eq!(s.status, SolutionStatus::Inconsistent);

        let s = solve_linear_system(&[ParamScalar::zero()], &[k.clone()]).unwrap();
        assert_eq!(s.status, SolutionStatus::Underdetermined);
        assert!(s.assignment.is_empty());
    }

    #[test]
    fn nonlinear_rejected() {
        let k = k();
        let kp = ParamScalar::param(&k);
        let err = solve_linear_system(&[&kp * &kp - ParamScalar::one()], &[k]).unwrap_err();
        assert!(matches!(err, ScalarError::NonlinearCondition { .. }));
    }

    #[test]
    fn solution_in_other_parameters() {
        let ps = ParamSet::new(["k", "k1", "k2"]);
        let (k, k1, k2) = (ps.get("k").unwrap(), ps.get("k1").unwrap(), ps.get("k2").unwrap());
        let kp = ParamScalar::param(&k);
        // k1 + k + 1 = 0, k2 - k + 1 = 0
        let eqs = [
            ParamScalar::param(&k1) + kp.clone() + ParamScalar::one(),
            ParamScalar::param(&k2) - kp.clone() + ParamScalar::one(),
        ];
        let s = solve_linear_system(&eqs, &[k1.clone(), k2.clone()]).unwrap();
        assert_eq!(s.status, SolutionStatus::Unique);
        assert_eq!(s.value(&k1), Some(&(-kp.clone() - ParamScalar::one())));
        assert_eq!(s.value(&k2), Some(&(kp - ParamScalar::one())));
        for eq in &eqs {
            assert!(eq.substitute_all(&s.assignment).is_zero());
        }
    }

    #[test]
    fn unknown_parameter() {
        let ps = ParamSet::new(["k"]);
        assert!(matches!(ps.get("q"), Err(ScalarError::UnknownParameter(_))));
    }
}
