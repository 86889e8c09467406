//! The two-chart cover of the punctured plane: twisted gluing, H¹ classes,
//! section extension, cyclic invariants and the conformal gluing check.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebroid::{AlgebroidError, Chart, WeightOneElement};
use crate::freefield::{FreeField, FreeFieldElement, FreeFieldError, Symbol, Word};
use crate::laurent::{iota2, LaurentElement, OneForm, TwoForm, VectorField};
use crate::linalg::{AffineSystem, SolveStatus};
use crate::scalar::{rat, ParamScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("expected a section on {expected}, found one on {found}")]
    WrongChart { expected: String, found: Chart },
    #[error("input is not regular on {0}")]
    NotRegular(Chart),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error(transparent)]
    FreeField(#[from] FreeFieldError),
}

type Result<T> = std::result::Result<T, GeometryError>;

/// `Σ c_ab · dy₁∧dy₂/(y₁^a y₂^b)` with `a, b ≥ 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GluingForm {
    terms: BTreeMap<(u32, u32), ParamScalar>,
}

impl GluingForm {
    pub fn zero() -> Self {
        GluingForm::default()
    }

    /// `c·ω_ab`.
    pub fn basis(a: u32, b: u32, c: ParamScalar) -> Self {
        let mut g = GluingForm::zero();
        g.add(a, b, c);
        g
    }

    pub fn add(&mut self, a: u32, b: u32, c: ParamScalar) {
        assert!(a >= 1 && b >= 1, "gluing basis needs a, b >= 1");
        let e = self.terms.entry((a, b)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ParamScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        let mut g = GluingForm::zero();
        for (&(a, b), v) in &self.terms {
            g.add(a, b, v * c);
        }
        g
    }

    pub fn coefficient(&self) -> LaurentElement {
        LaurentElement::from_terms(
            2,
            self.terms
                .iter()
                .map(|(&(a, b), c)| (vec![-(a as i32), -(b as i32)], c.clone())),
        )
    }

    pub fn to_two_form(&self) -> TwoForm {
        let mut w = TwoForm::zero(2);
        w.set(0, 1, self.coefficient());
        w
    }
}

impl fmt::Display for GluingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| {
                if c.is_one() {
                    format!("w[{a},{b}]")
                } else if c.terms().count() == 1 {
                    format!("{c}*w[{a},{b}]")
                } else {
                    format!("({c})*w[{a},{b}]")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    OneToTwo,
    TwoToOne,
}

fn overlap(v: &WeightOneElement) -> Result<WeightOneElement> {
    match v.chart() {
        Chart::U1 | Chart::U2 | Chart::Overlap => Ok(v.with_chart(Chart::Overlap)),
        c => Err(GeometryError::WrongChart {
            expected: "a chart of the punctured plane".into(),
            found: c,
        }),
    }
}

/// `τ ↦ τ ± ι_{π(τ)}ω`; forms are unchanged.
pub fn transition(v: &WeightOneElement, omega: &GluingForm, dir: Direction) -> Result<WeightOneElement> {
    let v = overlap(v)?;
    let mut shift = iota2(&v.field_part(), &omega.to_two_form());
    if dir == Direction::TwoToOne {
        shift = -shift;
    }
    Ok(v.try_add(&WeightOneElement::form(Chart::Overlap, shift))?)
}

/// Whether every coefficient is regular on `chart` (`U1` allows negative
/// powers of `y₁` only, `U2` of `y₂` only).
pub fn regular_on(v: &WeightOneElement, chart: Chart) -> bool {
    let fields = v.field_part();
    fields
        .components()
        .iter()
        .chain(v.form_part().components())
        .all(|f| chart.permits(f))
}

fn element_degree(v: &WeightOneElement) -> Result<Option<i32>> {
    let mut degs = Vec::new();
    for f in v.field_part().components() {
        degs.extend(f.terms().map(|(e, _)| e.iter().sum::<i32>() - 1));
    }
    for g in v.form_part().components() {
        degs.extend(g.terms().map(|(e, _)| e.iter().sum::<i32>() + 1));
    }
    match degs.split_first() {
        None => Ok(None),
        Some((d, rest)) if rest.iter().all(|x| x == d) => Ok(Some(*d)),
        _ => Err(GeometryError::Inhomogeneous(v.to_string())),
    }
}

/// Internal degree of a weight-one element (`∂` counts −1, `dy` counts +1).
pub fn internal_degree(v: &WeightOneElement) -> std::result::Result<Option<i32>, GeometryError> {
    element_degree(v)
}

/// A section given on both charts, glued by `omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartedSection {
    pub u1: WeightOneElement,
    pub u2: WeightOneElement,
    pub omega: GluingForm,
}

impl ChartedSection {
    pub fn is_consistent(&self) -> bool {
        regular_on(&self.u1, Chart::U1)
            && regular_on(&self.u2, Chart::U2)
            && transition(&self.u1, &self.omega, Direction::OneToTwo)
                .map(|t| t.with_chart(Chart::U2) == self.u2)
                .unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub alpha: OneForm,
    pub section: ChartedSection,
}

/// Looks for a one-form `α`, regular on `U1` and of the internal degree of
/// `v`, such that the transition of `v + α` is regular on `U2`.
pub fn extend_section(v: &WeightOneElement, omega: &GluingForm) -> Result<Option<Extension>> {
    if !regular_on(v, Chart::U1) {
        return Err(GeometryError::NotRegular(Chart::U1));
    }
    let v1 = v.with_chart(Chart::U1);
    let Some(degree) = element_degree(&v1)? else {
        let section = ChartedSection {
            u1: v1.clone(),
            u2: v1.with_chart(Chart::U2),
            omega: omega.clone(),
        };
        return Ok(Some(Extension {
            alpha: OneForm::zero(2),
            section,
        }));
    };
    let image = transition(&v1, omega, Direction::OneToTwo)?;
    if !image.field_part().components().iter().all(|f| Chart::U2.permits(f)) {
        return Ok(None);
    }
    // Bad monomials of the image: negative power of y1.
    let beta = image.form_part();
    let mut amin = 0;
    for g in beta.components() {
        for (e, _) in g.terms() {
            amin = amin.min(e[0]);
        }
    }
    // Unknowns: y1^a y2^b dy_j with amin <= a <= -1, b >= 0, a + b + 1 = degree.
    let mut unknowns: Vec<(Vec<i32>, usize)> = Vec::new();
    for a in amin..0 {
        let b = degree - 1 - a;
        if b < 0 {
            continue;
        }
        for j in 0..2 {
            unknowns.push((vec![a, b], j));
        }
    }
    // One equation per bad (monomial, slot): coefficient of beta + alpha = 0.
    let mut keys: Vec<(Vec<i32>, usize)> = Vec::new();
    for (j, g) in beta.components().iter().enumerate() {
        for (e, _) in g.terms() {
            if e[0] < 0 {
                keys.push((e.clone(), j));
            }
        }
    }
    keys.extend(unknowns.iter().cloned());
    keys.sort();
    keys.dedup();
    let mut sys = AffineSystem::new(unknowns.len());
    for (e, j) in &keys {
        let row: Vec<Rational> = unknowns
            .iter()
            .map(|u| if &u.0 == e && u.1 == *j { rat(1) } else { rat(0) })
            .collect();
        let rhs = -beta.component(*j).coeff(e);
        sys.push_row(row, rhs);
    }
    let sol = sys.solve();
    if sol.status == SolveStatus::Inconsistent {
        return Ok(None);
    }
    let particular = sol.particular.expect("consistent system has a solution");
    let mut comps = vec![LaurentElement::zero(2), LaurentElement::zero(2)];
    for ((e, j), c) in unknowns.iter().zip(particular) {
        comps[*j] += &LaurentElement::monomial(e.clone(), c);
    }
    let alpha = OneForm::from_components(comps);
    let u1 = v1.try_add(&WeightOneElement::form(Chart::U1, alpha.clone()))?;
    let u2 = transition(&u1, omega, Direction::OneToTwo)?.with_chart(Chart::U2);
    let section = ChartedSection {
        u1,
        u2,
        omega: omega.clone(),
    };
    debug_assert!(section.is_consistent());
    Ok(Some(Extension { alpha, section }))
}

/// Class of `f·dy₁∧dy₂` modulo forms regular on `U1` or on `U2`.
pub fn h1_class(f: &LaurentElement) -> GluingForm {
    let mut g = GluingForm::zero();
    for (e, c) in f.terms() {
        if e[0] < 0 && e[1] < 0 {
            g.add((-e[0]) as u32, (-e[1]) as u32, c.clone());
        }
    }
    g
}

/// Keeps the `ω_ab` with `N | a + b − 2`.
pub fn zn_filter(omega: &GluingForm, n: u32) -> GluingForm {
    let mut g = GluingForm::zero();
    for (&(a, b), c) in omega.terms() {
        if (a + b - 2) % n == 0 {
            g.add(a, b, c.clone());
        }
    }
    g
}

/// Polynomial monomial vector fields and one-forms on ℂⁿ of internal degree
/// `degree`, provided that degree is divisible by `order` (otherwise none is
/// invariant).
pub fn invariant_sections(nvars: usize, degree: i32, order: u32) -> Vec<WeightOneElement> {
    let chart = Chart::Affine(nvars);
    if degree.rem_euclid(order as i32) != 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for e in monomials(nvars, degree + 1) {
        for i in 0..nvars {
            out.push(WeightOneElement::field(chart, i, LaurentElement::mono(&e)));
        }
    }
    for e in monomials(nvars, degree - 1) {
        for j in 0..nvars {
            out.push(WeightOneElement::form(
                chart,
                OneForm::basis(nvars, j, LaurentElement::mono(&e)),
            ));
        }
    }
    out
}

/// Exponent vectors of all monomials of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: i32) -> Vec<Vec<i32>> {
    if d < 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Transports `L = T(y₁)⊙∂₁ + T(y₂)⊙∂₂` through the gluing automorphism,
/// extended multiplicatively (`∂_i ↦ ∂_i + ι_{∂_i}ω`, coordinates fixed), and
/// compares with `L`.
pub fn conformal_glue_check(omega: &GluingForm, engine: &FreeField) -> Result<bool> {
    let l = engine.virasoro(2)?;
    let mut image = FreeFieldElement::zero(2);
    for j in 0..2 {
        let frame = WeightOneElement::field(Chart::Overlap, j, LaurentElement::one(2));
        let moved = transition(&frame, omega, Direction::OneToTwo)?.embed();
        let ty = FreeFieldElement::word(Word::new(vec![0, 0], vec![Symbol::Coord { var: j, order: 1 }]));
        image = &image + &engine.nproduct(&ty, -1, &moved)?;
    }
    Ok(image == l)
}

/// The field part of `v` as a vector field, for symbol comparisons.
pub fn symbol_field(v: &WeightOneElement) -> VectorField {
    v.field_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParamSet;

    fn y(e: &[i32]) -> LaurentElement {
        LaurentElement::mono(e)
    }

    fn k() -> ParamScalar {
        ParamScalar::param(&ParamSet::new(["k"]).get("k").unwrap())
    }

    #[test]
    fn transition_examples() {
        let (a, b) = (2, 3);
        let om = GluingForm::basis(a, b, k());
        let d1 = WeightOneElement::field(Chart::Overlap, 0, LaurentElement::one(2));
        let got = transition(&d1, &om, Direction::OneToTwo).unwrap();
        let expected = d1
            .try_add(&WeightOneElement::form(
                Chart::Overlap,
                OneForm::basis(2, 1, y(&[-(a as i32), -(b as i32)]).scale(&k())),
            ))
            .unwrap();
        assert_eq!(got, expected);

        let pure = WeightOneElement::form(Chart::Overlap, OneForm::basis(2, 0, y(&[-1, 0])));
        assert_eq!(transition(&pure, &om, Direction::OneToTwo).unwrap(), pure);

        let om11 = GluingForm::basis(1, 1, k());
        let y1d1 = WeightOneElement::field(Chart::Overlap, 0, y(&[1, 0]));
        let expected = y1d1
            .try_add(&WeightOneElement::form(Chart::Overlap, OneForm::basis(2, 1, y(&[0, -1]).scale(&k()))))
            .unwrap();
        assert_eq!(transition(&y1d1, &om11, Direction::OneToTwo).unwrap(), expected);
    }

    #[test]
    fn regularity_examples() {
        let f = WeightOneElement::form(Chart::Overlap, OneForm::basis(2, 1, y(&[-1, 0])));
        assert!(regular_on(&f, Chart::U1));
        assert!(!regular_on(&f, Chart::U2));
        let g = WeightOneElement::field(Chart::Overlap, 0, y(&[0, 1]));
        assert!(regular_on(&g, Chart::U1) && regular_on(&g, Chart::U2));
        let h = WeightOneElement::form(Chart::Overlap, OneForm::basis(2, 1, y(&[-1, -2])));
        assert!(!regular_on(&h, Chart::U2) && !regular_on(&h, Chart::U1));
        let h2 = WeightOneElement::form(Chart::Overlap, OneForm::basis(2, 1, y(&[0, -2])));
        assert!(regular_on(&h2, Chart::U2) && !regular_on(&h2, Chart::U1));
    }

    #[test]
    fn extension_examples() {
        let om = GluingForm::basis(1, 1, k());
        let y2d1 = WeightOneElement::field(Chart::U1, 0, y(&[0, 1]));
        let ext = extend_section(&y2d1, &om).unwrap().unwrap();
        assert_eq!(ext.alpha, OneForm::basis(2, 1, y(&[-1, 0]).scale(&-k())));
        assert!(ext.section.is_consistent());
        let y1d2 = WeightOneElement::field(Chart::U1, 1, y(&[1, 0]));
        assert!(extend_section(&y1d2, &om).unwrap().unwrap().alpha.is_zero());
        let om12 = GluingForm::basis(1, 2, ParamScalar::one());
        assert!(extend_section(&y2d1, &om12).unwrap().is_none());
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1_class(&y(&[-1, -1])), GluingForm::basis(1, 1, ParamScalar::one()));
        assert!(h1_class(&y(&[1, -1])).is_zero());
        assert_eq!(h1_class(&y(&[-3, -2])), GluingForm::basis(3, 2, ParamScalar::one()));
    }

    #[test]
    fn zn_examples() {
        let mut om = GluingForm::basis(1, 1, ParamScalar::one());
        om.add(1, 2, ParamScalar::one());
        assert_eq!(zn_filter(&om, 2), GluingForm::basis(1, 1, ParamScalar::one()));
        let om13 = GluingForm::basis(1, 3, ParamScalar::one());
        assert_eq!(zn_filter(&om13, 2), om13);
        let inv = invariant_sections(2, 0, 2);
        assert_eq!(inv.len(), 4);
        for (i, j) in [(0, 1), (1, 0), (0, 0), (1, 1)] {
            let mut e = vec![0, 0];
            e[i] = 1;
            assert!(inv.contains(&WeightOneElement::field(Chart::Affine(2), j, y(&e))));
        }
        assert!(invariant_sections(2, 1, 2).is_empty());
    }

    #[test]
    fn conformal_glue_examples() {
        let engine = FreeField::with_max_weight(2);
        for om in [
            GluingForm::basis(1, 1, k()),
            GluingForm::basis(2, 1, ParamScalar::int(2)),
            GluingForm::zero(),
        ] {
            assert!(conformal_glue_check(&om, &engine).unwrap(), "{om}");
        }
    }
}
