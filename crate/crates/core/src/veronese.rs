//! Veronese rings `A_N` (and `A_{nN}` for `n > 2`) realized as cyclic
//! invariants of a polynomial ring, with the verifiers built on them.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebroid::{
    gl2_overlap_images, Algebroid, AlgebroidError, Chart, LieAlgebraData, MorphismReport, OracleCheck,
    WeightOneElement,
};
use crate::freefield::{FreeField, FreeFieldElement, Symbol, Word};
use crate::geometry::{extend_section, monomials, GeometryError, GluingForm};
use crate::laurent::{de_rham, LaurentElement, OneForm, ZnWeight};
use crate::linalg::{AffineSystem, Span};
use crate::scalar::{rat, solve_linear_system, Param, ParamScalar, ParamSet, Rational, ScalarError, SolutionStatus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VeroneseError {
    #[error("internal degree {degree} exceeds the degree bound {bound}")]
    DegreeBound { degree: i32, bound: u32 },
    #[error("input is not homogeneous of internal degree {0}")]
    Inhomogeneous(i32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("field parts of a module relation do not cancel: {0}")]
    NonCancellation(String),
    #[error("witness unexpectedly lies in the image of the Kähler forms: {0}")]
    UnexpectedMembership(String),
    #[error("levels {found:?} differ from the expected {expected:?}")]
    LevelMismatch { expected: (String, String), found: (String, String) },
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

type Result<T> = std::result::Result<T, VeroneseError>;

/// Default bound on the number `a + b` for candidate gluing forms `ω_ab`.
pub const DEFAULT_GLUING_BOUND: u32 = 4;

/// `x_a x_b − x_c x_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub lhs: (usize, usize),
    pub rhs: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct VeroneseModel {
    n: usize,
    order: u32,
    generators: Vec<Vec<i32>>,
    relations: Vec<Relation>,
    degree_bound: u32,
    check: OracleCheck,
}

fn add_exp(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Builds `A_N` for `n = 2` or `A_{nN}` for `n > 2`.
pub fn build_model(n: usize, order: u32, degree_bound: u32) -> Result<VeroneseModel> {
    if n < 2 || order < 1 {
        return Err(VeroneseError::Precondition(format!("need n >= 2 and N >= 1, got n={n}, N={order}")));
    }
    let big = order as i32;
    let mut relations = Vec::new();
    let generators: Vec<Vec<i32>> = if n == 2 {
        let gens = (0..=big).map(|j| vec![big - j, j]).collect();
        for i in 0..=order as usize {
            for j in (i + 2)..=order as usize {
                relations.push(Relation {
                    lhs: (i, j),
                    rhs: (i + 1, j - 1),
                });
            }
        }
        gens
    } else {
        let gens = monomials(n, big);
        let mut by_product: BTreeMap<Vec<i32>, Vec<(usize, usize)>> = BTreeMap::new();
        for u in 0..gens.len() {
            for v in u..gens.len() {
                by_product.entry(add_exp(&gens[u], &gens[v])).or_default().push((u, v));
            }
        }
        for pairs in by_product.values() {
            for p in &pairs[1..] {
                relations.push(Relation {
                    lhs: pairs[0],
                    rhs: *p,
                });
            }
        }
        gens
    };
    Ok(VeroneseModel {
        n,
        order,
        generators,
        relations,
        degree_bound,
        check: OracleCheck::Always,
    })
}

impl VeroneseModel {
    /// The model with the default membership bound `2N + 2`.
    pub fn new(n: usize, order: u32) -> Result<Self> {
        build_model(n, order, 2 * order + 2)
    }

    pub fn with_oracle_check(mut self, check: OracleCheck) -> Self {
        self.check = check;
        self
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// The embedding degree `N`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Exponent vectors of the images of `x_0, x_1, ...`.
    pub fn generators(&self) -> &[Vec<i32>] {
        &self.generators
    }

    pub fn generator(&self, j: usize) -> LaurentElement {
        LaurentElement::mono(&self.generators[j])
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    fn algebroid(&self) -> Algebroid {
        Algebroid::new(self.check)
    }

    /// Image of a relation under the generator map.
    pub fn relation_image(&self, r: &Relation) -> LaurentElement {
        let g = |i| self.generator(i);
        &(&g(r.lhs.0) * &g(r.lhs.1)) - &(&g(r.rhs.0) * &g(r.rhs.1))
    }

    /// Whether every relation maps to zero.
    pub fn embedding_holds(&self) -> bool {
        self.relations.iter().all(|r| self.relation_image(r).is_zero())
    }

    /// Monomials of `A` of internal degree `d` (in the y-realization).
    pub fn ring_monomials(&self, d: i32) -> Vec<Vec<i32>> {
        if d < 0 || d % self.order as i32 != 0 {
            return Vec::new();
        }
        monomials(self.n, d)
    }

    fn check_degree(&self, degree: i32) -> Result<()> {
        if degree > self.degree_bound as i32 {
            return Err(VeroneseError::DegreeBound {
                degree,
                bound: self.degree_bound,
            });
        }
        Ok(())
    }

    /// Span of `m·d(x_j)` over ring monomials `m`, in internal degree `degree`.
    fn kahler_span(&self, degree: i32) -> Span<(Vec<i32>, usize)> {
        let mut span = Span::new();
        for m in self.ring_monomials(degree - self.order as i32) {
            let mono = LaurentElement::mono(&m);
            for j in 0..self.generators.len() {
                let w = de_rham(&self.generator(j)).mul_fn(&mono);
                span.insert(&rational_form_vector(&w));
            }
        }
        span
    }

    /// Residual of `w` modulo the image of the Kähler forms of `A`. Parameters
    /// in `w` are kept; `w` is a member for exactly those parameter values at
    /// which every entry vanishes.
    pub fn membership_residual(&self, w: &OneForm, degree: i32) -> Result<BTreeMap<(Vec<i32>, usize), ParamScalar>> {
        self.check_degree(degree)?;
        if !w.is_zero() && w.homogeneous_degree() != Some(degree) {
            return Err(VeroneseError::Inhomogeneous(degree));
        }
        Ok(self.kahler_span(degree).residual(&form_vector(w)))
    }
}

impl fmt::Display for VeroneseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .enumerate()
            .map(|(j, e)| format!("x{j} -> {}", LaurentElement::mono(e)))
            .collect();
        write!(f, "A(n={}, N={}): {}", self.n, self.order, gens.join(", "))?;
        for r in &self.relations {
            write!(f, "; x{}*x{} - x{}*x{}", r.lhs.0, r.lhs.1, r.rhs.0, r.rhs.1)?;
        }
        Ok(())
    }
}

fn form_vector(w: &OneForm) -> BTreeMap<(Vec<i32>, usize), ParamScalar> {
    let mut out = BTreeMap::new();
    for (j, g) in w.components().iter().enumerate() {
        for (e, c) in g.terms() {
            out.insert((e.clone(), j), c.clone());
        }
    }
    out
}

fn rational_form_vector(w: &OneForm) -> BTreeMap<(Vec<i32>, usize), Rational> {
    form_vector(w)
        .into_iter()
        .map(|(k, c)| (k, c.as_rational().expect("Kähler generators are rational")))
        .collect()
}

/// Whether `w` (internal degree `degree`) lies in the image of `Ω(A)`.
pub fn omega_membership(w: &OneForm, model: &VeroneseModel, degree: i32) -> Result<bool> {
    Ok(model.membership_residual(w, degree)?.is_empty())
}

/// The two families of module relations among the `gl₂` images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationPair {
    /// `(y₁^r y₂^{N−r})·E₁₂ − (y₁^{r+1} y₂^{N−r−1})·E₂₂`.
    E12E22,
    /// `(y₁^r y₂^{N−r})·E₁₁ − (y₁^{r+1} y₂^{N−r−1})·E₂₁`.
    E11E21,
}

impl fmt::Display for RelationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationPair::E12E22 => "E12/E22",
            RelationPair::E11E21 => "E11/E21",
        })
    }
}

fn require_plane(model: &VeroneseModel) -> Result<()> {
    if model.n != 2 {
        return Err(VeroneseError::Precondition(format!("expected n = 2, got n = {}", model.n)));
    }
    Ok(())
}

/// Lifts a module relation through the quantum products on `U1` with gluing
/// `k·ω₁₁`. The field parts cancel; the result is a one-form.
pub fn relation_defect(model: &VeroneseModel, r: u32, pair: RelationPair, k: &ParamScalar) -> Result<WeightOneElement> {
    require_plane(model)?;
    let big = model.order as i32;
    if r >= model.order {
        return Err(VeroneseError::Precondition(format!("need 0 <= r < N, got r = {r}")));
    }
    let r = r as i32;
    let images: Vec<WeightOneElement> = gl2_overlap_images(k).iter().map(|v| v.with_chart(Chart::U1)).collect();
    let (first, second) = match pair {
        RelationPair::E12E22 => (&images[1], &images[3]),
        RelationPair::E11E21 => (&images[0], &images[2]),
    };
    let alg = model.algebroid();
    let f1 = LaurentElement::mono(&[r, big - r]);
    let f2 = LaurentElement::mono(&[r + 1, big - r - 1]);
    let defect = alg.mul_weight0(&f1, first)?.try_sub(&alg.mul_weight0(&f2, second)?)?;
    if !defect.field_part().is_zero() {
        return Err(VeroneseError::NonCancellation(defect.to_string()));
    }
    Ok(defect)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChargeStatus {
    Unique,
    Unconstrained,
    NoSolution,
}

impl fmt::Display for ChargeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChargeStatus::Unique => "unique",
            ChargeStatus::Unconstrained => "unconstrained",
            ChargeStatus::NoSolution => "no_solution",
        })
    }
}

/// The constraint one relation instance puts on the charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeCondition {
    pub pair: RelationPair,
    pub r: u32,
    pub defect: WeightOneElement,
    /// Linear conditions on `k` (each must vanish).
    pub equations: Vec<ParamScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeResult {
    pub status: ChargeStatus,
    pub charge: Option<Rational>,
    pub admissible_gluing: Vec<GluingForm>,
    pub conditions: Vec<ChargeCondition>,
}

/// The formal charge parameter `k`.
pub fn charge_param() -> Param {
    ParamSet::new(["k"]).get("k").expect("declared")
}

/// Determines the charge `k` of the gluing `k·ω₁₁` for which every relation
/// defect lies in the image of `Ω(A)`.
pub fn solve_charge(model: &VeroneseModel) -> Result<ChargeResult> {
    solve_charge_with(model, DEFAULT_GLUING_BOUND.max(2 * model.order))
}

pub fn solve_charge_with(model: &VeroneseModel, gluing_bound: u32) -> Result<ChargeResult> {
    require_plane(model)?;
    let admissible = classify_admissible(model, gluing_bound)?;
    let omega11 = GluingForm::basis(1, 1, ParamScalar::one());
    if model.order == 1 {
        return Ok(ChargeResult {
            status: ChargeStatus::Unconstrained,
            charge: None,
            admissible_gluing: admissible,
            conditions: Vec::new(),
        });
    }
    if !admissible.contains(&omega11) {
        return Ok(ChargeResult {
            status: ChargeStatus::NoSolution,
            charge: None,
            admissible_gluing: admissible,
            conditions: Vec::new(),
        });
    }
    let kp = charge_param();
    let k = ParamScalar::param(&kp);
    let mut conditions = Vec::new();
    let mut all = Vec::new();
    for pair in [RelationPair::E12E22, RelationPair::E11E21] {
        for r in 0..model.order {
            let defect = relation_defect(model, r, pair, &k)?;
            let equations: Vec<ParamScalar> = model
                .membership_residual(defect.form_part(), model.order as i32)?
                .into_values()
                .collect();
            all.extend(equations.iter().cloned());
            conditions.push(ChargeCondition {
                pair,
                r,
                defect,
                equations,
            });
        }
    }
    let sol = solve_linear_system(&all, &[kp.clone()])?;
    let (status, charge) = match sol.status {
        SolutionStatus::Unique => (ChargeStatus::Unique, sol.value(&kp).and_then(ParamScalar::as_rational)),
        SolutionStatus::Underdetermined => (ChargeStatus::Unconstrained, None),
        SolutionStatus::Inconsistent => (ChargeStatus::NoSolution, None),
    };
    Ok(ChargeResult {
        status,
        charge,
        admissible_gluing: vec![omega11],
        conditions,
    })
}

/// `ℤ_N`-equivariant `ω_ab` with `a + b ≤ bound`, in lexicographic order.
pub fn gluing_candidates(order: u32, bound: u32) -> Vec<GluingForm> {
    let mut out = Vec::new();
    for a in 1..bound {
        for b in 1..=bound.saturating_sub(a) {
            if (a + b - 2) % order == 0 {
                out.push(GluingForm::basis(a, b, ParamScalar::one()));
            }
        }
    }
    out
}

/// Candidate gluings for which every generator field `g·ρ(E_ij)` (with `g`
/// a ring monomial of degree at most `bound`) extends across both charts.
pub fn classify_admissible(model: &VeroneseModel, bound: u32) -> Result<Vec<GluingForm>> {
    require_plane(model)?;
    let mut fields = Vec::new();
    for d in (0..=bound as i32).step_by(model.order as usize) {
        for g in model.ring_monomials(d) {
            for i in 0..2 {
                for j in 0..2 {
                    let mut e = g.clone();
                    e[i] += 1;
                    fields.push(WeightOneElement::field(Chart::U1, j, LaurentElement::mono(&e)));
                }
            }
        }
    }
    let mut survivors = Vec::new();
    for omega in gluing_candidates(model.order, bound) {
        let mut ok = true;
        for v in &fields {
            if extend_section(v, &omega)?.is_none() {
                ok = false;
                break;
            }
        }
        if ok {
            survivors.push(omega);
        }
    }
    Ok(survivors)
}

#[derive(Clone, Debug)]
pub struct Gl2Report {
    /// Levels with the charge left formal.
    pub generic: MorphismReport,
    /// Levels at `k = N + 1`.
    pub specialized: MorphismReport,
    pub images: Vec<WeightOneElement>,
}

/// The quantized `gl₂` action at charge `N + 1`.
pub fn quantized_gl2(model: &VeroneseModel) -> Result<Gl2Report> {
    require_plane(model)?;
    let params = ParamSet::new(["k1", "k2"]);
    let (k1, k2) = (params.get("k1")?, params.get("k2")?);
    let lie = LieAlgebraData::gl(2, &k1, &k2);
    let alg = model.algebroid();
    let k = ParamScalar::param(&charge_param());
    let generic = alg.morphism_check(&lie, &gl2_overlap_images(&k))?;
    let charge = ParamScalar::int(model.order as i64 + 1);
    let images = gl2_overlap_images(&charge);
    let specialized = alg.morphism_check(&lie, &images)?;
    let expected = (ParamScalar::int(-(model.order as i64) - 2), ParamScalar::int(model.order as i64));
    let found = (
        specialized.level("k1").cloned().unwrap_or_default(),
        specialized.level("k2").cloned().unwrap_or_default(),
    );
    if !specialized.passed || found != expected {
        return Err(VeroneseError::LevelMismatch {
            expected: (expected.0.to_string(), expected.1.to_string()),
            found: (found.0.to_string(), found.1.to_string()),
        });
    }
    Ok(Gl2Report {
        generic,
        specialized,
        images,
    })
}

/// A derivation of `A`, recorded by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub images: Vec<LaurentElement>,
}

impl Derivation {
    pub fn apply(&self, model: &VeroneseModel, r: &Relation) -> LaurentElement {
        let g = |i| model.generator(i);
        let t = |i: usize| &self.images[i];
        let lhs = &(t(r.lhs.0) * &g(r.lhs.1)) + &(&g(r.lhs.0) * t(r.lhs.1));
        let rhs = &(t(r.rhs.0) * &g(r.rhs.1)) + &(&g(r.rhs.0) * t(r.rhs.1));
        &lhs - &rhs
    }

    /// Whether the relation ideal is preserved.
    pub fn preserves_relations(&self, model: &VeroneseModel) -> bool {
        model.relations.iter().all(|r| self.apply(model, r).is_zero())
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(j, t)| format!("x{j} -> {t}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

#[derive(Clone, Debug)]
pub struct DerivationReport {
    pub degree: i32,
    pub basis: Vec<Derivation>,
    /// Whether `A·ρ(gl_n)` spans the derivations in this degree.
    pub generated: bool,
}

fn derivation_vector(images: &[LaurentElement]) -> BTreeMap<(usize, Vec<i32>), Rational> {
    let mut out = BTreeMap::new();
    for (j, t) in images.iter().enumerate() {
        for (e, c) in t.terms() {
            out.insert((j, e.clone()), c.as_rational().expect("rational derivation"));
        }
    }
    out
}

/// Derivations of `A` of internal degree `d`, by solving `τ(Q) ⊆ Q` on the
/// coefficients of `τ(x_j)`.
pub fn derivations(model: &VeroneseModel, d: i32) -> Result<DerivationReport> {
    model.check_degree(d)?;
    let targets = model.ring_monomials(model.order as i32 + d);
    let ngen = model.generators.len();
    let unknowns: Vec<(usize, Vec<i32>)> = (0..ngen)
        .flat_map(|j| targets.iter().map(move |m| (j, m.clone())))
        .collect();
    // Each relation contributes one equation per monomial of its image.
    let mut rows: BTreeMap<(usize, Vec<i32>), Vec<Rational>> = BTreeMap::new();
    for (ri, r) in model.relations.iter().enumerate() {
        for (u, (j, m)) in unknowns.iter().enumerate() {
            let mut add = |other: usize, sign: i64| {
                let e = add_exp(m, &model.generators[other]);
                let row = rows.entry((ri, e)).or_insert_with(|| vec![rat(0); unknowns.len()]);
                row[u] += rat(sign);
            };
            for (a, b, sign) in [(r.lhs.0, r.lhs.1, 1), (r.rhs.0, r.rhs.1, -1)] {
                if *j == a {
                    add(b, sign);
                }
                if *j == b {
                    add(a, sign);
                }
            }
        }
    }
    let mut sys = AffineSystem::new(unknowns.len());
    for row in rows.into_values() {
        sys.push_row(row, ParamScalar::zero());
    }
    let sol = sys.solve();
    let to_derivation = |v: &[Rational]| {
        let mut images = vec![LaurentElement::zero(model.n); ngen];
        for ((j, m), c) in unknowns.iter().zip(v) {
            images[*j] += &LaurentElement::monomial(m.clone(), ParamScalar::from(c.clone()));
        }
        Derivation { images }
    };
    let basis: Vec<Derivation> = sol.kernel.iter().map(|v| to_derivation(v)).collect();

    // A-module generated by the tautological fields y_i ∂_j.
    let mut span = Span::new();
    for g in model.ring_monomials(d) {
        let g = LaurentElement::mono(&g);
        for i in 0..model.n {
            for j in 0..model.n {
                let images: Vec<LaurentElement> = (0..ngen)
                    .map(|x| &(&g * &LaurentElement::var(model.n, i)) * &model.generator(x).derive(j))
                    .collect();
                span.insert(&derivation_vector(&images));
            }
        }
    }
    let generated = span.dim() == basis.len() && basis.iter().all(|b| span.contains(&derivation_vector(&b.images)));
    Ok(DerivationReport {
        degree: d,
        basis,
        generated,
    })
}

/// The Euler derivation `Σ x_j ∂_{x_j}`.
pub fn euler_derivation(model: &VeroneseModel) -> Derivation {
    Derivation {
        images: (0..model.generators.len()).map(|j| model.generator(j)).collect(),
    }
}

/// Whether `tau` lies in the span of `basis`.
pub fn derivation_in_span(tau: &Derivation, basis: &[Derivation]) -> bool {
    let mut span = Span::new();
    for b in basis {
        span.insert(&derivation_vector(&b.images));
    }
    span.contains(&derivation_vector(&tau.images))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NonQuantizable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("non-quantizable")
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    /// `(x₃x₂^{N−1})_(−1)(x₁⊙∂₁) − (x₃x₂^{N−2}x₁)_(−1)(x₂⊙∂₁)`.
    pub element: WeightOneElement,
    /// `(T(x₃x₂^{N−2}))_(−1)x₂`, computed independently.
    pub display: WeightOneElement,
    pub verdict: Verdict,
}

/// The obstruction to quantizing `A_{nN}` for `n ≥ 3`, `N ≥ 2`.
pub fn higher_witness(model: &VeroneseModel) -> Result<Witness> {
    let (n, big) = (model.n, model.order as i32);
    if n < 3 || big < 2 {
        return Err(VeroneseError::Precondition(format!("need n >= 3 and N >= 2, got n={n}, N={big}")));
    }
    let chart = Chart::Affine(n);
    let exp = |a: i32, b: i32, c: i32| {
        let mut e = vec![0; n];
        e[0] = a;
        e[1] = b;
        e[2] = c;
        e
    };
    let alg = model.algebroid();
    let left = alg.mul_weight0(
        &LaurentElement::mono(&exp(0, big - 1, 1)),
        &WeightOneElement::field(chart, 0, LaurentElement::var(n, 0)),
    )?;
    let right = alg.mul_weight0(
        &LaurentElement::mono(&exp(1, big - 2, 1)),
        &WeightOneElement::field(chart, 0, LaurentElement::var(n, 1)),
    )?;
    let element = left.try_sub(&right)?;

    let engine = FreeField::with_max_weight(2);
    let prefix = FreeFieldElement::function(&LaurentElement::mono(&exp(0, big - 2, 1)));
    let t = engine
        .translate(&prefix)
        .map_err(AlgebroidError::from)?;
    let x2 = FreeFieldElement::word(Word::new(exp(0, 1, 0), Vec::<Symbol>::new()));
    let display = engine.nproduct(&t, -1, &x2).map_err(AlgebroidError::from)?;
    let display = WeightOneElement::extract(chart, &display)?;
    if element != display {
        return Err(VeroneseError::NonCancellation(format!("{element} != {display}")));
    }
    if !element.field_part().is_zero() {
        return Err(VeroneseError::NonCancellation(element.to_string()));
    }
    if omega_membership(element.form_part(), model, big)? {
        return Err(VeroneseError::UnexpectedMembership(element.to_string()));
    }
    Ok(Witness {
        element,
        display,
        verdict: Verdict::NonQuantizable,
    })
}

/// `ℤ_N` weight of a pure form, for invariance checks.
pub fn form_zn_weight(w: &OneForm, order: u32) -> ZnWeight {
    w.zn_weight(order)
}
