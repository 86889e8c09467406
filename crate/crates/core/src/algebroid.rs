//! Weight 0/1 vertex algebroid on a chart: elements `Σ f_i⊙∂_i + ω`,
//! closed-form product rules, symbols, and morphism checks for Lie algebra
//! currents.
//!
//! Every rule here is a closed form; [`Algebroid`] recomputes products in
//! the free-field oracle and refuses to answer when the two disagree.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::freefield::{FreeField, FreeFieldElement, FreeFieldError, Symbol, Word};
use crate::laurent::{bracket, de_rham, iota, lie, LaurentElement, OneForm, VectorField};
use crate::scalar::{solve_linear_system, Param, ParamScalar, Rational, ScalarError, SolutionStatus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebroidError {
    #[error("chart mismatch: {0} vs {1}")]
    ChartMismatch(Chart, Chart),
    #[error("rule/oracle divergence in {context}: rule gives {rule}, oracle gives {oracle}")]
    RuleOracleDivergence {
        context: String,
        rule: String,
        oracle: String,
    },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("product index {0} is not 0 or 1")]
    UnsupportedIndex(i64),
    #[error("not a weight-one element: {0}")]
    NotWeightOne(String),
    #[error(transparent)]
    FreeField(#[from] FreeFieldError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

type Result<T> = std::result::Result<T, AlgebroidError>;

/// Where an element lives. `Affine(n)` is ℂⁿ; the other three are the charts
/// of the punctured plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    Affine(usize),
    /// `y₁ ≠ 0`.
    U1,
    /// `y₂ ≠ 0`.
    U2,
    /// Both coordinates invertible.
    Overlap,
}

impl Chart {
    pub fn nvars(&self) -> usize {
        match *self {
            Chart::Affine(n) => n,
            _ => 2,
        }
    }

    /// Whether `y_{i+1}` may carry negative exponents.
    pub fn inverts(&self, i: usize) -> bool {
        match *self {
            Chart::Affine(_) => false,
            Chart::U1 => i == 0,
            Chart::U2 => i == 1,
            Chart::Overlap => true,
        }
    }

    pub fn permits(&self, f: &LaurentElement) -> bool {
        (0..f.nvars()).all(|i| self.inverts(i) || f.min_exponent(i).map_or(true, |m| m >= 0))
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chart::Affine(n) => write!(f, "A{n}"),
            Chart::U1 => f.write_str("U1"),
            Chart::U2 => f.write_str("U2"),
            Chart::Overlap => f.write_str("U12"),
        }
    }
}

/// `Σ f_i⊙∂_i + ω`, each `f_i⊙∂_i` a single application `(f_i)_(−1)∂_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightOneElement {
    chart: Chart,
    fields: Vec<LaurentElement>,
    form: OneForm,
}

impl WeightOneElement {
    pub fn zero(chart: Chart) -> Self {
        let n = chart.nvars();
        WeightOneElement {
            chart,
            fields: vec![LaurentElement::zero(n); n],
            form: OneForm::zero(n),
        }
    }

    pub fn new(chart: Chart, fields: Vec<LaurentElement>, form: OneForm) -> Self {
        let n = chart.nvars();
        assert_eq!(fields.len(), n, "field component count");
        assert_eq!(form.nvars(), n, "form component count");
        WeightOneElement { chart, fields, form }
    }

    /// `f⊙∂_i`.
    pub fn field(chart: Chart, i: usize, f: LaurentElement) -> Self {
        let mut v = WeightOneElement::zero(chart);
        v.fields[i] = f;
        v
    }

    pub fn from_vector_field(chart: Chart, x: &VectorField) -> Self {
        WeightOneElement::new(chart, x.components().to_vec(), OneForm::zero(chart.nvars()))
    }

    pub fn form(chart: Chart, w: OneForm) -> Self {
        let mut v = WeightOneElement::zero(chart);
        v.form = w;
        v
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn nvars(&self) -> usize {
        self.fields.len()
    }

    pub fn field_part(&self) -> VectorField {
        VectorField::from_components(self.fields.clone())
    }

    pub fn form_part(&self) -> &OneForm {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.fields.iter().all(LaurentElement::is_zero) && self.form.is_zero()
    }

    pub fn with_chart(&self, chart: Chart) -> Self {
        assert_eq!(chart.nvars(), self.nvars());
        WeightOneElement {
            chart,
            ..self.clone()
        }
    }

    fn same_chart(&self, other: &Self) -> Result<()> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(AlgebroidError::ChartMismatch(self.chart, other.chart))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        Ok(WeightOneElement {
            chart: self.chart,
            fields: self.fields.iter().zip(&other.fields).map(|(a, b)| a + b).collect(),
            form: &self.form + &other.form,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&ParamScalar::int(-1)))
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        WeightOneElement {
            chart: self.chart,
            fields: self.fields.iter().map(|f| f.scale(c)).collect(),
            form: self.form.scale(c),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Self {
        WeightOneElement {
            chart: self.chart,
            fields: self.fields.iter().map(|g| g.map_coeffs(&f)).collect(),
            form: self.form.map(|g| g.map_coeffs(&f)),
        }
    }

    /// Image in the free-field realization: `f⊙∂_i ↦ F⊙∂_i`, `g dy_j ↦ g⊙T(y_j)`.
    pub fn embed(&self) -> FreeFieldElement {
        let n = self.nvars();
        let mut out = FreeFieldElement::zero(n);
        for (i, f) in self.fields.iter().enumerate() {
            for (e, c) in f.terms() {
                out.add_term(Word::new(e.clone(), vec![Symbol::Frame { var: i, order: 0 }]), c.clone());
            }
        }
        for (j, g) in self.form.components().iter().enumerate() {
            for (e, c) in g.terms() {
                out.add_term(Word::new(e.clone(), vec![Symbol::Coord { var: j, order: 1 }]), c.clone());
            }
        }
        out
    }

    /// Inverse of [`WeightOneElement::embed`].
    pub fn extract(chart: Chart, a: &FreeFieldElement) -> Result<Self> {
        let n = chart.nvars();
        let mut fields = vec![LaurentElement::zero(n); n];
        let mut form = vec![LaurentElement::zero(n); n];
        for (w, c) in a.terms() {
            let mono = LaurentElement::monomial(w.prefix().to_vec(), c.clone());
            match w.tail() {
                [Symbol::Frame { var, order: 0 }] => fields[*var] += &mono,
                [Symbol::Coord { var, order: 1 }] => form[*var] += &mono,
                _ => return Err(AlgebroidError::NotWeightOne(a.to_string())),
            }
        }
        Ok(WeightOneElement::new(chart, fields, OneForm::from_components(form)))
    }
}

impl fmt::Display for WeightOneElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.embed().fmt(f)
    }
}

/// Result of `u_(n)v` for weight-one `u, v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VProduct {
    WeightOne(WeightOneElement),
    Function(LaurentElement),
}

impl fmt::Display for VProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VProduct::WeightOne(v) => v.fmt(f),
            VProduct::Function(g) => g.fmt(f),
        }
    }
}

/// `f_(−1)v`: `f_(−1)(g⊙∂_i) = (fg)⊙∂_i + ∂_i(g)df + ∂_i(f)dg`, and `f·ω`
/// on the form part.
pub fn mul_weight0(f: &LaurentElement, v: &WeightOneElement) -> WeightOneElement {
    let n = v.nvars();
    let df = de_rham(f);
    let mut form = v.form.mul_fn(f);
    let mut fields = Vec::with_capacity(n);
    for (i, g) in v.fields.iter().enumerate() {
        fields.push(f * g);
        if g.is_zero() {
            continue;
        }
        form = &form + &df.mul_fn(&g.derive(i));
        form = &form + &de_rham(g).mul_fn(&f.derive(i));
    }
    WeightOneElement::new(v.chart, fields, form)
}

fn dd(f: &LaurentElement, i: usize, j: usize) -> LaurentElement {
    f.derive(i).derive(j)
}

/// Closed-form `u_(1)v`.
fn rule1(u: &WeightOneElement, v: &WeightOneElement) -> LaurentElement {
    let n = u.nvars();
    let mut out = LaurentElement::zero(n);
    for (i, f) in u.fields.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        for (j, g) in v.fields.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            // (f⊙∂_i)_(1)(g⊙∂_j) = −f ∂_j∂_i g − g ∂_i∂_j f − ∂_i g ∂_j f
            out -= &(f * &dd(g, i, j));
            out -= &(g * &dd(f, i, j));
            out -= &(&g.derive(i) * &f.derive(j));
        }
    }
    out += &iota(&u.field_part(), &v.form);
    out += &iota(&v.field_part(), &u.form);
    out
}

/// Closed-form `u_(0)v`.
fn rule0(u: &WeightOneElement, v: &WeightOneElement) -> WeightOneElement {
    let n = u.nvars();
    let (tu, tv) = (u.field_part(), v.field_part());
    let mut form = OneForm::zero(n);
    for (i, f) in u.fields.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        for (j, g) in v.fields.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            // (f⊙∂_i)_(0)(g⊙∂_j) has form part −∂_i(g)·d(∂_j f) − d(g·∂_i∂_j f)
            form = &form - &de_rham(&f.derive(j)).mul_fn(&g.derive(i));
            form = &form - &de_rham(&(g * &dd(f, i, j)));
        }
    }
    // τ_(0)η = Lie_τ η and ω_(0)ξ = −Lie_ξ ω + d(ι_ξ ω)
    form = &form + &lie(&tu, &v.form);
    form = &form - &lie(&tv, &u.form);
    form = &form + &de_rham(&iota(&tv, &u.form));
    WeightOneElement::new(u.chart, bracket(&tu, &tv).components().to_vec(), form)
}

/// `v_(0)f = π(v)(f)`.
pub fn act_on_function(v: &WeightOneElement, f: &LaurentElement) -> LaurentElement {
    v.field_part().apply(f)
}

/// `f_(0)v = −π(v)(f)`, by skew-symmetry.
pub fn function_act(f: &LaurentElement, v: &WeightOneElement) -> LaurentElement {
    -act_on_function(v, f)
}

/// `π(v)` together with the form part.
pub fn symbol(v: &WeightOneElement) -> (VectorField, OneForm) {
    (v.field_part(), v.form.clone())
}

/// The classical Courant product (no quantum corrections).
pub fn classical_product(u: &WeightOneElement, n: i64, v: &WeightOneElement) -> Result<VProduct> {
    u.same_chart(v)?;
    let (tu, tv) = (u.field_part(), v.field_part());
    match n {
        0 => {
            let mut form = lie(&tu, &v.form);
            form = &form - &lie(&tv, &u.form);
            form = &form + &de_rham(&iota(&tv, &u.form));
            Ok(VProduct::WeightOne(WeightOneElement::new(
                u.chart,
                bracket(&tu, &tv).components().to_vec(),
                form,
            )))
        }
        1 => Ok(VProduct::Function(&iota(&tu, &v.form) + &iota(&tv, &u.form))),
        _ => Err(AlgebroidError::UnsupportedIndex(n)),
    }
}

/// Quantum minus classical product, one filtration step down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicalDefect {
    /// `n = 0`: a one-form.
    Form(OneForm),
    /// `n = 1`: a function.
    Function(LaurentElement),
}

/// Whether products are recomputed in the free-field oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleCheck {
    Always,
    Off,
}

/// Product engine for weight-one elements.
#[derive(Clone, Copy, Debug)]
pub struct Algebroid {
    oracle: FreeField,
    check: OracleCheck,
}

impl Default for Algebroid {
    fn default() -> Self {
        Algebroid::new(OracleCheck::Always)
    }
}

impl Algebroid {
    pub fn new(check: OracleCheck) -> Self {
        Algebroid {
            oracle: FreeField::with_max_weight(2),
            check,
        }
    }

    pub fn unchecked() -> Self {
        Algebroid::new(OracleCheck::Off)
    }

    pub fn oracle(&self) -> &FreeField {
        &self.oracle
    }

    /// `u_(n)v` computed by the free-field oracle alone.
    pub fn oracle_product(&self, u: &WeightOneElement, n: i64, v: &WeightOneElement) -> Result<VProduct> {
        u.same_chart(v)?;
        let p = self.oracle.nproduct(&u.embed(), n, &v.embed())?;
        match n {
            0 => Ok(VProduct::WeightOne(WeightOneElement::extract(u.chart, &p)?)),
            1 => {
                let mut f = LaurentElement::zero(u.nvars());
                for (w, c) in p.terms() {
                    if !w.tail().is_empty() {
                        return Err(AlgebroidError::InvariantViolation(format!("weight-zero product has {w}")));
                    }
                    f += &LaurentElement::monomial(w.prefix().to_vec(), c.clone());
                }
                Ok(VProduct::Function(f))
            }
            _ => Err(AlgebroidError::UnsupportedIndex(n)),
        }
    }

    pub fn vprod(&self, u: &WeightOneElement, n: i64, v: &WeightOneElement) -> Result<VProduct> {
        u.same_chart(v)?;
        let rule = match n {
            0 => VProduct::WeightOne(rule0(u, v)),
            1 => VProduct::Function(rule1(u, v)),
            _ => return Err(AlgebroidError::UnsupportedIndex(n)),
        };
        if self.check == OracleCheck::Always {
            let oracle = self.oracle_product(u, n, v)?;
            if oracle != rule {
                return Err(AlgebroidError::RuleOracleDivergence {
                    context: format!("({u})_({n})({v})"),
                    rule: rule.to_string(),
                    oracle: oracle.to_string(),
                });
            }
        }
        Ok(rule)
    }

    pub fn vprod0(&self, u: &WeightOneElement, v: &WeightOneElement) -> Result<WeightOneElement> {
        match self.vprod(u, 0, v)? {
            VProduct::WeightOne(w) => Ok(w),
            VProduct::Function(_) => unreachable!(),
        }
    }

    pub fn vprod1(&self, u: &WeightOneElement, v: &WeightOneElement) -> Result<LaurentElement> {
        match self.vprod(u, 1, v)? {
            VProduct::Function(f) => Ok(f),
            VProduct::WeightOne(_) => unreachable!(),
        }
    }

    /// `f_(−1)v`, optionally checked against the oracle.
    pub fn mul_weight0(&self, f: &LaurentElement, v: &WeightOneElement) -> Result<WeightOneElement> {
        let rule = mul_weight0(f, v);
        if self.check == OracleCheck::Always {
            let p = self.oracle.nproduct(&FreeFieldElement::function(f), -1, &v.embed())?;
            let oracle = WeightOneElement::extract(v.chart, &p)?;
            if oracle != rule {
                return Err(AlgebroidError::RuleOracleDivergence {
                    context: format!("({f})_(-1)({v})"),
                    rule: rule.to_string(),
                    oracle: oracle.to_string(),
                });
            }
        }
        Ok(rule)
    }

    pub fn classical_defect(&self, u: &WeightOneElement, v: &WeightOneElement, n: i64) -> Result<ClassicalDefect> {
        let quantum = self.vprod(u, n, v)?;
        let classical = classical_product(u, n, v)?;
        match (quantum, classical) {
            (VProduct::WeightOne(q), VProduct::WeightOne(c)) => {
                let d = q.try_sub(&c)?;
                if !d.field_part().is_zero() {
                    return Err(AlgebroidError::InvariantViolation(format!(
                        "quantum and classical brackets differ in the field part: {d}"
                    )));
                }
                Ok(ClassicalDefect::Form(d.form))
            }
            (VProduct::Function(q), VProduct::Function(c)) => Ok(ClassicalDefect::Function(&q - &c)),
            _ => unreachable!(),
        }
    }

    /// Checks that `images` define a vertex algebroid morphism from the
    /// current algebra of `lie`, solving for the unknown levels.
    pub fn morphism_check(&self, lie: &LieAlgebraData, images: &[WeightOneElement]) -> Result<MorphismReport> {
        assert_eq!(images.len(), lie.dim(), "one image per basis element");
        let mut failures = Vec::new();
        let chart = images.first().map(|v| v.chart).unwrap_or(Chart::Affine(0));
        for v in images {
            if v.chart != chart {
                return Err(AlgebroidError::ChartMismatch(chart, v.chart));
            }
        }
        let dim = lie.dim();
        for a in 0..dim {
            for b in 0..dim {
                let lhs = self.vprod0(&images[a], &images[b])?;
                let mut rhs = WeightOneElement::zero(chart);
                for (c, coef) in lie.bracket(a, b) {
                    rhs = rhs.try_add(&images[*c].scale(coef))?;
                }
                let defect = lhs.try_sub(&rhs)?;
                if !defect.is_zero() {
                    failures.push(MorphismFailure {
                        a: lie.names[a].clone(),
                        b: lie.names[b].clone(),
                        n: 0,
                        defect: defect.to_string(),
                    });
                }
            }
        }
        // Pairing equations, added pair by pair so that an inconsistent pair
        // is reported rather than poisoning the whole system.
        let mut accepted: Vec<ParamScalar> = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                let pairing = self.vprod1(&images[a], &images[b])?;
                let target = LaurentElement::constant(pairing.nvars(), lie.form[a][b].clone());
                let defect = &pairing - &target;
                let eqs: Vec<ParamScalar> = defect.terms().map(|(_, c)| c.clone()).collect();
                if eqs.is_empty() {
                    continue;
                }
                let mut trial = accepted.clone();
                trial.extend(eqs.iter().cloned());
                let sol = solve_linear_system(&trial, &lie.levels)?;
                if sol.status == SolutionStatus::Inconsistent {
                    failures.push(MorphismFailure {
                        a: lie.names[a].clone(),
                        b: lie.names[b].clone(),
                        n: 1,
                        defect: defect.to_string(),
                    });
                } else {
                    accepted = trial;
                }
            }
        }
        let sol = solve_linear_system(&accepted, &lie.levels)?;
        let levels = lie
            .levels
            .iter()
            .filter_map(|p| sol.assignment.get(p).map(|v| (p.clone(), v.clone())))
            .collect();
        Ok(MorphismReport {
            passed: failures.is_empty(),
            levels,
            failures,
        })
    }
}

/// A finite-dimensional Lie algebra with structure constants and a
/// (possibly parametric) bilinear form on the basis.
#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    pub names: Vec<String>,
    /// `[e_a, e_b] = Σ c·e_c`.
    pub brackets: BTreeMap<(usize, usize), Vec<(usize, ParamScalar)>>,
    pub form: Vec<Vec<ParamScalar>>,
    /// Parameters of `form` to be solved for.
    pub levels: Vec<Param>,
}

/// The normalization of the identity current: `(I, I) = k₂·N`.
pub const IDENTITY_CURRENT_NORMALIZATION: &str = "(I,I) = k2*N";

impl LieAlgebraData {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, ParamScalar)] {
        self.brackets.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `gl_n` with basis `E_ij` (index `i*n + j`) and the level-(k₁, k₂) form
    /// `(E_ij, E_kl) = k₁ δ_jk δ_il − (k₁ − k₂) δ_ij δ_kl / n`.
    pub fn gl(n: usize, k1: &Param, k2: &Param) -> Self {
        let idx = |i: usize, j: usize| i * n + j;
        let mut names = Vec::new();
        for i in 0..n {
            for j in 0..n {
                names.push(format!("E{}{}", i + 1, j + 1));
            }
        }
        let mut brackets: BTreeMap<(usize, usize), Vec<(usize, ParamScalar)>> = BTreeMap::new();
        let (pk1, pk2) = (ParamScalar::param(k1), ParamScalar::param(k2));
        let inv_n = ParamScalar::from(Rational::new(1.into(), (n as i64).into()));
        let mut form = vec![vec![ParamScalar::zero(); n * n]; n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut terms = BTreeMap::<usize, ParamScalar>::new();
                        if j == k {
                            *terms.entry(idx(i, l)).or_default() += ParamScalar::one();
                        }
                        if l == i {
                            *terms.entry(idx(k, j)).or_default() -= &ParamScalar::one();
                        }
                        let terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                        if !terms.is_empty() {
                            brackets.insert((idx(i, j), idx(k, l)), terms);
                        }
                        let mut v = ParamScalar::zero();
                        if j == k && i == l {
                            v += pk1.clone();
                        }
                        if i == j && k == l {
                            v -= &(&(&pk1 - &pk2) * &inv_n);
                        }
                        form[idx(i, j)][idx(k, l)] = v;
                    }
                }
            }
        }
        LieAlgebraData {
            names,
            brackets,
            form,
            levels: vec![k1.clone(), k2.clone()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismFailure {
    pub a: String,
    pub b: String,
    pub n: i64,
    pub defect: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub passed: bool,
    /// Levels pinned by the pairing equations.
    pub levels: Vec<(Param, ParamScalar)>,
    pub failures: Vec<MorphismFailure>,
}

impl MorphismReport {
    pub fn level(&self, name: &str) -> Option<&ParamScalar> {
        self.levels.iter().find(|(p, _)| p.name() == name).map(|(_, v)| v)
    }
}

/// Tautological images `E_ij ↦ y_i⊙∂_j` on ℂⁿ.
pub fn tautological_gl(n: usize) -> Vec<WeightOneElement> {
    let chart = Chart::Affine(n);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(WeightOneElement::field(chart, j, LaurentElement::var(n, i)));
        }
    }
    out
}

/// The `gl₂` currents on the overlap chart for gluing `k·ω₁₁`:
/// `E₁₂ = y₁∂₂`, `E₂₁ = y₂∂₁ − k y₁⁻¹dy₂`, `E₁₁ = y₁∂₁`, `E₂₂ = y₂∂₂ + k y₁⁻¹dy₁`,
/// in the basis order `E11, E12, E21, E22`.
pub fn gl2_overlap_images(k: &ParamScalar) -> Vec<WeightOneElement> {
    let chart = Chart::Overlap;
    let y = |a: i32, b: i32| LaurentElement::mono(&[a, b]);
    let e11 = WeightOneElement::field(chart, 0, y(1, 0));
    let e12 = WeightOneElement::field(chart, 1, y(1, 0));
    let e21 = WeightOneElement::field(chart, 0, y(0, 1))
        .try_add(&WeightOneElement::form(chart, OneForm::basis(2, 1, y(-1, 0).scale(&-k.clone()))))
        .unwrap();
    let e22 = WeightOneElement::field(chart, 1, y(0, 1))
        .try_add(&WeightOneElement::form(chart, OneForm::basis(2, 0, y(-1, 0).scale(k))))
        .unwrap();
    vec![e11, e12, e21, e22]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParamSet;

    fn y(e: &[i32]) -> LaurentElement {
        LaurentElement::mono(e)
    }

    #[test]
    fn mul_weight0_examples() {
        let alg = Algebroid::default();
        let c = Chart::Affine(2);
        let v = WeightOneElement::field(c, 0, y(&[0, 1]));
        let got = alg.mul_weight0(&y(&[1, 0]), &v).unwrap();
        let expected = WeightOneElement::new(
            c,
            vec![y(&[1, 1]), LaurentElement::zero(2)],
            OneForm::basis(2, 1, LaurentElement::one(2)),
        );
        assert_eq!(got, expected);
        assert_eq!(alg.mul_weight0(&LaurentElement::one(2), &v).unwrap(), v);
        let o = Chart::U1;
        let dy1 = WeightOneElement::form(o, OneForm::basis(2, 0, LaurentElement::one(2)));
        assert_eq!(
            alg.mul_weight0(&y(&[-1, 0]), &dy1).unwrap(),
            WeightOneElement::form(o, OneForm::basis(2, 0, y(&[-1, 0])))
        );
    }

    #[test]
    fn vprod_examples() {
        let alg = Algebroid::default();
        let c = Chart::Affine(2);
        let y1d2 = WeightOneElement::field(c, 1, y(&[1, 0]));
        let y2d1 = WeightOneElement::field(c, 0, y(&[0, 1]));
        assert_eq!(alg.vprod1(&y1d2, &y2d1).unwrap(), -LaurentElement::one(2));
        let d1 = WeightOneElement::field(c, 0, LaurentElement::one(2));
        let d2 = WeightOneElement::field(c, 1, LaurentElement::one(2));
        assert!(alg.vprod1(&d1, &d2).unwrap().is_zero());
        assert_eq!(alg.vprod0(&d1, &y1d2).unwrap(), d2);
    }

    #[test]
    fn classical_defect_examples() {
        let alg = Algebroid::default();
        let c = Chart::Affine(2);
        let y1d2 = WeightOneElement::field(c, 1, y(&[1, 0]));
        let y2d1 = WeightOneElement::field(c, 0, y(&[0, 1]));
        assert_eq!(
            alg.classical_defect(&y1d2, &y2d1, 1).unwrap(),
            ClassicalDefect::Function(-LaurentElement::one(2))
        );
        let d1 = WeightOneElement::field(c, 0, LaurentElement::one(2));
        let d2 = WeightOneElement::field(c, 1, LaurentElement::one(2));
        assert_eq!(
            alg.classical_defect(&d1, &d2, 0).unwrap(),
            ClassicalDefect::Form(OneForm::zero(2))
        );
    }

    #[test]
    fn symbol_of_e21() {
        let ps = ParamSet::new(["k"]);
        let k = ParamScalar::param(&ps.get("k").unwrap());
        let e21 = gl2_overlap_images(&k)[2].clone();
        let (x, w) = symbol(&e21);
        assert_eq!(x, VectorField::basis(2, 0, y(&[0, 1])));
        assert_eq!(w, OneForm::basis(2, 1, y(&[-1, 0]).scale(&-k)));
    }

    #[test]
    fn gl_levels() {
        let ps = ParamSet::new(["k", "k1", "k2"]);
        let (k, k1, k2) = (ps.get("k").unwrap(), ps.get("k1").unwrap(), ps.get("k2").unwrap());
        let alg = Algebroid::default();
        for n in 2..=3 {
            let report = alg.morphism_check(&LieAlgebraData::gl(n, &k1, &k2), &tautological_gl(n)).unwrap();
            assert!(report.passed, "{report:?}");
            assert_eq!(report.level("k1"), Some(&ParamScalar::int(-1)));
            assert_eq!(report.level("k2"), Some(&ParamScalar::int(-1)));
        }
        let pk = ParamScalar::param(&k);
        let report = alg
            .morphism_check(&LieAlgebraData::gl(2, &k1, &k2), &gl2_overlap_images(&pk))
            .unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.level("k1"), Some(&(-&pk - ParamScalar::one())));
        assert_eq!(report.level("k2"), Some(&(&pk - &ParamScalar::one())));
    }

    #[test]
    fn identity_current_pairing() {
        let alg = Algebroid::default();
        let c = Chart::Affine(2);
        let i = WeightOneElement::field(c, 0, y(&[1, 0]))
            .try_add(&WeightOneElement::field(c, 1, y(&[0, 1])))
            .unwrap();
        assert_eq!(alg.vprod1(&i, &i).unwrap(), LaurentElement::constant(2, ParamScalar::int(-2)));
    }
}
