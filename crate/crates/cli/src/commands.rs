//! Command-line definitions and dispatch.

use std::fmt;
use std::path::PathBuf;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand, ValueEnum};
use vertex_core::algebroid::{gl2_overlap_images, tautological_gl, Algebroid, Chart, LieAlgebraData, WeightOneElement};
use vertex_core::freefield::{AxiomInstance, FreeField, FreeFieldElement};
use vertex_core::geometry::{conformal_glue_check, extend_section, GluingForm};
use vertex_core::laurent::{LaurentElement, OneForm};
use vertex_core::random::Sampler;
use vertex_core::scalar::{ParamScalar, ParamSet};
use vertex_core::veronese::{
    build_model, classify_admissible, derivations, gluing_candidates, higher_witness, omega_membership,
    quantized_gl2, solve_charge_with, ChargeStatus, VeroneseError, VeroneseModel,
};

use crate::config::Config;
use crate::eval::Evaluator;
use crate::expr::{parse_expr, Session};
use crate::report::Report;

/// A problem with the invocation rather than with the mathematics.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl ToString) -> anyhow::Error {
    UsageError(msg.to_string()).into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    #[value(name = "U1")]
    U1,
    #[value(name = "U2")]
    U2,
}

#[derive(Parser, Debug)]
#[command(name = "vxa", version, about = "Exact checks for vertex algebroids on Veronese cones")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// `key = value` file with default bounds.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Declare a parameter, optionally with a value: `k` or `k=3`.
    #[arg(long = "param", global = true, value_name = "NAME[=VALUE]")]
    pub params: Vec<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long = "degree-bound", global = true)]
    pub degree_bound: Option<u32>,
    /// Conformal weight bound.
    #[arg(long, global = true)]
    pub weight: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Randomized vertex algebra axiom checks in the free-field engine.
    Axioms {
        /// Defaults to 200.
        #[arg(long)]
        trials: Option<u32>,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Normal form of an expression, or of `A .(m) B` given as three arguments.
    Nprod {
        #[arg(required = true, num_args = 1..=3, allow_hyphen_values = true)]
        args: Vec<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Solve for the charge of the gluing form.
    Quantize {
        #[arg(long = "N")]
        big_n: u32,
    },
    /// Classify gluing forms that admit a quantization.
    Classify {
        #[arg(long = "N")]
        big_n: u32,
    },
    /// Check that the conformal vector survives the gluing.
    GlueCheck {
        #[arg(long)]
        omega: String,
    },
    /// Extend a section across both charts of the punctured plane.
    Extend {
        section: String,
        #[arg(long)]
        omega: String,
        #[arg(long, value_enum, default_value_t = ChartArg::U1)]
        chart: ChartArg,
    },
    /// Check a current algebra morphism and solve for its levels.
    Morphism {
        /// Tautological gl_n on n-space.
        #[arg(long, conflicts_with = "big_n")]
        n: Option<usize>,
        /// gl_2 on the Veronese cone at charge N+1.
        #[arg(long = "N")]
        big_n: Option<u32>,
    },
    /// Derivations of the Veronese ring in one internal degree.
    Derivations {
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i32,
    },
    /// Obstruction to quantizing higher Veronese rings.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: u32,
    },
    /// Is a one-form (written with T(y_j) for dy_j) a Kähler form of the ring?
    Membership {
        form: String,
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Virasoro relations for the conformal vector of the free fields.
    Virasoro {
        #[arg(long)]
        n: usize,
    },
}

struct Ctx<'a> {
    cli: &'a Cli,
    config: Config,
    echo: String,
}

impl Ctx<'_> {
    fn session(&self, nvars: usize) -> Result<Session> {
        let mut s = Session::new(nvars);
        for spec in &self.cli.params {
            let (name, value) = match spec.split_once('=') {
                Some((n, v)) => (n.trim(), Some(v.trim())),
                None => (spec.trim(), None),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(usage(format!("bad parameter name in `--param {spec}`")));
            }
            let value = match value {
                None => None,
                Some(v) => {
                    let e = parse_expr(v, &Session::new(nvars)).map_err(|e| usage(format!("--param {name}: {e}")))?;
                    let engine = FreeField::with_max_weight(0);
                    let ev = Evaluator {
                        session: &Session::new(nvars),
                        engine: &engine,
                    };
                    match ev.eval(&e)? {
                        crate::eval::Value::Scalar(c) => Some(c),
                        _ => return Err(usage(format!("--param {name}: value must be a number"))),
                    }
                }
            };
            s.declare(name, value);
        }
        Ok(s)
    }

    fn weight(&self, default: u32) -> u32 {
        self.cli.weight.or(self.config.weight).unwrap_or(default)
    }

    fn degree_bound(&self, default: u32) -> u32 {
        self.cli.degree_bound.or(self.config.degree_bound).unwrap_or(default)
    }

    fn gluing_bound(&self, default: u32) -> u32 {
        self.cli.degree_bound.or(self.config.gluing_bound).unwrap_or(default)
    }

    fn seed(&self) -> Result<u64> {
        match self.cli.seed.or(self.config.seed) {
            Some(s) => Ok(s),
            None if self.cli.format == Format::Machine => {
                Err(usage("randomized suites need an explicit --seed in machine format"))
            }
            None => Ok(0),
        }
    }

    fn parse(&self, text: &str, session: &Session) -> Result<crate::expr::Expr> {
        parse_expr(text, session).map_err(|e| usage(format!("in `{text}`: {e}")))
    }

    fn model(&self, n: usize, big_n: u32) -> Result<VeroneseModel> {
        build_model(n, big_n, self.degree_bound(2 * big_n + 2)).map_err(precondition)
    }
}

fn precondition(e: VeroneseError) -> anyhow::Error {
    match e {
        VeroneseError::Precondition(m) => usage(m),
        other => other.into(),
    }
}

/// Runs a parsed command line. `echo` is recorded in the report.
pub fn run(cli: &Cli, echo: String) -> Result<Report> {
    let config = match &cli.config {
        Some(p) => Config::load(p).map_err(|e| usage(format!("{e:#}")))?,
        None => Config::default(),
    };
    let ctx = Ctx { cli, config, echo };
    match &cli.command {
        Command::Axioms { trials, n } => axioms(&ctx, *trials, *n),
        Command::Nprod { args, n } => nprod(&ctx, args, *n),
        Command::Quantize { big_n } => quantize(&ctx, *big_n),
        Command::Classify { big_n } => classify(&ctx, *big_n),
        Command::GlueCheck { omega } => glue_check(&ctx, omega),
        Command::Extend { section, omega, chart } => extend(&ctx, section, omega, *chart),
        Command::Morphism { n, big_n } => morphism(&ctx, *n, *big_n),
        Command::Derivations { big_n, n, degree } => derivation_cmd(&ctx, *big_n, *n, *degree),
        Command::Witness { n, big_n } => witness(&ctx, *n, *big_n),
        Command::Membership { form, big_n, n } => membership(&ctx, form, *big_n, *n),
        Command::Virasoro { n } => virasoro(&ctx, *n),
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn axioms(ctx: &Ctx, trials: Option<u32>, n: usize) -> Result<Report> {
    let trials = trials.or(ctx.config.trials).unwrap_or(200);
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let seed = ctx.seed()?;
    let weight = ctx.weight(2);
    let engine = FreeField::with_max_weight(3 * weight.max(1));
    let mut s = Sampler::new(seed);
    let weights: Vec<u32> = (0..=weight).collect();
    let names = ["jacobi", "skew", "translation", "translation-commutator", "vacuum", "quasi-associativity"];
    let mut defects = [0u32; 6];
    let mut first_failure = None;
    for _ in 0..trials {
        let elt = |s: &mut Sampler| {
            let w = s.pick(&weights);
            s.free_field(n, w, 2)
        };
        let (a, b, c) = (elt(&mut s), elt(&mut s), elt(&mut s));
        let m = s.pick(&[-1i64, 0, 1]);
        let k = s.pick(&[-1i64, 0, 1]);
        let instances = [
            AxiomInstance::Jacobi { a: a.clone(), b: b.clone(), c: c.clone(), m, n: k },
            AxiomInstance::Skew { a: a.clone(), b: b.clone(), n: m },
            AxiomInstance::Translation { a: a.clone(), b: b.clone(), n: m },
            AxiomInstance::TranslationCommutator { a: a.clone(), b: b.clone(), n: m },
            AxiomInstance::VacuumLeft { a: a.clone(), n: m },
            AxiomInstance::QuasiAssoc { a, b, c, n: m.max(0) },
        ];
        for (i, inst) in instances.iter().enumerate() {
            let d = engine.axiom_defect(inst)?;
            if !d.is_zero() {
                defects[i] += 1;
                first_failure.get_or_insert_with(|| format!("{}: {d}", names[i]));
            }
        }
    }
    let total: u32 = defects.iter().sum();
    let mut r = Report::new(ctx.echo.clone(), pass_fail(total == 0), total == 0)
        .text("seed", seed)
        .text("trials", trials)
        .text("weight", weight)
        .text("defects", total)
        .list("by_axiom", names.iter().zip(defects).map(|(n, d)| format!("{n}: {d}")));
    if let Some(f) = first_failure {
        r = r.text("first_failure", f);
    }
    Ok(r)
}

fn nprod(ctx: &Ctx, args: &[String], n: usize) -> Result<Report> {
    let session = ctx.session(n)?;
    let engine = FreeField::with_max_weight(ctx.weight(4));
    let ev = Evaluator {
        session: &session,
        engine: &engine,
    };
    let result = match args {
        [one] => ev.element(&ctx.parse(one, &session)?)?,
        [a, m, b] => {
            let m: i64 = m.trim().parse().map_err(|_| usage(format!("mode `{m}` is not an integer")))?;
            let a = ev.element(&ctx.parse(a, &session)?)?;
            let b = ev.element(&ctx.parse(b, &session)?)?;
            engine.nproduct(&a, m, &b)?
        }
        _ => return Err(usage("nprod takes one expression or `A MODE B`")),
    };
    let weight = match result.weight() {
        Some(w) => w.to_string(),
        None if result.is_zero() => "-".into(),
        None => "mixed".into(),
    };
    Ok(Report::new(ctx.echo.clone(), "pass", true)
        .text("result", &result)
        .text("weight", weight))
}

fn quantize(ctx: &Ctx, big_n: u32) -> Result<Report> {
    let model = ctx.model(2, big_n)?;
    let bound = ctx.gluing_bound(4.max(2 * big_n));
    let res = solve_charge_with(&model, bound).map_err(precondition)?;
    let expected = rat_of(big_n as i64 + 1);
    let ok = match res.status {
        ChargeStatus::Unique => res.charge.as_ref() == Some(&expected),
        ChargeStatus::Unconstrained => big_n == 1,
        ChargeStatus::NoSolution => false,
    };
    let mut r = Report::new(ctx.echo.clone(), res.status.to_string(), ok);
    if let Some(c) = &res.charge {
        r = r.text("charge", c);
    }
    r = r.list("admissible", res.admissible_gluing.iter());
    let rows = res.conditions.iter().map(|c| {
        let eqs: Vec<String> = c.equations.iter().map(|e| format!("{e} = 0")).collect();
        let eqs = if eqs.is_empty() { "none".to_string() } else { eqs.join(", ") };
        format!("{} r={}: defect {} ; conditions {}", c.pair, c.r, c.defect, eqs)
    });
    Ok(r.list("defects", rows))
}

fn rat_of(n: i64) -> vertex_core::scalar::Rational {
    vertex_core::scalar::rat(n)
}

fn classify(ctx: &Ctx, big_n: u32) -> Result<Report> {
    let model = ctx.model(2, big_n)?;
    let bound = ctx.gluing_bound(4.max(2 * big_n));
    let survivors = classify_admissible(&model, bound).map_err(precondition)?;
    let ok = survivors == [GluingForm::basis(1, 1, ParamScalar::one())];
    Ok(Report::new(ctx.echo.clone(), pass_fail(ok), ok)
        .text("bound", bound)
        .list("candidates", gluing_candidates(big_n, bound).iter())
        .list("survivors", survivors.iter()))
}

fn glue_check(ctx: &Ctx, omega: &str) -> Result<Report> {
    let session = ctx.session(2)?;
    let engine = FreeField::with_max_weight(ctx.weight(2).max(2));
    let ev = Evaluator {
        session: &session,
        engine: &engine,
    };
    let om = ev.gluing(&ctx.parse(omega, &session)?).map_err(usage)?;
    let ok = conformal_glue_check(&om, &engine)?;
    Ok(Report::new(ctx.echo.clone(), if ok { "preserved" } else { "broken" }, ok)
        .text("omega", &om)
        .text("conformal_vector", engine.virasoro(2)?))
}

fn swap_laurent(f: &LaurentElement) -> LaurentElement {
    LaurentElement::from_terms(2, f.terms().map(|(e, c)| (vec![e[1], e[0]], c.clone())))
}

fn swap_section(v: &WeightOneElement, chart: Chart) -> WeightOneElement {
    let f = v.field_part();
    let fields = vec![swap_laurent(f.component(1)), swap_laurent(f.component(0))];
    let w = v.form_part();
    let form = OneForm::from_components(vec![swap_laurent(w.component(1)), swap_laurent(w.component(0))]);
    WeightOneElement::new(chart, fields, form)
}

fn extend(ctx: &Ctx, section: &str, omega: &str, chart: ChartArg) -> Result<Report> {
    let session = ctx.session(2)?;
    let engine = FreeField::with_max_weight(ctx.weight(2).max(2));
    let ev = Evaluator {
        session: &session,
        engine: &engine,
    };
    let om = ev.gluing(&ctx.parse(omega, &session)?).map_err(usage)?;
    let on = match chart {
        ChartArg::U1 => Chart::U1,
        ChartArg::U2 => Chart::U2,
    };
    let v = ev.weight_one(&ctx.parse(section, &session)?, on).map_err(usage)?;
    if !vertex_core::geometry::regular_on(&v, on) {
        return Err(usage(format!("{v} is not regular on {on}")));
    }
    // A section on U2 is handled by exchanging the coordinates, which turns
    // c·w[a,b] into c·w[b,a] for the reverse transition.
    let (input, glue) = match chart {
        ChartArg::U1 => (v.clone(), om.clone()),
        ChartArg::U2 => {
            let mut g = GluingForm::zero();
            for (&(a, b), c) in om.terms() {
                g.add(b, a, c.clone());
            }
            (swap_section(&v, Chart::U1), g)
        }
    };
    let ext = extend_section(&input, &glue).map_err(|e| anyhow!(e))?;
    let mut r = Report::new(
        ctx.echo.clone(),
        if ext.is_some() { "extends" } else { "obstructed" },
        true,
    )
    .text("omega", &om)
    .text("chart", on);
    if let Some(ext) = ext {
        let (alpha, u1, u2) = match chart {
            ChartArg::U1 => (WeightOneElement::form(Chart::U1, ext.alpha), ext.section.u1, ext.section.u2),
            ChartArg::U2 => (
                swap_section(&WeightOneElement::form(Chart::U1, ext.alpha), Chart::U2),
                swap_section(&ext.section.u2, Chart::U1),
                swap_section(&ext.section.u1, Chart::U2),
            ),
        };
        r = r.text("correction", alpha).text("on_U1", u1).text("on_U2", u2);
    }
    Ok(r)
}

fn morphism(ctx: &Ctx, n: Option<usize>, big_n: Option<u32>) -> Result<Report> {
    let levels = |rep: &vertex_core::algebroid::MorphismReport| -> Vec<String> {
        rep.levels.iter().map(|(p, v)| format!("{p} = {v}")).collect()
    };
    let failures = |rep: &vertex_core::algebroid::MorphismReport| -> Vec<String> {
        rep.failures
            .iter()
            .map(|f| format!("{}_({}){}: {}", f.a, f.n, f.b, f.defect))
            .collect()
    };
    if let Some(n) = n {
        if n < 1 {
            return Err(usage("--n must be at least 1"));
        }
        let params = ParamSet::new(["k1", "k2"]);
        let lie = LieAlgebraData::gl(n, &params.get("k1")?, &params.get("k2")?);
        let rep = Algebroid::default().morphism_check(&lie, &tautological_gl(n))?;
        return Ok(Report::new(ctx.echo.clone(), pass_fail(rep.passed), rep.passed)
            .text("algebra", format!("gl{n}"))
            .list("levels", levels(&rep))
            .list("failures", failures(&rep)));
    }
    if let Some(big_n) = big_n {
        let model = ctx.model(2, big_n)?;
        return match quantized_gl2(&model) {
            Ok(rep) => Ok(Report::new(ctx.echo.clone(), "pass", true)
                .text("charge", big_n + 1)
                .list("levels", levels(&rep.specialized))
                .list("generic_levels", levels(&rep.generic))
                .list("images", rep.images.iter())),
            Err(VeroneseError::LevelMismatch { expected, found }) => Ok(Report::new(ctx.echo.clone(), "fail", false)
                .text("expected", format!("k1 = {}, k2 = {}", expected.0, expected.1))
                .text("found", format!("k1 = {}, k2 = {}", found.0, found.1))),
            Err(e) => Err(precondition(e)),
        };
    }
    let session = ctx.session(2)?;
    let k = match session.value("k") {
        Some(v) => v.clone(),
        None => ParamScalar::param(&vertex_core::veronese::charge_param()),
    };
    let params = ParamSet::new(["k1", "k2"]);
    let lie = LieAlgebraData::gl(2, &params.get("k1")?, &params.get("k2")?);
    let images = gl2_overlap_images(&k);
    let rep = Algebroid::default().morphism_check(&lie, &images)?;
    Ok(Report::new(ctx.echo.clone(), pass_fail(rep.passed), rep.passed)
        .text("charge", &k)
        .list("levels", levels(&rep))
        .list("failures", failures(&rep))
        .list("images", images.iter()))
}

fn derivation_cmd(ctx: &Ctx, big_n: u32, n: usize, degree: i32) -> Result<Report> {
    let model = ctx.model(n, big_n)?;
    let rep = match derivations(&model, degree) {
        Err(VeroneseError::DegreeBound { degree, bound }) => {
            return Err(usage(format!("degree {degree} exceeds the degree bound {bound}")))
        }
        other => other?,
    };
    let verified = rep.basis.iter().all(|t| t.preserves_relations(&model));
    let ok = verified && rep.generated;
    Ok(Report::new(ctx.echo.clone(), pass_fail(ok), ok)
        .text("degree", degree)
        .text("dimension", rep.basis.len())
        .text("generated_by_gl", rep.generated)
        .text("relations_preserved", verified)
        .list("basis", rep.basis.iter()))
}

fn witness(ctx: &Ctx, n: usize, big_n: u32) -> Result<Report> {
    let model = ctx.model(n, big_n)?;
    let w = higher_witness(&model).map_err(precondition)?;
    Ok(Report::new(ctx.echo.clone(), w.verdict.to_string(), true)
        .text("witness", &w.element)
        .text("display", &w.display)
        .text("in_kahler_image", false))
}

fn membership(ctx: &Ctx, form: &str, big_n: u32, n: usize) -> Result<Report> {
    let session = ctx.session(n)?;
    let engine = FreeField::with_max_weight(ctx.weight(2).max(2));
    let ev = Evaluator {
        session: &session,
        engine: &engine,
    };
    let v = ev.weight_one(&ctx.parse(form, &session)?, Chart::Affine(n)).map_err(usage)?;
    if !v.field_part().is_zero() {
        return Err(usage(format!("{v} has a vector field part")));
    }
    let w = v.form_part();
    let degree = match w.homogeneous_degree() {
        Some(d) => d,
        None if w.is_zero() => big_n as i32,
        None => return Err(usage(format!("{v} is not homogeneous"))),
    };
    let model = ctx.model(n, big_n)?;
    let member = match omega_membership(w, &model, degree) {
        Err(VeroneseError::DegreeBound { degree, bound }) => {
            return Err(usage(format!("degree {degree} exceeds the degree bound {bound}")))
        }
        other => other?,
    };
    Ok(Report::new(ctx.echo.clone(), if member { "member" } else { "not-member" }, true)
        .text("form", &v)
        .text("degree", degree))
}

fn virasoro(ctx: &Ctx, n: usize) -> Result<Report> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let engine = FreeField::with_max_weight(ctx.weight(4).max(4));
    let l = engine.virasoro(n)?;
    let p = |k| engine.nproduct(&l, k, &l);
    let checks = [
        ("L_(0)L = T(L)", p(0)? == engine.translate(&l)?),
        ("L_(1)L = 2L", p(1)? == l.scale(&ParamScalar::int(2))),
        ("L_(2)L = 0", p(2)?.is_zero()),
        (
            "L_(3)L = n*1",
            p(3)? == FreeFieldElement::vacuum(n).scale(&ParamScalar::int(n as i64)),
        ),
    ];
    let ok = checks.iter().all(|(_, b)| *b);
    Ok(Report::new(ctx.echo.clone(), pass_fail(ok), ok)
        .text("L", &l)
        .text("central_charge", 2 * n)
        .list("relations", checks.iter().map(|(s, b)| format!("{s}: {}", if *b { "holds" } else { "fails" }))))
}
