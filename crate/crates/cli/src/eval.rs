//! Evaluation of parsed expressions in the free-field engine.

use anyhow::{anyhow, bail, Result};
use vertex_core::algebroid::{Chart, WeightOneElement};
use vertex_core::freefield::{FreeField, FreeFieldElement, Symbol, Word};
use vertex_core::geometry::GluingForm;
use vertex_core::laurent::LaurentElement;
use vertex_core::scalar::ParamScalar;

use crate::expr::{Expr, Session};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(ParamScalar),
    Element(FreeFieldElement),
    Gluing(GluingForm),
}

impl Value {
    fn into_element(self, n: usize) -> Result<FreeFieldElement> {
        match self {
            Value::Scalar(c) => Ok(FreeFieldElement::vacuum(n).scale(&c)),
            Value::Element(e) => Ok(e),
            Value::Gluing(g) => bail!("gluing form {g} cannot be used as a field"),
        }
    }
}

/// The Laurent function represented by `a`, if every word is a bare prefix.
pub fn as_function(a: &FreeFieldElement) -> Option<LaurentElement> {
    let mut out = LaurentElement::zero(a.nvars());
    for (w, c) in a.terms() {
        if !w.tail().is_empty() {
            return None;
        }
        out += &LaurentElement::monomial(w.prefix().to_vec(), c.clone());
    }
    Some(out)
}

pub struct Evaluator<'a> {
    pub session: &'a Session,
    pub engine: &'a FreeField,
}

impl Evaluator<'_> {
    fn n(&self) -> usize {
        self.session.nvars
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        let n = self.n();
        Ok(match e {
            Expr::Number(r) => Value::Scalar(ParamScalar::from(r.clone())),
            Expr::Param(name) => match self.session.value(name) {
                Some(v) => Value::Scalar(v.clone()),
                None => {
                    let p = self.session.param(name).ok_or_else(|| anyhow!("undeclared parameter `{name}`"))?;
                    Value::Scalar(ParamScalar::param(&p))
                }
            },
            Expr::Coord(i) => Value::Element(FreeFieldElement::coord(n, *i)),
            Expr::Frame(i) => Value::Element(FreeFieldElement::frame(n, *i)),
            Expr::Monomial(exp) => Value::Element(FreeFieldElement::function(&LaurentElement::mono(exp))),
            Expr::T(inner) => {
                let a = self.eval(inner)?.into_element(n)?;
                Value::Element(self.engine.translate(&a)?)
            }
            Expr::Gluing(a, b) => Value::Gluing(GluingForm::basis(*a, *b, ParamScalar::one())),
            Expr::Sum(terms) => {
                let mut acc: Option<Value> = None;
                for (neg, t) in terms {
                    let mut v = self.eval(t)?;
                    if *neg {
                        v = self.scale(v, &ParamScalar::int(-1));
                    }
                    acc = Some(match acc {
                        None => v,
                        Some(a) => self.add(a, v)?,
                    });
                }
                acc.expect("sums are nonempty")
            }
            Expr::Product(factors) => {
                // Right-nested: a*b*c = a_(-1)(b_(-1)c).
                let mut acc = self.eval(factors.last().expect("products are nonempty"))?;
                for f in factors.iter().rev().skip(1) {
                    acc = self.mul(self.eval(f)?, acc)?;
                }
                acc
            }
            Expr::Pow(base, p) => self.pow(self.eval(base)?, *p)?,
            Expr::NProduct(a, m, b) => {
                let a = self.eval(a)?.into_element(n)?;
                let b = self.eval(b)?.into_element(n)?;
                Value::Element(self.engine.nproduct(&a, *m, &b)?)
            }
        })
    }

    fn scale(&self, v: Value, c: &ParamScalar) -> Value {
        match v {
            Value::Scalar(s) => Value::Scalar(&s * c),
            Value::Element(e) => Value::Element(e.scale(c)),
            Value::Gluing(g) => Value::Gluing(g.scale(c)),
        }
    }

    fn add(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
            (Value::Gluing(x), Value::Gluing(y)) => {
                let mut g = x;
                for (&(i, j), c) in y.terms() {
                    g.add(i, j, c.clone());
                }
                Value::Gluing(g)
            }
            (Value::Gluing(_), _) | (_, Value::Gluing(_)) => bail!("cannot add a gluing form to a field"),
            (x, y) => Value::Element(&x.into_element(self.n())? + &y.into_element(self.n())?),
        })
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), other) | (other, Value::Scalar(x)) => self.scale(other, &x),
            (Value::Gluing(_), _) | (_, Value::Gluing(_)) => bail!("gluing forms can only be scaled"),
            (Value::Element(x), Value::Element(y)) => match (as_function(&x), as_function(&y)) {
                (Some(f), Some(g)) => Value::Element(FreeFieldElement::function(&(&f * &g))),
                _ => Value::Element(self.engine.nproduct(&x, -1, &y)?),
            },
        })
    }

    fn pow(&self, base: Value, p: i32) -> Result<Value> {
        match base {
            Value::Scalar(c) => {
                if p >= 0 {
                    Ok(Value::Scalar(c.pow(p as u32)))
                } else {
                    let inv = ParamScalar::one().checked_div(&c)?;
                    Ok(Value::Scalar(inv.pow(p.unsigned_abs())))
                }
            }
            Value::Gluing(_) => bail!("gluing forms cannot be raised to a power"),
            Value::Element(e) => {
                if let Some(f) = as_function(&e) {
                    let r = f
                        .pow(p)
                        .ok_or_else(|| anyhow!("only monomials can be raised to a negative power, got {f}"))?;
                    return Ok(Value::Element(FreeFieldElement::function(&r)));
                }
                if p < 0 {
                    bail!("negative power of a non-function {e}");
                }
                let mut acc = Value::Element(FreeFieldElement::vacuum(self.n()));
                for _ in 0..p {
                    acc = self.mul(Value::Element(e.clone()), acc)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn element(&self, e: &Expr) -> Result<FreeFieldElement> {
        self.eval(e)?.into_element(self.n())
    }

    pub fn gluing(&self, e: &Expr) -> Result<GluingForm> {
        match self.eval(e)? {
            Value::Gluing(g) => Ok(g),
            Value::Scalar(c) if c.is_zero() => Ok(GluingForm::zero()),
            other => bail!("expected a combination of w[a,b], got {other:?}"),
        }
    }

    /// A weight-one section `Σ f_i⊙∂_i + Σ g_j T(y_j)` on `chart`.
    pub fn weight_one(&self, e: &Expr, chart: Chart) -> Result<WeightOneElement> {
        let a = self.element(e)?;
        for (w, _) in a.terms() {
            if let [Symbol::Frame { order: 0, .. }] | [Symbol::Coord { order: 1, .. }] = w.tail() {
                continue;
            }
            bail!("`{}` is not of the form f*d_i or g*T(y_j)", Word::to_string(w));
        }
        Ok(WeightOneElement::extract(chart, &a)?)
    }
}
