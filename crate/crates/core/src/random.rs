//! Seeded generators of random test inputs, shared by the property suites and
//! the command-line `axioms` runner.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebroid::{Chart, WeightOneElement};
use crate::freefield::{FreeFieldElement, Symbol, Word};
use crate::geometry::GluingForm;
use crate::laurent::{LaurentElement, OneForm, VectorField};
use crate::scalar::{ratio, ParamScalar};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A nonzero small rational.
    pub fn coefficient(&mut self) -> ParamScalar {
        let num = *[-3, -2, -1, 1, 2, 3].choose(&mut self.rng).unwrap();
        let den = if self.rng.gen_bool(0.2) { 2 } else { 1 };
        ParamScalar::from(ratio(num, den))
    }

    fn exponent(&mut self, lo: i32, hi: i32) -> i32 {
        self.rng.gen_range(lo..=hi)
    }

    /// A sum of up to `max_terms` monomials, exponent of `y_i` drawn from
    /// `ranges[i]`.
    pub fn laurent(&mut self, ranges: &[(i32, i32)], max_terms: usize) -> LaurentElement {
        let n = ranges.len();
        let terms = self.rng.gen_range(1..=max_terms);
        let mut out = LaurentElement::zero(n);
        for _ in 0..terms {
            let e: Vec<i32> = ranges.iter().map(|&(lo, hi)| self.exponent(lo, hi)).collect();
            out += &LaurentElement::monomial(e, self.coefficient());
        }
        out
    }

    /// A polynomial of total degree at most `max_degree`.
    pub fn polynomial(&mut self, n: usize, max_degree: i32, max_terms: usize) -> LaurentElement {
        let terms = self.rng.gen_range(1..=max_terms);
        let mut out = LaurentElement::zero(n);
        for _ in 0..terms {
            let d = self.rng.gen_range(0..=max_degree);
            out += &LaurentElement::monomial(self.composition(n, d), self.coefficient());
        }
        out
    }

    /// A random exponent vector with entries summing to `d`.
    fn composition(&mut self, n: usize, d: i32) -> Vec<i32> {
        let mut e = vec![0; n];
        for _ in 0..d {
            e[self.rng.gen_range(0..n)] += 1;
        }
        e
    }

    /// Exponent ranges for functions regular on `chart`.
    pub fn chart_ranges(chart: Chart) -> Vec<(i32, i32)> {
        match chart {
            Chart::Affine(n) => vec![(0, 2); n],
            Chart::U1 => vec![(-2, 2), (0, 2)],
            Chart::U2 => vec![(0, 2), (-2, 2)],
            Chart::Overlap => vec![(-2, 2), (-2, 2)],
        }
    }

    /// A function on `chart`; on affine charts a polynomial of degree ≤ 3.
    pub fn chart_function(&mut self, chart: Chart, max_terms: usize) -> LaurentElement {
        match chart {
            Chart::Affine(n) => self.polynomial(n, 3, max_terms),
            c => self.laurent(&Self::chart_ranges(c), max_terms),
        }
    }

    fn sparse(&mut self, chart: Chart) -> Vec<LaurentElement> {
        let n = chart.nvars();
        (0..n)
            .map(|_| {
                if self.rng.gen_bool(0.5) {
                    self.chart_function(chart, 2)
                } else {
                    LaurentElement::zero(n)
                }
            })
            .collect()
    }

    pub fn vector_field(&mut self, chart: Chart) -> VectorField {
        VectorField::from_components(self.sparse(chart))
    }

    pub fn one_form(&mut self, chart: Chart) -> OneForm {
        OneForm::from_components(self.sparse(chart))
    }

    pub fn weight_one(&mut self, chart: Chart) -> WeightOneElement {
        let fields = self.vector_field(chart);
        let form = self.one_form(chart);
        WeightOneElement::new(chart, fields.components().to_vec(), form)
    }

    /// A pure field `f⊙∂_i` with `f` a single monomial.
    pub fn monomial_field(&mut self, n: usize, max_degree: i32) -> WeightOneElement {
        let d = self.rng.gen_range(0..=max_degree);
        let e = self.composition(n, d);
        let i = self.rng.gen_range(0..n);
        WeightOneElement::field(Chart::Affine(n), i, LaurentElement::mono(&e))
    }

    fn symbols_of_weight(&mut self, n: usize, weight: u32) -> Vec<Symbol> {
        let mut out = Vec::new();
        let mut left = weight;
        while left > 0 {
            let w = self.rng.gen_range(1..=left);
            let var = self.rng.gen_range(0..n);
            out.push(if self.rng.gen_bool(0.5) {
                Symbol::Coord { var, order: w }
            } else {
                Symbol::Frame { var, order: w - 1 }
            });
            left -= w;
        }
        out
    }

    /// A homogeneous free-field element of the given conformal weight, with
    /// Laurent prefixes in `y` exponents between −1 and 2.
    pub fn free_field(&mut self, n: usize, weight: u32, max_terms: usize) -> FreeFieldElement {
        let terms = self.rng.gen_range(1..=max_terms);
        let mut out = FreeFieldElement::zero(n);
        for _ in 0..terms {
            let prefix: Vec<i32> = (0..n).map(|_| self.exponent(-1, 2)).collect();
            let tail = self.symbols_of_weight(n, weight);
            out = &out + &FreeFieldElement::term(Word::new(prefix, tail), self.coefficient());
        }
        out
    }

    /// A gluing form with one or two basis terms `ω_ab`, `a, b ≤ max`.
    pub fn gluing_form(&mut self, max: u32) -> GluingForm {
        let mut g = GluingForm::zero();
        for _ in 0..self.rng.gen_range(1..=2) {
            let a = self.rng.gen_range(1..=max);
            let b = self.rng.gen_range(1..=max);
            g.add(a, b, self.coefficient());
        }
        g
    }

    pub fn pick<T: Copy>(&mut self, items: &[T]) -> T {
        *items.choose(&mut self.rng).expect("nonempty")
    }
}
