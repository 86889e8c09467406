//! Exact row reduction over the rationals.
//!
//! Right-hand sides may carry formal parameters; the coefficient matrix is
//! always rational, so pivoting never divides by a parameter.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::{ParamScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Unique,
    Underdetermined,
    Inconsistent,
}

#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub status: SolveStatus,
    /// Forced value of each unknown, if the system pins it.
    pub pinned: Vec<Option<ParamScalar>>,
    /// One solution with every free unknown set to zero.
    pub particular: Option<Vec<ParamScalar>>,
    /// Basis of the homogeneous solution space.
    pub kernel: Vec<Vec<Rational>>,
}

/// Rows `coeffs · x = rhs`.
#[derive(Clone, Debug, Default)]
pub struct AffineSystem {
    n: usize,
    rows: Vec<(Vec<Rational>, ParamScalar)>,
}

impl AffineSystem {
    pub fn new(n: usize) -> Self {
        AffineSystem {
            n,
            rows: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.n
    }

    pub fn push_row(&mut self, coeffs: Vec<Rational>, rhs: ParamScalar) {
        assert_eq!(coeffs.len(), self.n, "row width");
        if coeffs.iter().all(Zero::is_zero) && rhs.is_zero() {
            return;
        }
        self.rows.push((coeffs, rhs));
    }

    pub fn solve(self) -> AffineSolution {
        let n = self.n;
        let mut rows = self.rows;
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            let Some(found) = (rank..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
                continue;
            };
            rows.swap(rank, found);
            let inv = rows[rank].0[col].recip();
            if !inv.is_one() {
                for c in rows[rank].0.iter_mut() {
                    *c *= &inv;
                }
                rows[rank].1 = rows[rank].1.scale(&inv);
            }
            let (pivot_coeffs, pivot_rhs) = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || row.0[col].is_zero() {
                    continue;
                }
                let factor = row.0[col].clone();
                for (c, p) in row.0.iter_mut().zip(pivot_coeffs.iter()) {
                    if !p.is_zero() {
                        *c -= &factor * p;
                    }
                }
                row.1 -= &pivot_rhs.scale(&factor);
            }
            pivots.push(col);
            rank += 1;
        }
        let inconsistent = rows[rank..].iter().any(|(_, rhs)| !rhs.is_zero());
        let is_pivot: Vec<Option<usize>> = {
            let mut v = vec![None; n];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let free: Vec<usize> = (0..n).filter(|c| is_pivot[*c].is_none()).collect();

        let mut kernel = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -rows[r].0[f].clone();
            }
            kernel.push(v);
        }

        if inconsistent {
            return AffineSolution {
                status: SolveStatus::Inconsistent,
                pinned: vec![None; n],
                particular: None,
                kernel,
            };
        }
        let mut pinned = vec![None; n];
        let mut particular = vec![ParamScalar::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            particular[c] = rows[r].1.clone();
            if free.iter().all(|&f| rows[r].0[f].is_zero()) {
                pinned[c] = Some(rows[r].1.clone());
            }
        }
        AffineSolution {
            status: if free.is_empty() {
                SolveStatus::Unique
            } else {
                SolveStatus::Underdetermined
            },
            pinned,
            particular: Some(particular),
            kernel,
        }
    }
}

/// Rank of a rational matrix given as rows.
pub fn rank(rows: &[Vec<Rational>], width: usize) -> usize {
    let mut sys = AffineSystem::new(width);
    for r in rows {
        sys.push_row(r.clone(), ParamScalar::zero());
    }
    width - sys.solve().kernel.len()
}

/// Reduced echelon basis of a subspace of sparse vectors indexed by `K`.
///
/// Each stored vector has a pivot key that no other stored vector contains,
/// so reduction of a target is independent of the order of the basis.
#[derive(Clone, Debug)]
pub struct Span<K: Ord + Clone> {
    basis: Vec<(K, BTreeMap<K, Rational>)>,
}

impl<K: Ord + Clone> Default for Span<K> {
    fn default() -> Self {
        Span { basis: Vec::new() }
    }
}

impl<K: Ord + Clone> Span<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce_rational(&self, v: &BTreeMap<K, Rational>) -> BTreeMap<K, Rational> {
        let mut out = v.clone();
        for (pivot, b) in &self.basis {
            let Some(f) = out.get(pivot).cloned() else {
                continue;
            };
            for (key, c) in b {
                let e = out.entry(key.clone()).or_insert_with(Rational::zero);
                *e -= &f * c;
                if e.is_zero() {
                    out.remove(key);
                }
            }
        }
        out
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &BTreeMap<K, Rational>) -> bool {
        let mut r = self.reduce_rational(v);
        r.retain(|_, c| !c.is_zero());
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip();
        for c in r.values_mut() {
            *c *= &inv;
        }
        for (_, b) in self.basis.iter_mut() {
            let Some(f) = b.get(&pivot).cloned() else {
                continue;
            };
            for (key, c) in &r {
                let e = b.entry(key.clone()).or_insert_with(Rational::zero);
                *e -= &f * c;
                if e.is_zero() {
                    b.remove(key);
                }
            }
        }
        self.basis.push((pivot, r));
        true
    }

    pub fn contains(&self, v: &BTreeMap<K, Rational>) -> bool {
        self.reduce_rational(v).values().all(Zero::is_zero)
    }

    /// Residual of a parameter-valued target modulo the span. The target is in
    /// the span for exactly those parameter values that make every residual
    /// entry vanish.
    pub fn residual(&self, v: &BTreeMap<K, ParamScalar>) -> BTreeMap<K, ParamScalar> {
        let mut out = v.clone();
        for (pivot, b) in &self.basis {
            let Some(f) = out.get(pivot).cloned() else {
                continue;
            };
            if f.is_zero() {
                continue;
            }
            for (key, c) in b {
                let e = out.entry(key.clone()).or_default();
                *e -= &f.scale(c);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}
