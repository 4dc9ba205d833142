//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! Exponents are signed so the same type carries the Ricci components (degree -1
//! Laurent polynomials) and the cleared-denominator vector fields built from them.
//! Floating-point evaluation goes through [`Poly::eval`]; exact evaluation through
//! [`Poly::eval_exact`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Exponent vector of a single monomial.
pub type Exponents = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

pub fn to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    pub fn monomial(nvars: usize, coeff: Rational, exps: Exponents) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// The coordinate function `x_index` (zero-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(nvars, Rational::one(), e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exps: Exponents, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), *v * c))
                .collect(),
        }
    }

    /// Total degree of every term, if all terms share one.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<i32>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum::<i32>()).max()
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k >= 0))
    }

    /// Smallest exponent of each variable over all terms (0 when absent).
    pub fn min_exponents(&self) -> Exponents {
        let mut m = vec![0; self.nvars];
        for e in self.terms.keys() {
            for (slot, &k) in m.iter_mut().zip(e) {
                *slot = (*slot).min(k);
            }
        }
        m
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| to_f64(c) * monomial_value(e, x))
            .sum()
    }

    /// Sum of absolute term values; the natural scale for a relative residual.
    pub fn eval_abs(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| (to_f64(c) * monomial_value(e, x)).abs())
            .sum()
    }

    pub fn eval_exact(&self, x: &[Rational]) -> Rational {
        debug_assert_eq!(x.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = *c;
            for (xi, &k) in x.iter().zip(e) {
                if k != 0 {
                    term *= xi.pow(k);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, *c * Rational::from_integer(k as i128));
        }
        out
    }

    /// Multiply by `coeff * x^exps`.
    pub fn mul_monomial(&self, coeff: Rational, exps: &[i32]) -> Self {
        if coeff.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), *c * coeff))
                .collect(),
        }
    }

    /// Substitute each variable `x_j` by the monomial `y^images[j]` in `new_nvars` variables.
    pub fn compose_monomials(&self, images: &[Exponents], new_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars);
        let mut out = Self::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_nvars];
            for (k, img) in e.iter().zip(images) {
                for (slot, &m) in ne.iter_mut().zip(img) {
                    *slot += k * m;
                }
            }
            out.add_term(ne, *c);
        }
        out
    }

    /// Set variable `var` to `value` and remove it from the variable list.
    pub fn fix_var(&self, var: usize, value: Rational) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne.remove(var);
            let factor = if k == 0 {
                Rational::one()
            } else {
                value.pow(k)
            };
            out.add_term(ne, *c * factor);
        }
        out
    }

    /// Restrict to the hyperplane `x_var = 0` and drop the variable.
    ///
    /// Panics if any term carries a negative power of `var`.
    pub fn restrict_zero(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            assert!(e[var] >= 0, "restrict_zero on a negative power");
            if e[var] == 0 {
                let mut ne = e.clone();
                ne.remove(var);
                out.add_term(ne, *c);
            }
        }
        out
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

fn monomial_value(e: &[i32], x: &[f64]) -> f64 {
    let mut v = 1.0;
    for (&k, &xi) in e.iter().zip(x) {
        if k != 0 {
            v *= xi.powi(k);
        }
    }
    v
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, *c1 * *c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if n > 0 {
                "+"
            } else {
                ""
            };
            let sep = if n > 0 { " " } else { "" };
            write!(
                f,
                "{sep}{sign}{}{}",
                if n > 0 && !c.is_negative() { " " } else { "" },
                c.abs()
            )?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

/// Floating-point copy of a [`Poly`] laid out for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    nvars: usize,
    coeffs: Vec<f64>,
    exps: Vec<i32>,
}

impl CompiledPoly {
    pub fn new(p: &Poly) -> Self {
        let mut coeffs = Vec::with_capacity(p.len());
        let mut exps = Vec::with_capacity(p.len() * p.nvars);
        for (e, c) in p.terms() {
            coeffs.push(to_f64(c));
            exps.extend_from_slice(e);
        }
        CompiledPoly {
            nvars: p.nvars,
            coeffs,
            exps,
        }
    }

    #[inline]
    fn term(&self, t: usize, x: &[f64]) -> f64 {
        let e = &self.exps[t * self.nvars..(t + 1) * self.nvars];
        self.coeffs[t] * monomial_value(e, x)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        (0..self.coeffs.len()).map(|t| self.term(t, x)).sum()
    }

    /// Value, sum of absolute term values, and the gradient with respect to
    /// `ln x` (written into `grad`), from a single pass over the terms.
    pub fn eval_log_gradient(&self, x: &[f64], grad: &mut [f64]) -> (f64, f64) {
        grad.fill(0.0);
        let mut v = 0.0;
        let mut s = 0.0;
        for t in 0..self.coeffs.len() {
            let e = &self.exps[t * self.nvars..(t + 1) * self.nvars];
            let term = self.coeffs[t] * monomial_value(e, x);
            v += term;
            s += term.abs();
            for (g, &k) in grad.iter_mut().zip(e) {
                if k != 0 {
                    *g += k as f64 * term;
                }
            }
        }
        (v, s)
    }

    /// Returns `(value, sum of absolute term values)`.
    pub fn eval_with_scale(&self, x: &[f64]) -> (f64, f64) {
        let mut v = 0.0;
        let mut s = 0.0;
        for t in 0..self.coeffs.len() {
            let term = self.term(t, x);
            v += term;
            s += term.abs();
        }
        (v, s)
    }
}

/// A square polynomial system together with its exact Jacobian.
#[derive(Clone, Debug)]
pub struct PolyMap {
    pub components: Vec<Poly>,
    pub jacobian: Vec<Vec<Poly>>,
    fast: Vec<CompiledPoly>,
    fast_jacobian: Vec<Vec<CompiledPoly>>,
}

impl PolyMap {
    pub fn new(components: Vec<Poly>) -> Self {
        let n = components.first().map_or(0, Poly::nvars);
        let jacobian: Vec<Vec<Poly>> = components
            .iter()
            .map(|p| (0..n).map(|j| p.derivative(j)).collect())
            .collect();
        let fast = components.iter().map(CompiledPoly::new).collect();
        let fast_jacobian = jacobian
            .iter()
            .map(|row| row.iter().map(CompiledPoly::new).collect())
            .collect();
        PolyMap {
            components,
            jacobian,
            fast,
            fast_jacobian,
        }
    }

    pub fn nvars(&self) -> usize {
        self.components.first().map_or(0, Poly::nvars)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.fast.iter().map(|p| p.eval(x)).collect()
    }

    pub fn jacobian_at(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.fast_jacobian
            .iter()
            .map(|row| row.iter().map(|p| p.eval(x)).collect())
            .collect()
    }

    pub fn jacobian_exact(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        self.jacobian
            .iter()
            .map(|row| row.iter().map(|p| p.eval_exact(x)).collect())
            .collect()
    }

    /// Values, relative residual and Jacobian with respect to `ln x`, i.e. `J(x) diag(x)`.
    pub fn eval_log_jacobian(&self, x: &[f64]) -> (Vec<f64>, f64, Vec<Vec<f64>>) {
        let n = self.nvars();
        let mut values = Vec::with_capacity(self.fast.len());
        let mut jac = Vec::with_capacity(self.fast.len());
        let mut rel: f64 = 0.0;
        for p in &self.fast {
            let mut row = vec![0.0; n];
            let (v, scale) = p.eval_log_gradient(x, &mut row);
            if scale > 0.0 {
                rel = rel.max(v.abs() / scale);
            }
            values.push(v);
            jac.push(row);
        }
        (values, rel, jac)
    }

    /// Largest component residual measured against the magnitude of its own terms.
    pub fn relative_residual(&self, x: &[f64]) -> f64 {
        self.fast
            .iter()
            .map(|p| {
                let (v, scale) = p.eval_with_scale(x);
                if scale == 0.0 {
                    0.0
                } else {
                    v.abs() / scale
                }
            })
            .fold(0.0, f64::max)
    }
}
