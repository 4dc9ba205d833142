//! Ricci components, scalar curvature and Einstein metrics of diagonal invariant metrics.
//!
//! A diagonal invariant metric is a point `x` of the open positive orthant, one
//! scale per isotropy summand. All quantities here are homogeneous of degree -1.

use std::ops::Deref;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::catalog::FlagSpace;
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyMap};
use crate::reference;
use crate::solve::{self, SolverOptions};
use crate::Rational;

/// A validated diagonal metric: `r` strictly positive coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MetricVector(Vec<f64>);

impl MetricVector {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        check_positive(&x)?;
        Ok(MetricVector(x))
    }

    /// Check `x` against the rank of `space` as well.
    pub fn for_space(space: &FlagSpace, x: Vec<f64>) -> Result<Self> {
        check_metric(space, &x)?;
        Ok(MetricVector(x))
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn scaled(&self, c: f64) -> MetricVector {
        MetricVector(self.0.iter().map(|v| v * c).collect())
    }
}

impl Deref for MetricVector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

fn check_positive(x: &[f64]) -> Result<()> {
    for (i, &v) in x.iter().enumerate() {
        if v <= 0.0 || !v.is_finite() {
            return Err(Error::NonPositiveCoordinate {
                index: i + 1,
                value: v,
            });
        }
    }
    Ok(())
}

pub(crate) fn check_metric(space: &FlagSpace, x: &[f64]) -> Result<()> {
    if x.len() != space.r() {
        return Err(Error::DimensionMismatch {
            expected: space.r(),
            got: x.len(),
        });
    }
    check_positive(x)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RicciVector {
    pub ric: Vec<f64>,
    pub scal: f64,
}

/// Ricci components without argument checks.
pub(crate) fn ric_unchecked(space: &FlagSpace, x: &[f64]) -> Vec<f64> {
    let dims = space.dims();
    let mut ric: Vec<f64> = x.iter().map(|xk| 0.5 / xk).collect();
    for ([a, b, c], v) in space.bracket_entries() {
        let v = poly_f64(&v);
        // [a; b c] feeds the positive sum of ric_a ...
        ric[a] += v * x[a] / (x[b] * x[c]) / (4.0 * dims[a] as f64);
        // ... and the negative sum of ric_b, as [j; k i] with j = a, k = b, i = c
        ric[b] -= v * x[a] / (x[b] * x[c]) / (2.0 * dims[b] as f64);
    }
    ric
}

fn poly_f64(q: &Rational) -> f64 {
    crate::poly::to_f64(q)
}

pub(crate) fn scal_unchecked(space: &FlagSpace, x: &[f64]) -> f64 {
    let dims = space.dims();
    let mut s: f64 = dims.iter().zip(x).map(|(&d, xi)| 0.5 * d as f64 / xi).sum();
    for ([m, i, j], v) in space.bracket_entries() {
        s -= 0.25 * poly_f64(&v) * x[m] / (x[i] * x[j]);
    }
    s
}

pub fn ricci_components(space: &FlagSpace, x: &[f64]) -> Result<RicciVector> {
    check_metric(space, x)?;
    Ok(RicciVector {
        ric: ric_unchecked(space, x),
        scal: scal_unchecked(space, x),
    })
}

pub fn scalar_curvature(space: &FlagSpace, x: &[f64]) -> Result<f64> {
    check_metric(space, x)?;
    Ok(scal_unchecked(space, x))
}

/// `ric_i - mean(ric)`; vanishes exactly at Einstein metrics.
pub fn einstein_residual(space: &FlagSpace, x: &[f64]) -> Result<Vec<f64>> {
    check_metric(space, x)?;
    Ok(centered(&ric_unchecked(space, x)))
}

fn centered(ric: &[f64]) -> Vec<f64> {
    let mean = ric.iter().sum::<f64>() / ric.len() as f64;
    ric.iter().map(|v| v - mean).collect()
}

/// Ricci components as exact Laurent polynomials in `x_1..x_r`.
pub fn ricci_laurent(space: &FlagSpace) -> Vec<Poly> {
    let r = space.r();
    let dims = space.dims();
    let unit = |k: usize, pow: i32| {
        let mut e = vec![0; r];
        e[k] = pow;
        e
    };
    let mut ric: Vec<Poly> = (0..r)
        .map(|k| Poly::monomial(r, Rational::new(1, 2), unit(k, -1)))
        .collect();
    for ([a, b, c], v) in space.bracket_entries() {
        let mut e = vec![0; r];
        e[a] += 1;
        e[b] -= 1;
        e[c] -= 1;
        let plus = Poly::monomial(
            r,
            v / Rational::from_integer(4 * dims[a] as i128),
            e.clone(),
        );
        let minus = Poly::monomial(r, v / Rational::from_integer(2 * dims[b] as i128), e);
        ric[a] = &ric[a] + &plus;
        ric[b] = &ric[b] - &minus;
    }
    ric
}

/// Exact Ricci components at a rational point.
pub fn ricci_exact(space: &FlagSpace, x: &[Rational]) -> Result<Vec<Rational>> {
    if x.len() != space.r() {
        return Err(Error::DimensionMismatch {
            expected: space.r(),
            got: x.len(),
        });
    }
    Ok(ricci_laurent(space)
        .iter()
        .map(|p| p.eval_exact(x))
        .collect())
}

/// Exact scalar curvature `sum d_i ric_i` at a rational point.
pub fn scalar_curvature_exact(space: &FlagSpace, x: &[Rational]) -> Result<Rational> {
    let ric = ricci_exact(space, x)?;
    Ok(ric
        .iter()
        .zip(space.dims())
        .fold(Rational::zero(), |acc, (r, &d)| {
            acc + *r * Rational::from_integer(d as i128)
        }))
}

/// The Kähler-Einstein metric `(1, 2, ..., r)`.
pub fn kahler_einstein_metric(space: &FlagSpace) -> MetricVector {
    MetricVector((1..=space.r()).map(|i| i as f64).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EinsteinMetric {
    /// Normalized so that `x_1 = 1`.
    pub metric: MetricVector,
    /// Einstein constant at this normalization.
    pub lambda: f64,
}

/// The polynomial system `{ric_i - mean(ric) = 0, i = 2..r}` with `x_1 = 1`,
/// in the unknowns `x_2..x_r`.
pub fn einstein_system(space: &FlagSpace) -> PolyMap {
    let r = space.r();
    let ric = ricci_laurent(space);
    let mut mean = Poly::zero(r);
    for p in &ric {
        mean = &mean + p;
    }
    let mean = mean.scale(Rational::new(1, r as i128));
    let rows = ric[1..]
        .iter()
        .map(|p| (p - &mean).fix_var(0, Rational::one()))
        .collect();
    PolyMap::new(rows)
}

/// Locate all normalized Einstein metrics by multi-start Newton.
pub fn find_einstein_metrics(
    space: &FlagSpace,
    opts: &SolverOptions,
) -> Result<Vec<EinsteinMetric>> {
    let system = einstein_system(space);
    let roots = solve::multistart_with(
        &system,
        opts,
        &[crate::poincare::kahler_einstein_seed(space)],
    );
    let mut out = Vec::with_capacity(roots.len());
    for root in roots {
        let mut x = vec![1.0];
        x.extend_from_slice(&root.point);
        let ric = ric_unchecked(space, &x);
        let lambda = ric.iter().sum::<f64>() / ric.len() as f64;
        if lambda <= 0.0 {
            return Err(Error::SolverFailure(format!(
                "{}: Einstein metric with non-positive constant {lambda}",
                space.name()
            )));
        }
        out.push(EinsteinMetric {
            metric: MetricVector(x),
            lambda,
        });
    }
    if let Some(expected) = reference::expected_count(space) {
        if out.len() < expected {
            return Err(Error::SolverFailure(format!(
                "{}: found {} Einstein metrics, expected {expected}",
                space.name(),
                out.len()
            )));
        }
    }
    // Kähler-Einstein first, then by coordinates
    let ke = kahler_einstein_metric(space);
    out.sort_by_key(|m| solve::max_dist(&m.metric, &ke) > 1e-6);
    Ok(out)
}

/// Closed-form Einstein constants `(lambda_1, lambda_2)` of an r = 2 space.
pub fn r2_einstein_constants(space: &FlagSpace) -> Result<[Rational; 2]> {
    if space.r() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            got: space.r(),
        });
    }
    let d1 = Rational::from_integer(space.dims()[0] as i128);
    let d2 = Rational::from_integer(space.dims()[1] as i128);
    let two = Rational::from_integer(2);
    let four = Rational::from_integer(4);
    let six = Rational::from_integer(6);
    let l1 = (d1 + two * d2) / (two * (d1 + four * d2));
    let l2 =
        (d1 * d1 + six * d1 * d2 + four * d2 * d2) / (two * (d1 + two * d2) * (d1 + four * d2));
    Ok([l1, l2])
}
