//! Straight-line ancient solutions `g(t) = (1 - 2 lambda t) e` through Einstein directions.

use std::fmt::Write as _;

use crate::catalog::FlagSpace;
use crate::error::{Error, Result};
use crate::poincare::FixedPointAtInfinity;
use crate::ricci::{
    check_metric, einstein_residual, ric_unchecked, scal_unchecked, scalar_curvature_exact,
    MetricVector,
};
use crate::Rational;

/// Largest `|ric_i - mean(ric)|` accepted for an Einstein direction.
pub const EINSTEIN_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct AncientSolution {
    pub space: FlagSpace,
    /// Einstein direction with first coordinate 1.
    pub direction: MetricVector,
    pub lambda: f64,
    pub extinction_time: f64,
    pub scal_at_zero: f64,
}

pub fn ancient_solution(space: &FlagSpace, fp: &FixedPointAtInfinity) -> Result<AncientSolution> {
    from_direction(space, &fp.representative, fp.lambda)
}

/// Build the solution through `direction`, which must be Einstein with constant `lambda`.
pub fn from_direction(
    space: &FlagSpace,
    direction: &[f64],
    lambda: f64,
) -> Result<AncientSolution> {
    let residual = einstein_residual(space, direction)?
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let ric = ric_unchecked(space, direction);
    let off = ric.iter().fold(0.0f64, |m, v| m.max((v - lambda).abs()));
    if residual > EINSTEIN_TOL || off > EINSTEIN_TOL || lambda <= 0.0 {
        return Err(Error::NotEinstein {
            residual: residual.max(off),
        });
    }
    Ok(AncientSolution {
        space: space.clone(),
        direction: MetricVector::new(direction.to_vec())?,
        lambda,
        extinction_time: 1.0 / (2.0 * lambda),
        scal_at_zero: scal_unchecked(space, direction),
    })
}

impl AncientSolution {
    /// `1 - 2 lambda t`, or a domain error at and beyond extinction.
    fn factor(&self, t: f64) -> Result<f64> {
        if t >= self.extinction_time || t.is_nan() {
            return Err(Error::Domain {
                t,
                extinction_time: self.extinction_time,
            });
        }
        Ok(1.0 - 2.0 * self.lambda * t)
    }

    pub fn evaluate(&self, t: f64) -> Result<MetricVector> {
        Ok(self.direction.scaled(self.factor(t)?))
    }

    /// Time derivative `-2 lambda e` of [`Self::evaluate`].
    pub fn velocity(&self) -> Vec<f64> {
        self.direction
            .iter()
            .map(|v| -2.0 * self.lambda * v)
            .collect()
    }

    pub fn scal_along(&self, t: f64) -> Result<f64> {
        Ok(self.scal_at_zero / self.factor(t)?)
    }

    pub fn ricci_along(&self, t: f64) -> Result<Vec<f64>> {
        let c = self.factor(t)?;
        Ok(vec![self.lambda / c; self.space.r()])
    }

    pub fn volume_along(&self, t: f64) -> Result<f64> {
        Ok(volume_proxy(&self.space, &self.evaluate(t)?))
    }
}

/// `prod x_i^(d_i / 2)`, the volume density relative to the normal metric.
pub fn volume_proxy(space: &FlagSpace, x: &[f64]) -> f64 {
    space
        .dims()
        .iter()
        .zip(x)
        .map(|(&d, &xi)| xi.powf(d as f64 / 2.0))
        .product()
}

/// The two r = 2 solutions in exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactAncient {
    pub direction: Vec<Rational>,
    pub lambda: Rational,
    pub extinction_time: Rational,
    pub scal_at_zero: Rational,
}

pub fn exact_r2_solutions(space: &FlagSpace) -> Result<[ExactAncient; 2]> {
    let lambdas = crate::ricci::r2_einstein_constants(space)?;
    let (d1, d2) = (space.dims()[0] as i128, space.dims()[1] as i128);
    let one = Rational::from_integer(1);
    let dirs = [
        vec![one, Rational::from_integer(2)],
        vec![one, Rational::new(4 * d2, d1 + 2 * d2)],
    ];
    let build = |k: usize| -> Result<ExactAncient> {
        let lambda = lambdas[k];
        Ok(ExactAncient {
            scal_at_zero: scalar_curvature_exact(space, &dirs[k])?,
            direction: dirs[k].clone(),
            lambda,
            extinction_time: one / (Rational::from_integer(2) * lambda),
        })
    };
    Ok([build(0)?, build(1)?])
}

/// Uniform grid of `steps + 1` times from `t0` to `t1`.
pub fn time_grid(t0: f64, t1: f64, steps: usize) -> Vec<f64> {
    let steps = steps.max(1);
    (0..=steps)
        .map(|i| t0 + (t1 - t0) * i as f64 / steps as f64)
        .collect()
}

/// CSV `t,x1..xr,scal,ric1..ricr` on `grid`; fails if the grid reaches extinction.
pub fn curve_csv(sol: &AncientSolution, grid: &[f64]) -> Result<String> {
    let r = sol.space.r();
    let mut out = String::from("t");
    for i in 1..=r {
        let _ = write!(out, ",x{i}");
    }
    out.push_str(",scal");
    for i in 1..=r {
        let _ = write!(out, ",ric{i}");
    }
    out.push('\n');
    let f = |v: f64| crate::report::fmt_sig(v, 12);
    for &t in grid {
        let x = sol.evaluate(t)?;
        check_metric(&sol.space, &x)?;
        out.push_str(&f(t));
        for v in x.iter() {
            out.push(',');
            out.push_str(&f(*v));
        }
        out.push(',');
        out.push_str(&f(sol.scal_along(t)?));
        for v in sol.ricci_along(t)? {
            out.push(',');
            out.push_str(&f(v));
        }
        out.push('\n');
    }
    Ok(out)
}
