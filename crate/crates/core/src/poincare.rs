//! The polynomial flow at infinity in the chart `U = {y_1 > 0}` of the Poincaré
//! compactification, its fixed points and their linear stability.
//!
//! Chart coordinates are `u_i = x_{i+1} / x_1` for `i < r` and `u_r = 1 / x_1`.
//! The normalizing factor of the central projection is dropped, so every
//! system here is polynomial.

use log::warn;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::FlagSpace;
use crate::dynamics::{hrf_laurent, polynomialize, PolynomialSystem};
use crate::error::{Error, Result};
use crate::poly::{to_f64, Poly, PolyMap};
use crate::reference::{expected_count, printed_fixed_points};
use crate::ricci::{ric_unchecked, MetricVector};
use crate::solve::{max_dist, multistart_with, SolverOptions};
use crate::Rational;

/// Relative threshold, against the Jacobian norm, below which a real part counts as zero.
pub const HYPERBOLICITY_TOL: f64 = 1e-6;

/// Distance to `(1, 2, ..., r)` within which a direction is the Kähler-Einstein one.
pub const KAHLER_EINSTEIN_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct ChartSystem {
    pub space: String,
    /// Right-hand sides in `(u_1, ..., u_r)`.
    pub components: Vec<Poly>,
    pub degree: u32,
}

impl ChartSystem {
    pub fn r(&self) -> usize {
        self.components.len()
    }
}

pub fn chart_system(system: &PolynomialSystem) -> ChartSystem {
    let r = system.r();
    let d = system.degree as i32;
    // x_1 -> u_r^{-1}, x_j -> u_{j-1} u_r^{-1}
    let images: Vec<Vec<i32>> = (0..r)
        .map(|j| {
            let mut e = vec![0; r];
            e[r - 1] = -1;
            if j > 0 {
                e[j - 1] = 1;
            }
            e
        })
        .collect();
    let mut lift = vec![0; r];
    lift[r - 1] = d;
    let bar: Vec<Poly> = system
        .components
        .iter()
        .map(|p| {
            p.compose_monomials(&images, r)
                .mul_monomial(Rational::from_integer(1), &lift)
        })
        .collect();
    let mut components = Vec::with_capacity(r);
    for i in 0..r {
        let u = if i + 1 < r {
            bar[i + 1].clone()
        } else {
            Poly::zero(r)
        };
        components.push(&u - &(&Poly::var(r, i) * &bar[0]));
    }
    debug_assert!(components.iter().all(Poly::is_polynomial));
    ChartSystem {
        space: system.space.clone(),
        components,
        degree: system.degree,
    }
}

/// `true` when the `u_r` equation vanishes identically on `{u_r = 0}`.
pub fn infinity_is_invariant(chart: &ChartSystem) -> bool {
    let r = chart.r();
    chart.components[r - 1].restrict_zero(r - 1).is_zero()
}

/// The first `r - 1` chart equations restricted to `u_r = 0`.
pub fn infinity_system(chart: &ChartSystem) -> PolyMap {
    let r = chart.r();
    PolyMap::new(
        chart.components[..r - 1]
            .iter()
            .map(|p| p.restrict_zero(r - 1))
            .collect(),
    )
}

pub fn infinity_system_for(space: &FlagSpace) -> PolyMap {
    infinity_system(&chart_system(&polynomialize(space)))
}

/// Sup norm of the system at `point`, after dividing by its largest coefficient.
pub fn normalized_residual(system: &PolyMap, point: &[f64]) -> f64 {
    let scale = system
        .components
        .iter()
        .map(|p| to_f64(&p.max_abs_coefficient()))
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    system
        .eval(point)
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max)
        / scale
}

pub fn jacobian_at(system: &PolyMap, point: &[f64]) -> DMatrix<f64> {
    let n = system.len();
    let j = system.jacobian_at(point);
    DMatrix::from_fn(n, system.nvars(), |a, b| j[a][b])
}

pub fn jacobian_exact(system: &PolyMap, point: &[Rational]) -> Vec<Vec<Rational>> {
    system.jacobian_exact(point)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointAtInfinity {
    /// `(a_1, ..., a_{r-1})`, with `u_r = 0`.
    pub chart_coords: Vec<f64>,
    /// The direction `(1, a_1, ..., a_{r-1})`.
    pub representative: MetricVector,
    pub eigenvalues: Vec<Complex64>,
    pub jacobian: DMatrix<f64>,
    pub d_stb: usize,
    pub d_unstb: usize,
    /// Einstein constant of the representative.
    pub lambda: f64,
    pub is_kahler_einstein: bool,
    /// Relative residual reached by the solver.
    pub residual: f64,
}

pub fn eigenvalues(jac: &DMatrix<f64>) -> Vec<Complex64> {
    if jac.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<Complex64> = jac.clone().complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    ev
}

/// `(d_stb, d_unstb)`: negative real parts, and positive real parts plus the radial direction.
pub fn classify_stability(eigenvalues: &[Complex64], jacobian_norm: f64) -> Result<(usize, usize)> {
    let tol = HYPERBOLICITY_TOL * jacobian_norm.max(f64::MIN_POSITIVE);
    let mut stb = 0;
    let mut unstb = 1;
    for z in eigenvalues {
        if z.re.abs() <= tol {
            return Err(Error::NonHyperbolic { re: z.re, im: z.im });
        }
        if z.re < 0.0 {
            stb += 1;
        } else {
            unstb += 1;
        }
    }
    Ok((stb, unstb))
}

/// Chart coordinates `(2, ..., r)` of the Kähler-Einstein direction, which can lie
/// outside the start grid and is therefore always tried.
pub fn kahler_einstein_seed(space: &FlagSpace) -> Vec<f64> {
    (2..=space.r()).map(|k| k as f64).collect()
}

fn is_kahler_einstein(rep: &[f64]) -> bool {
    rep.iter()
        .enumerate()
        .all(|(i, v)| (v - (i + 1) as f64).abs() <= KAHLER_EINSTEIN_TOL)
}

fn build_point(
    space: &FlagSpace,
    system: &PolyMap,
    chart: Vec<f64>,
    residual: f64,
) -> Result<FixedPointAtInfinity> {
    let jac = jacobian_at(system, &chart);
    let ev = eigenvalues(&jac);
    let (d_stb, d_unstb) = classify_stability(&ev, jac.norm())?;
    let mut rep = vec![1.0];
    rep.extend_from_slice(&chart);
    let lambda = ric_unchecked(space, &rep)[0];
    Ok(FixedPointAtInfinity {
        is_kahler_einstein: is_kahler_einstein(&rep),
        representative: MetricVector::new(rep)?,
        chart_coords: chart,
        eigenvalues: ev,
        jacobian: jac,
        d_stb,
        d_unstb,
        lambda,
        residual,
    })
}

/// Order: Kähler-Einstein first, then by the published numbering when one
/// exists for the space, otherwise lexicographically.
fn order_points(space: &FlagSpace, points: &mut [FixedPointAtInfinity]) {
    let printed = printed_fixed_points(space);
    let rank = |p: &FixedPointAtInfinity| -> usize {
        if p.is_kahler_einstein {
            return 0;
        }
        match &printed {
            Some(pr) => pr
                .chart
                .iter()
                .enumerate()
                .min_by(|a, b| {
                    max_dist(a.1, &p.chart_coords).total_cmp(&max_dist(b.1, &p.chart_coords))
                })
                .map_or(usize::MAX, |(j, _)| j),
            None => 1,
        }
    };
    points.sort_by(|a, b| {
        rank(a).cmp(&rank(b)).then_with(|| {
            a.chart_coords
                .iter()
                .zip(&b.chart_coords)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
}

pub fn find_fixed_points_at_infinity(
    space: &FlagSpace,
    opts: &SolverOptions,
) -> Result<Vec<FixedPointAtInfinity>> {
    let system = infinity_system_for(space);
    let roots = multistart_with(&system, opts, &[kahler_einstein_seed(space)]);
    if roots.is_empty() {
        return Err(Error::SolverFailure(format!(
            "{}: no start reached the residual tolerance {:e}",
            space.name(),
            opts.residual_tol
        )));
    }
    let mut points = roots
        .into_iter()
        .map(|root| build_point(space, &system, root.point, root.residual))
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = expected_count(space) {
        if n != points.len() {
            warn!(
                "{}: found {} fixed points at infinity, expected {n}",
                space.name(),
                points.len()
            );
        }
    }
    order_points(space, &mut points);
    Ok(points)
}

/// Positive directions `v = (1, v_2, ..., v_r)` along which the raw flow field is
/// parallel to the position, from `v_i X_{i+1}(v) = v_{i+1} X_i(v)`.
pub fn invariant_line_system(space: &FlagSpace) -> PolyMap {
    let r = space.r();
    let field = hrf_laurent(space);
    let one = Rational::from_integer(1);
    PolyMap::new(
        (0..r - 1)
            .map(|i| {
                let a = &Poly::var(r, i) * &field[i + 1];
                let b = &Poly::var(r, i + 1) * &field[i];
                (&a - &b).fix_var(0, one)
            })
            .collect(),
    )
}

pub fn find_invariant_lines(space: &FlagSpace, opts: &SolverOptions) -> Result<Vec<MetricVector>> {
    let roots = multistart_with(
        &invariant_line_system(space),
        opts,
        &[kahler_einstein_seed(space)],
    );
    if let Some(n) = expected_count(space) {
        if roots.len() < n {
            return Err(Error::SolverFailure(format!(
                "{}: found {} invariant lines, expected {n}",
                space.name(),
                roots.len()
            )));
        }
    }
    let mut lines = roots
        .into_iter()
        .map(|root| {
            let mut v = vec![1.0];
            v.extend(root.point);
            MetricVector::new(v)
        })
        .collect::<Result<Vec<_>>>()?;
    lines.sort_by_key(|v| !is_kahler_einstein(v));
    Ok(lines)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexRecord {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointRecord {
    pub chart: Vec<f64>,
    pub representative: Vec<f64>,
    pub eigenvalues: Vec<ComplexRecord>,
    pub d_stb: usize,
    pub d_unstb: usize,
    pub lambda: f64,
    pub is_kahler_einstein: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointReport {
    pub space: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub points: Vec<PointRecord>,
}

impl FixedPointReport {
    pub fn new(space: &FlagSpace, points: &[FixedPointAtInfinity]) -> Self {
        FixedPointReport {
            space: space.name().to_string(),
            n: points.len(),
            points: points
                .iter()
                .map(|p| PointRecord {
                    chart: p.chart_coords.clone(),
                    representative: p.representative.to_vec(),
                    eigenvalues: p
                        .eigenvalues
                        .iter()
                        .map(|z| ComplexRecord { re: z.re, im: z.im })
                        .collect(),
                    d_stb: p.d_stb,
                    d_unstb: p.d_unstb,
                    lambda: p.lambda,
                    is_kahler_einstein: p.is_kahler_einstein,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
