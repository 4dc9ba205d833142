//! The homogeneous Ricci flow `x_k' = -2 x_k ric_k(x)` and its polynomial form.

use num_integer::Integer;
use num_traits::One;

use crate::catalog::FlagSpace;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ricci::{check_metric, ric_unchecked, ricci_laurent};
use crate::Rational;

pub fn hrf_vector_field(space: &FlagSpace, x: &[f64]) -> Result<Vec<f64>> {
    check_metric(space, x)?;
    Ok(field_unchecked(space, x))
}

pub(crate) fn field_unchecked(space: &FlagSpace, x: &[f64]) -> Vec<f64> {
    ric_unchecked(space, x)
        .iter()
        .zip(x)
        .map(|(ric, xk)| -2.0 * xk * ric)
        .collect()
}

/// The flow field `-2 x_k ric_k` as degree-0 Laurent polynomials.
pub fn hrf_laurent(space: &FlagSpace) -> Vec<Poly> {
    let r = space.r();
    ricci_laurent(space)
        .iter()
        .enumerate()
        .map(|(k, ric)| {
            let mut e = vec![0; r];
            e[k] = 1;
            ric.mul_monomial(Rational::from_integer(-2), &e)
        })
        .collect()
}

/// Positive factor used to clear denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplier {
    /// The per-rank factors that reproduce the published polynomial systems.
    Published,
    /// Least common multiple of all denominators, monomial part and numeric part.
    Generic,
}

/// Cleared-denominator flow `RF = mu(x) * X(x)`, homogeneous of degree `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialSystem {
    pub space: String,
    pub components: Vec<Poly>,
    pub degree: u32,
    /// The monomial `mu(x)`, positive on the open orthant.
    pub multiplier: Poly,
}

impl PolynomialSystem {
    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.eval(x)).collect()
    }

    pub fn multiplier_value(&self, x: &[f64]) -> f64 {
        self.multiplier.eval(x)
    }
}

fn published_multiplier(space: &FlagSpace) -> Poly {
    let r = space.r();
    let d: Vec<i128> = space.dims().iter().map(|&v| v as i128).collect();
    let (coeff, exps): (i128, Vec<i32>) = match r {
        2 => (2 * (d[0] + 4 * d[1]), vec![2, 0]),
        3 => (
            2 * d[0] * d[1] * (d[0] + 4 * d[1] + 9 * d[2]),
            vec![2, 1, 1],
        ),
        4 => (60, vec![2, 2, 1, 1]),
        5 => (60, vec![2, 2, 1, 1, 1]),
        6 => (60, vec![2, 2, 2, 1, 1, 1]),
        _ => unreachable!("FlagSpace enforces 2 <= r <= 6"),
    };
    Poly::monomial(r, Rational::from_integer(coeff), exps)
}

fn generic_multiplier(field: &[Poly]) -> Poly {
    let r = field[0].nvars();
    let mut exps = vec![0; r];
    let mut denom_lcm: i128 = 1;
    for p in field {
        for (slot, m) in exps.iter_mut().zip(p.min_exponents()) {
            *slot = (*slot).max(-m);
        }
        for (_, c) in p.terms() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
    }
    Poly::monomial(r, Rational::from_integer(denom_lcm), exps)
}

pub fn polynomialize_with(space: &FlagSpace, multiplier: Multiplier) -> Result<PolynomialSystem> {
    let field = hrf_laurent(space);
    let mu = match multiplier {
        Multiplier::Published => published_multiplier(space),
        Multiplier::Generic => generic_multiplier(&field),
    };
    let (coeff, exps) = mu
        .terms()
        .next()
        .map(|(e, c)| (*c, e.clone()))
        .expect("non-zero multiplier");
    let components: Vec<Poly> = field.iter().map(|p| p.mul_monomial(coeff, &exps)).collect();
    if !components.iter().all(Poly::is_polynomial) {
        return Err(Error::InvalidSpace(format!(
            "{}: multiplier {mu} does not clear all denominators",
            space.name()
        )));
    }
    let degree = components
        .iter()
        .find_map(Poly::homogeneous_degree)
        .ok_or_else(|| Error::InvalidSpace(format!("{}: zero vector field", space.name())))?;
    if components
        .iter()
        .any(|p| !p.is_zero() && p.homogeneous_degree() != Some(degree))
    {
        return Err(Error::InvalidSpace(format!(
            "{}: field is not homogeneous",
            space.name()
        )));
    }
    Ok(PolynomialSystem {
        space: space.name().to_string(),
        components,
        degree: degree as u32,
        multiplier: mu,
    })
}

/// Polynomial form with the published multiplier, falling back to the generic one
/// for spaces whose constant pattern the published factor does not clear.
pub fn polynomialize(space: &FlagSpace) -> PolynomialSystem {
    polynomialize_with(space, Multiplier::Published)
        .or_else(|_| polynomialize_with(space, Multiplier::Generic))
        .expect("generic multiplier always clears denominators")
}

/// Time derivative of `V = (x1^2 + x2^2) / 2` along the flow on an r = 2 space.
pub fn lyapunov_derivative_r2(space: &FlagSpace, x: &[f64]) -> Result<f64> {
    if space.r() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            got: space.r(),
        });
    }
    check_metric(space, x)?;
    let (d1, d2) = (space.dims()[0] as f64, space.dims()[1] as f64);
    let (x1, x2) = (x[0], x[1]);
    let num = 2.0 * d2 * x1 * x1 * (4.0 * x1 + 3.0 * x2) + d1 * (2.0 * x1.powi(3) + x2.powi(3));
    Ok(-num / (2.0 * (d1 + 4.0 * d2) * x1 * x1))
}

/// The Lyapunov function whose derivative [`lyapunov_derivative_r2`] returns.
pub fn lyapunov_r2(x: &[f64]) -> f64 {
    0.5 * (x[0] * x[0] + x[1] * x[1])
}

/// Positive scalar `mu` with `RF(x) = mu * X(x)`, when both are evaluated at `x`.
pub fn parallel_ratio(system: &PolynomialSystem, space: &FlagSpace, x: &[f64]) -> Result<Vec<f64>> {
    let raw = hrf_vector_field(space, x)?;
    Ok(system
        .eval(x)
        .iter()
        .zip(&raw)
        .map(|(a, b)| a / b)
        .collect())
}

/// `true` when `mu` is one, i.e. the system is the raw (Laurent) field.
pub fn is_trivial_multiplier(system: &PolynomialSystem) -> bool {
    system
        .multiplier
        .terms()
        .all(|(e, c)| c.is_one() && e.iter().all(|&k| k == 0))
}
