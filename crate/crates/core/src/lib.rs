//! Homogeneous Ricci flow on generalized flag manifolds with second Betti number one.
//!
//! The crate evaluates Ricci curvature of diagonal invariant metrics, turns the
//! flow into a homogeneous polynomial vector field, studies that field at
//! infinity through the Poincaré compactification, and builds the straight-line
//! ancient solutions that leave each fixed point at infinity.

pub mod ancient;
pub mod catalog;
pub mod dynamics;
pub mod error;
pub mod integrate;
pub mod poincare;
pub mod poly;
pub mod reference;
pub mod report;
pub mod ricci;
pub mod solve;

/// Exact rational numbers used for dimensions, structure constants and polynomial coefficients.
pub type Rational = num_rational::Ratio<i128>;

pub use catalog::{get_space, make_r2_space, make_r3_space, FlagSpace};
pub use error::{Error, Result};
pub use ricci::{MetricVector, RicciVector};
pub use solve::SolverOptions;
