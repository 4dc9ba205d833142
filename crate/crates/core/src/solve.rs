//! Multi-start damped Newton for positive roots of square polynomial systems.
//!
//! Iterates in log coordinates `v = ln x`, so every iterate stays in the open
//! positive orthant and roots on coordinate hyperplanes are never reached.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::poly::PolyMap;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions {
    /// Lower end of the log-uniform start grid, per coordinate.
    pub grid_min: f64,
    /// Upper end of the log-uniform start grid, per coordinate.
    pub grid_max: f64,
    pub points_per_axis: usize,
    /// Upper bound on the number of starts; larger grids are thinned uniformly.
    pub max_starts: usize,
    /// Convergence threshold on the relative residual `|f_i| / sum |terms of f_i|`.
    pub residual_tol: f64,
    /// Two roots closer than this in max-norm are the same root.
    pub dedup_radius: f64,
    pub max_iterations: usize,
}

impl SolverOptions {
    /// Start grid for fixed points at infinity in chart coordinates.
    pub fn fixed_points() -> Self {
        SolverOptions {
            grid_min: 0.05,
            grid_max: 3.5,
            points_per_axis: 8,
            max_starts: 20_000,
            residual_tol: 1e-12,
            dedup_radius: 1e-6,
            max_iterations: 100,
        }
    }

    /// Start grid for normalized Einstein metrics.
    pub fn einstein() -> Self {
        SolverOptions {
            grid_max: 5.0,
            ..Self::fixed_points()
        }
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self::fixed_points()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub point: Vec<f64>,
    /// Relative residual at `point`.
    pub residual: f64,
}

/// Log-uniform grid in `[grid_min, grid_max]^dim`, thinned to at most `max_starts` points.
pub fn start_grid(dim: usize, opts: &SolverOptions) -> Vec<Vec<f64>> {
    let n = opts.points_per_axis.max(1);
    let axis: Vec<f64> = if n == 1 {
        vec![(opts.grid_min * opts.grid_max).sqrt()]
    } else {
        let (lo, hi) = (opts.grid_min.ln(), opts.grid_max.ln());
        (0..n)
            .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
            .collect()
    };
    let total = n.checked_pow(dim as u32).unwrap_or(usize::MAX);
    let count = total.min(opts.max_starts.max(1));
    let stride = total as f64 / count as f64;
    (0..count)
        .map(|s| {
            let mut idx = ((s as f64) * stride) as usize;
            let mut p = vec![0.0; dim];
            for slot in p.iter_mut() {
                *slot = axis[idx % n];
                idx /= n;
            }
            p
        })
        .collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Smallest damping factor tried before a start is abandoned.
const MIN_DAMPING: f64 = 1e-4;
/// Starts still above `STALL_RESIDUAL` after `STALL_CHECK` iterations are abandoned.
const STALL_CHECK: usize = 20;
const STALL_RESIDUAL: f64 = 1e-3;

/// Damped Newton from `start`, in log coordinates. Returns `None` on failure.
pub fn newton_positive(map: &PolyMap, start: &[f64], opts: &SolverOptions) -> Option<Root> {
    let n = map.nvars();
    debug_assert_eq!(map.len(), n);
    let mut x: Vec<f64> = start.to_vec();
    let mut converged_at: Option<usize> = None;

    for iter in 0..opts.max_iterations {
        // F and dF/dv for x = exp(v)
        let (f, rel, jac) = map.eval_log_jacobian(&x);
        let fnorm = norm(&f);
        if !fnorm.is_finite() {
            return None;
        }
        if rel <= opts.residual_tol {
            // a couple of extra steps polish the last digits
            match converged_at {
                Some(k) if iter >= k + 2 => break,
                None => converged_at = Some(iter),
                _ => {}
            }
        } else if iter == STALL_CHECK && rel > STALL_RESIDUAL {
            return None;
        }
        let jv = DMatrix::from_fn(n, n, |i, j| jac[i][j]);
        let rhs = DVector::from_iterator(n, f.iter().map(|v| -v));
        let step = jv.lu().solve(&rhs)?;
        let max_step = step.amax();
        let mut alpha = if max_step > 1.0 { 1.0 / max_step } else { 1.0 };
        let mut accepted = false;
        while alpha > MIN_DAMPING {
            let trial: Vec<f64> = x
                .iter()
                .zip(step.iter())
                .map(|(xi, dv)| xi * (alpha * dv).exp())
                .collect();
            let ftn = norm(&map.eval(&trial));
            if ftn.is_finite() && ftn < fnorm {
                x = trial;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            break;
        }
        if x.iter().any(|&v| !(1e-9..=1e9).contains(&v)) {
            return None;
        }
    }
    let residual = map.relative_residual(&x);
    (residual <= opts.residual_tol).then_some(Root { point: x, residual })
}

/// Run Newton from every grid start and merge the distinct roots.
///
/// Starts run in parallel; the merge walks results in start order so the output
/// is deterministic. Roots are returned sorted lexicographically.
pub fn multistart(map: &PolyMap, opts: &SolverOptions) -> Vec<Root> {
    multistart_with(map, opts, &[])
}

/// [`multistart`] with `extra` starts tried ahead of the grid.
pub fn multistart_with(map: &PolyMap, opts: &SolverOptions, extra: &[Vec<f64>]) -> Vec<Root> {
    let mut starts = extra.to_vec();
    starts.extend(start_grid(map.nvars(), opts));
    let found: Vec<Option<Root>> = starts
        .par_iter()
        .map(|s| newton_positive(map, s, opts))
        .collect();
    let mut roots: Vec<Root> = Vec::new();
    for root in found.into_iter().flatten() {
        match roots
            .iter_mut()
            .find(|r| max_dist(&r.point, &root.point) <= opts.dedup_radius)
        {
            Some(existing) => {
                if root.residual < existing.residual {
                    *existing = root;
                }
            }
            None => roots.push(root),
        }
    }
    roots.sort_by(|a, b| {
        a.point
            .iter()
            .zip(&b.point)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    roots
}

pub fn max_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
