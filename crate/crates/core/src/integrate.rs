//! Dormand–Prince 5(4) integration of the flow with a positivity guard.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::FlagSpace;
use crate::dynamics::field_unchecked;
use crate::error::{Error, Result};
use crate::ricci::{check_metric, scal_unchecked, MetricVector};

#[derive(Clone, Debug, PartialEq)]
pub struct IntegratorOptions {
    /// Relative local error bound per step.
    pub tol: f64,
    /// Stop with [`Termination::Extinction`] once some coordinate falls below this.
    pub floor: f64,
    pub max_steps: usize,
    /// Take steps of exactly this size and skip error control.
    pub fixed_step: Option<f64>,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            tol: 1e-10,
            floor: 1e-8,
            max_steps: 200_000,
            fixed_step: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    TEndReached,
    Extinction,
    StepFailure,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::TEndReached => "t_end_reached",
            Termination::Extinction => "extinction",
            Termination::StepFailure => "step_failure",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// Accepted samples; `t` is monotone in the direction of integration.
    pub samples: Vec<(f64, MetricVector)>,
    pub terminated_by: Termination,
}

impl Trajectory {
    pub fn last(&self) -> &(f64, MetricVector) {
        self.samples
            .last()
            .expect("a trajectory holds at least its initial sample")
    }
}

// Dormand–Prince tableau; the field is autonomous so the nodes are not needed
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

struct Step {
    x: Vec<f64>,
    k_last: Vec<f64>,
    err: f64,
}

/// One DP5(4) step from `(x, k0 = f(x))`. `None` when a stage leaves the orthant.
fn dp_step(space: &FlagSpace, x: &[f64], k0: &[f64], h: f64, tol: f64) -> Option<Step> {
    let n = x.len();
    let mut k: Vec<Vec<f64>> = Vec::with_capacity(7);
    k.push(k0.to_vec());
    let mut xn = vec![0.0; n];
    for (s, row) in A.iter().enumerate().skip(1) {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + h * (0..s).map(|j| row[j] * k[j][i]).sum::<f64>())
            .collect();
        if y.iter().any(|&v| v <= 0.0 || !v.is_finite()) {
            return None;
        }
        if s == 6 {
            xn.clone_from(&y);
        }
        k.push(field_unchecked(space, &y));
    }
    let mut err = 0.0;
    for i in 0..n {
        let e = h * (0..7).map(|j| (B5[j] - B4[j]) * k[j][i]).sum::<f64>();
        let sc = tol * x[i].abs().max(xn[i].abs());
        err += (e / sc).powi(2);
    }
    Some(Step {
        x: xn,
        k_last: k.pop().unwrap(),
        err: (err / n as f64).sqrt(),
    })
}

pub fn integrate_flow(
    space: &FlagSpace,
    x0: &[f64],
    t_end: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    integrate_flow_from(space, x0, 0.0, t_end, opts)
}

/// Integrate from `(t0, x0)` to `t_end`, forward or backward in time.
pub fn integrate_flow_from(
    space: &FlagSpace,
    x0: &[f64],
    t0: f64,
    t_end: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    check_metric(space, x0)?;
    let mut t = t0;
    let mut x = x0.to_vec();
    let mut samples = vec![(t, MetricVector::new(x.clone())?)];
    let span = t_end - t0;
    if span == 0.0 {
        return Ok(Trajectory {
            samples,
            terminated_by: Termination::TEndReached,
        });
    }
    let dir = span.signum();
    let mut k = field_unchecked(space, &x);
    let mut h = match opts.fixed_step {
        Some(h) => h.abs(),
        None => {
            let xn = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let fnorm = k.iter().map(|v| v * v).sum::<f64>().sqrt();
            (1e-3 * xn / fnorm.max(f64::MIN_POSITIVE)).min(span.abs())
        }
    };
    let h_min = 1e-14 * t0.abs().max(t_end.abs()).max(1.0);

    for _ in 0..opts.max_steps {
        let remaining = (t_end - t) * dir;
        if remaining <= 0.0 {
            return Ok(Trajectory {
                samples,
                terminated_by: Termination::TEndReached,
            });
        }
        let last = h >= remaining;
        let h_try = if last { remaining } else { h };
        if h_try < h_min && !last {
            return Err(Error::StepFailure { t });
        }
        let step = dp_step(space, &x, &k, dir * h_try, opts.tol);
        let Some(step) = step else {
            // positivity guard
            h = h_try * 0.5;
            if h < h_min {
                return Err(Error::StepFailure { t });
            }
            continue;
        };
        let accept = opts.fixed_step.is_some() || step.err <= 1.0;
        if !accept {
            h = h_try * (0.9 * step.err.powf(-0.2)).clamp(0.1, 1.0);
            continue;
        }
        if step.x.iter().any(|&v| v < opts.floor) {
            return Ok(Trajectory {
                samples,
                terminated_by: Termination::Extinction,
            });
        }
        t = if last { t_end } else { t + dir * h_try };
        x = step.x;
        k = step.k_last;
        samples.push((t, MetricVector::new(x.clone())?));
        if opts.fixed_step.is_none() {
            let factor = if step.err == 0.0 {
                5.0
            } else {
                0.9 * step.err.powf(-0.2)
            };
            h = h_try * factor.clamp(0.2, 5.0);
        }
    }
    Ok(Trajectory {
        samples,
        terminated_by: Termination::StepFailure,
    })
}

/// CSV with header `t,x1,...,xr,scal` and a trailing `# terminated_by=...` row.
pub fn trajectory_csv(space: &FlagSpace, traj: &Trajectory) -> String {
    let r = space.r();
    let mut out = String::from("t");
    for i in 1..=r {
        let _ = write!(out, ",x{i}");
    }
    out.push_str(",scal\n");
    for (t, x) in &traj.samples {
        out.push_str(&crate::report::fmt_sig(*t, 12));
        for v in x.iter() {
            out.push(',');
            out.push_str(&crate::report::fmt_sig(*v, 12));
        }
        out.push(',');
        out.push_str(&crate::report::fmt_sig(scal_unchecked(space, x), 12));
        out.push('\n');
    }
    let _ = writeln!(out, "# terminated_by={}", traj.terminated_by.as_str());
    out
}
