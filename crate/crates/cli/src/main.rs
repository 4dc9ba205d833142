use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hrf_core::ancient::{ancient_solution, curve_csv, time_grid};
use hrf_core::catalog::{catalog, get_space, make_r2_space, make_r3_space, FlagSpace};
use hrf_core::integrate::{integrate_flow_from, trajectory_csv, IntegratorOptions};
use hrf_core::poincare::find_fixed_points_at_infinity;
use hrf_core::report::{
    catalog_json, catalog_text, compute_table1, einstein_text, fixed_points_csv, fixed_points_json,
    fixed_points_text, fmt_sig, render_table1, table1_mismatches, CSV_DIGITS,
};
use hrf_core::ricci::find_einstein_metrics;
use hrf_core::SolverOptions;

/// Homogeneous Ricci flow on flag manifolds with b2 = 1.
#[derive(Parser)]
#[command(name = "hrf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointsFormat {
    Json,
    Csv,
    Text,
}

/// A catalog name, or a parametric r = 2 or r = 3 space given by its dimensions.
#[derive(clap::Args)]
struct SpaceArg {
    /// Space name as listed by `catalog`.
    #[arg(long, required_unless_present = "dims", conflicts_with = "dims")]
    space: Option<String>,
    /// Dimensions d1,d2 or d1,d2,d3 of a parametric space.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<i64>>,
}

impl SpaceArg {
    fn resolve(&self) -> Result<FlagSpace> {
        if let Some(name) = &self.space {
            return Ok(get_space(name)?);
        }
        match self.dims.as_deref() {
            Some(&[d1, d2]) => Ok(make_r2_space(d1, d2)?),
            Some(&[d1, d2, d3]) => Ok(make_r3_space(d1, d2, d3)?),
            _ => bail!("--dims takes two or three values"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog spaces with r, dimensions and the number of fixed points.
    Catalog {
        #[arg(long, value_enum, default_value = "text")]
        format: CatalogFormat,
    },
    /// Recompute the classification table; exits nonzero on any mismatch.
    Table1,
    /// Fixed points at infinity with eigenvalues and stability dimensions.
    FixedPoints {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, value_enum, default_value = "json")]
        format: PointsFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the flow and write the trajectory as CSV.
    Flow {
        #[command(flatten)]
        space: SpaceArg,
        /// Initial metric x1,...,xr.
        #[arg(long, value_delimiter = ',', required = true)]
        x0: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, allow_negative_numbers = true)]
        t1: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        floor: f64,
        #[arg(long, default_value_t = 200_000)]
        max_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the straight-line ancient solution through the J-th fixed point.
    Ancient {
        #[command(flatten)]
        space: SpaceArg,
        /// One-based fixed-point index.
        #[arg(long)]
        index: usize,
        #[arg(long, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, allow_negative_numbers = true)]
        t1: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Write only the `t,scal` columns.
        #[arg(long)]
        scal_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariant Einstein metrics normalized to x1 = 1.
    Einstein {
        #[command(flatten)]
        space: SpaceArg,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Catalog { format } => {
            let spaces = catalog()?;
            match format {
                CatalogFormat::Text => print!("{}", catalog_text(&spaces)),
                CatalogFormat::Json => println!("{}", catalog_json(&spaces)),
            }
        }
        Command::Table1 => {
            let entries = compute_table1(&catalog()?, &SolverOptions::fixed_points())?;
            print!("{}", render_table1(&entries));
            let diff = table1_mismatches(&entries);
            if !diff.is_empty() {
                for line in diff {
                    eprintln!("{line}");
                }
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::FixedPoints { space, format, out } => {
            let s = space.resolve()?;
            let pts = find_fixed_points_at_infinity(&s, &SolverOptions::fixed_points())?;
            let text = match format {
                PointsFormat::Json => fixed_points_json(&s, &pts) + "\n",
                PointsFormat::Csv => fixed_points_csv(&s, &pts),
                PointsFormat::Text => fixed_points_text(&s, &pts),
            };
            emit(&text, out.as_ref())?;
        }
        Command::Flow {
            space,
            x0,
            t0,
            t1,
            tol,
            floor,
            max_steps,
            out,
        } => {
            let s = space.resolve()?;
            let opts = IntegratorOptions {
                tol,
                floor,
                max_steps,
                ..IntegratorOptions::default()
            };
            let traj = integrate_flow_from(&s, &x0, t0, t1, &opts)?;
            emit(&trajectory_csv(&s, &traj), out.as_ref())?;
        }
        Command::Ancient {
            space,
            index,
            t0,
            t1,
            steps,
            scal_only,
            out,
        } => {
            let s = space.resolve()?;
            let pts = find_fixed_points_at_infinity(&s, &SolverOptions::fixed_points())?;
            if index == 0 || index > pts.len() {
                bail!("index {index} outside 1..={}", pts.len());
            }
            let sol = ancient_solution(&s, &pts[index - 1])?;
            let grid = time_grid(t0, t1, steps);
            let text = if scal_only {
                let mut text = String::from("t,scal\n");
                for t in grid {
                    let scal = sol.scal_along(t)?;
                    text += &format!("{},{}\n", fmt_sig(t, CSV_DIGITS), fmt_sig(scal, CSV_DIGITS));
                }
                text
            } else {
                curve_csv(&sol, &grid)?
            };
            emit(&text, out.as_ref())?;
        }
        Command::Einstein { space } => {
            let s = space.resolve()?;
            let metrics = find_einstein_metrics(&s, &SolverOptions::einstein())?;
            print!("{}", einstein_text(&s, &metrics));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
