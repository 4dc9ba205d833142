//! Text, CSV and JSON renderings used by the command-line tool.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::FlagSpace;
use crate::error::Result;
use crate::poincare::{find_fixed_points_at_infinity, FixedPointAtInfinity, FixedPointReport};
use crate::reference::{expected_count, table1_row, Table1Row};
use crate::ricci::EinsteinMetric;
use crate::solve::SolverOptions;

/// Significant digits in human-readable reports.
pub const REPORT_DIGITS: usize = 6;
/// Significant digits in CSV data.
pub const CSV_DIGITS: usize = 12;

/// `%g`-style formatting with `sig` significant digits and trailing zeros removed.
pub fn fmt_sig(v: f64, sig: usize) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_vec(v: &[f64], sig: usize) -> String {
    let parts: Vec<String> = v.iter().map(|x| fmt_sig(*x, sig)).collect();
    format!("({})", parts.join(", "))
}

fn fmt_count(n: Option<usize>) -> String {
    n.map_or_else(|| "?".to_string(), |n| n.to_string())
}

pub fn catalog_text(spaces: &[FlagSpace]) -> String {
    let mut out = String::new();
    for s in spaces {
        let dims: Vec<String> = s.dims().iter().map(u32::to_string).collect();
        let _ = writeln!(
            out,
            "{}  r={}  N={}  dims=({})",
            s.name(),
            s.r(),
            fmt_count(expected_count(s)),
            dims.join(",")
        );
    }
    out
}

#[derive(Serialize)]
struct CatalogEntry<'a> {
    name: &'a str,
    r: usize,
    dims: &'a [u32],
    #[serde(rename = "N")]
    n: Option<usize>,
}

pub fn catalog_json(spaces: &[FlagSpace]) -> String {
    let entries: Vec<CatalogEntry> = spaces
        .iter()
        .map(|s| CatalogEntry {
            name: s.name(),
            r: s.r(),
            dims: s.dims(),
            n: expected_count(s),
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("catalog serializes")
}

/// Recomputed classification of one space next to its published row.
#[derive(Clone, Debug, PartialEq)]
pub struct Table1Entry {
    pub space: String,
    pub r: usize,
    pub expected: Option<Table1Row>,
    /// `(d_stb, d_unstb)` per point, in reported order.
    pub computed: Table1Row,
}

impl Table1Entry {
    pub fn matches(&self) -> bool {
        self.expected.as_ref() == Some(&self.computed)
    }
}

pub fn table1_entry(space: &FlagSpace, points: &[FixedPointAtInfinity]) -> Table1Entry {
    Table1Entry {
        space: space.name().to_string(),
        r: space.r(),
        expected: table1_row(space),
        computed: Table1Row {
            n: points.len(),
            dims: points.iter().map(|p| (p.d_stb, p.d_unstb)).collect(),
        },
    }
}

pub fn compute_table1(spaces: &[FlagSpace], opts: &SolverOptions) -> Result<Vec<Table1Entry>> {
    spaces
        .iter()
        .map(|s| Ok(table1_entry(s, &find_fixed_points_at_infinity(s, opts)?)))
        .collect()
}

fn row_cells(row: &Table1Row) -> (String, String, String, String, String) {
    let first = row.dims.first().copied();
    let rest = &row.dims[row.dims.len().min(1)..];
    // the value shared by most of e_2 .. e_N, exceptions listed separately
    let typical = rest
        .iter()
        .max_by_key(|d| {
            (
                rest.iter().filter(|e| e == d).count(),
                std::cmp::Reverse(**d),
            )
        })
        .copied();
    let exceptions: Vec<String> = rest
        .iter()
        .enumerate()
        .filter(|(_, d)| Some(**d) != typical)
        .map(|(i, (stb, unstb))| format!("j={}:{unstb}/{stb}", i + 2))
        .collect();
    let cell = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    (
        cell(first.map(|d| d.1)),
        cell(first.map(|d| d.0)),
        cell(typical.map(|d| d.1)),
        cell(typical.map(|d| d.0)),
        if exceptions.is_empty() {
            "-".to_string()
        } else {
            exceptions.join(" ")
        },
    )
}

/// Table with one row per space: `N`, `d_1` unstable/stable, the common `d_j`
/// unstable/stable for `j >= 2`, and the exceptional `j` as `unstb/stb`.
pub fn render_table1(entries: &[Table1Entry]) -> String {
    let header = [
        "r",
        "space",
        "N",
        "d1_unstb",
        "d1_stb",
        "dj_unstb",
        "dj_stb",
        "exceptions",
        "status",
    ];
    let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for e in entries {
        let (a, b, c, d, x) = row_cells(&e.computed);
        let status = match &e.expected {
            None => "unreferenced",
            Some(_) if e.matches() => "ok",
            Some(_) => "MISMATCH",
        };
        rows.push(vec![
            e.r.to_string(),
            e.space.clone(),
            e.computed.n.to_string(),
            a,
            b,
            c,
            d,
            x,
            status.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

/// One line per disagreement with the published table; empty when all rows match.
pub fn table1_mismatches(entries: &[Table1Entry]) -> Vec<String> {
    let mut diff = Vec::new();
    for e in entries {
        let Some(exp) = &e.expected else { continue };
        if exp.n != e.computed.n {
            diff.push(format!(
                "{}: N expected {} got {}",
                e.space, exp.n, e.computed.n
            ));
        }
        for (j, (want, got)) in exp.dims.iter().zip(&e.computed.dims).enumerate() {
            if want != got {
                diff.push(format!(
                    "{}: e_{} (d_unstb, d_stb) expected ({}, {}) got ({}, {})",
                    e.space,
                    j + 1,
                    want.1,
                    want.0,
                    got.1,
                    got.0
                ));
            }
        }
    }
    diff
}

pub fn fixed_points_json(space: &FlagSpace, points: &[FixedPointAtInfinity]) -> String {
    FixedPointReport::new(space, points).to_json()
}

pub fn fixed_points_csv(space: &FlagSpace, points: &[FixedPointAtInfinity]) -> String {
    let r = space.r();
    let mut out = String::from("j");
    for i in 1..r {
        let _ = write!(out, ",a{i}");
    }
    out.push_str(",lambda,d_stb,d_unstb,is_kahler_einstein");
    for i in 1..r {
        let _ = write!(out, ",eig{i}_re,eig{i}_im");
    }
    out.push('\n');
    for (j, p) in points.iter().enumerate() {
        let _ = write!(out, "{}", j + 1);
        for v in &p.chart_coords {
            let _ = write!(out, ",{}", fmt_sig(*v, CSV_DIGITS));
        }
        let _ = write!(
            out,
            ",{},{},{},{}",
            fmt_sig(p.lambda, CSV_DIGITS),
            p.d_stb,
            p.d_unstb,
            p.is_kahler_einstein
        );
        for z in &p.eigenvalues {
            let _ = write!(
                out,
                ",{},{}",
                fmt_sig(z.re, CSV_DIGITS),
                fmt_sig(z.im, CSV_DIGITS)
            );
        }
        out.push('\n');
    }
    out
}

pub fn fixed_points_text(space: &FlagSpace, points: &[FixedPointAtInfinity]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}  r={}  N={}", space.name(), space.r(), points.len());
    for (j, p) in points.iter().enumerate() {
        let eig: Vec<String> = p
            .eigenvalues
            .iter()
            .map(|z| {
                if z.im == 0.0 {
                    fmt_sig(z.re, REPORT_DIGITS)
                } else {
                    format!(
                        "{}{}{}i",
                        fmt_sig(z.re, REPORT_DIGITS),
                        if z.im < 0.0 { "-" } else { "+" },
                        fmt_sig(z.im.abs(), REPORT_DIGITS)
                    )
                }
            })
            .collect();
        let _ = writeln!(
            out,
            "e{}  {}  lambda={}  d_stb={}  d_unstb={}{}  eig=[{}]",
            j + 1,
            fmt_vec(&p.chart_coords, REPORT_DIGITS),
            fmt_sig(p.lambda, REPORT_DIGITS),
            p.d_stb,
            p.d_unstb,
            if p.is_kahler_einstein { "  KE" } else { "" },
            eig.join(", ")
        );
    }
    out
}

pub fn einstein_text(space: &FlagSpace, metrics: &[EinsteinMetric]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}  r={}  Einstein metrics (x1 = 1): {}",
        space.name(),
        space.r(),
        metrics.len()
    );
    for (j, m) in metrics.iter().enumerate() {
        let _ = writeln!(
            out,
            "{}  {}  lambda={}  T={}",
            j + 1,
            fmt_vec(&m.metric, REPORT_DIGITS),
            fmt_sig(m.lambda, REPORT_DIGITS),
            fmt_sig(1.0 / (2.0 * m.lambda), REPORT_DIGITS)
        );
    }
    out
}
