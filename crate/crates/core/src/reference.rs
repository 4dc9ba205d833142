//! Published reference data: fixed-point counts and stability dimensions, and the
//! printed fixed-point coordinates and Einstein constants.
//!
//! Spaces are matched by name first and, for r = 4, by their structure data so a
//! renamed copy of the exceptional space is still recognized.

use crate::catalog::{builtin_catalog, FlagSpace, M_STAR};

/// Expected classification of one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub n: usize,
    /// `(d_stb, d_unstb)` for `e_1 .. e_N` in published order.
    pub dims: Vec<(usize, usize)>,
}

/// Published fixed points of one space, `e_1` first.
#[derive(Clone, Debug, PartialEq)]
pub struct PrintedFixedPoints {
    /// Chart coordinates `(a_1, ..., a_{r-1})`.
    pub chart: Vec<Vec<f64>>,
    /// Einstein constants, when printed.
    pub lambdas: Option<Vec<f64>>,
}

fn is_m_star(space: &FlagSpace) -> bool {
    if space.name() == M_STAR {
        return true;
    }
    builtin_catalog()
        .iter()
        .find(|s| s.name() == M_STAR)
        .is_some_and(|m| m.dims() == space.dims() && m.constants() == space.constants())
}

/// One-based index of the point with a 3-dimensional unstable manifold, if any.
fn exceptional_index(space: &FlagSpace) -> Option<usize> {
    match space.r() {
        4 if is_m_star(space) => Some(5),
        5 => Some(5),
        6 => Some(4),
        _ => None,
    }
}

/// Number of fixed points at infinity, as classified.
pub fn expected_count(space: &FlagSpace) -> Option<usize> {
    match space.r() {
        2 => Some(2),
        3 => Some(3),
        4 if is_m_star(space) => Some(5),
        4 => Some(3),
        5 => Some(6),
        6 => Some(5),
        _ => None,
    }
}

pub fn table1_row(space: &FlagSpace) -> Option<Table1Row> {
    let r = space.r();
    let n = expected_count(space)?;
    let exc = exceptional_index(space);
    let dims = (1..=n)
        .map(|j| {
            if j == 1 {
                (r - 1, 1)
            } else if Some(j) == exc {
                (r - 3, 3)
            } else {
                (r - 2, 2)
            }
        })
        .collect();
    Some(Table1Row { n, dims })
}

pub fn printed_fixed_points(space: &FlagSpace) -> Option<PrintedFixedPoints> {
    let pts = |rows: &[&[f64]]| rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    let (chart, lambdas) = match space.name() {
        "E8/E6xSU(2)xU(1)" => (
            pts(&[&[2.0, 3.0], &[0.914286, 1.54198], &[1.0049, 0.129681]]),
            None,
        ),
        "E8/SU(8)xU(1)" => (
            pts(&[&[2.0, 3.0], &[0.717586, 1.25432], &[1.06853, 0.473177]]),
            None,
        ),
        "E7/SU(5)xSU(3)xU(1)" => (
            pts(&[&[2.0, 3.0], &[0.733552, 1.27681], &[1.06029, 0.443559]]),
            None,
        ),
        "E7/SU(6)xSU(2)xU(1)" => (
            pts(&[&[2.0, 3.0], &[0.85368, 1.45259], &[1.01573, 0.229231]]),
            None,
        ),
        "E6/SU(3)xSU(3)xSU(2)xU(1)" => (
            pts(&[&[2.0, 3.0], &[0.771752, 1.33186], &[1.04268, 0.373467]]),
            None,
        ),
        "F4/SU(3)xSU(2)xU(1)#r3" => (
            pts(&[&[2.0, 3.0], &[0.678535, 1.20122], &[1.09057, 0.546045]]),
            None,
        ),
        "G2/U(2)#r3" => (
            pts(&[&[2.0, 3.0], &[1.67467, 2.05238], &[0.186894, 0.981478]]),
            None,
        ),
        M_STAR => (
            pts(&[
                &[2.0, 3.0, 4.0],
                &[1.09705, 0.770347, 1.29696],
                &[1.15607, 1.01783, 0.214618],
                &[0.649612, 1.10943, 1.06103],
                &[0.763357, 1.00902, 0.191009],
            ]),
            None,
        ),
        "E8/U(1)xSU(4)xSU(5)" => (
            pts(&[
                &[2.0, 3.0, 4.0, 5.0],
                &[0.599785, 1.08371, 0.901823, 1.22291],
                &[1.02137, 0.546007, 1.05352, 1.10879],
                &[1.08294, 1.04088, 0.532615, 1.10351],
                &[0.720713, 1.02546, 0.475234, 1.07095],
                &[1.03732, 1.04718, 1.03082, 0.29862],
            ]),
            Some(vec![
                11.0 / 60.0,
                0.37877,
                0.365507,
                0.339394,
                0.386982,
                0.337271,
            ]),
        ),
        "E8/U(1)xSU(2)xSU(3)xSU(5)" => (
            pts(&[
                &[2.0, 3.0, 4.0, 5.0, 6.0],
                &[0.823084, 1.1467, 1.17377, 1.42664, 1.46519],
                &[0.986536, 0.636844, 1.06853, 1.13323, 0.921127],
                &[0.90422, 0.778283, 0.927483, 1.03408, 0.359949],
                &[0.954875, 0.965321, 1.00534, 0.290091, 1.01965],
            ]),
            Some(vec![3.0 / 20.0, 0.313933, 0.348603, 0.367518, 0.349296]),
        ),
        _ => return None,
    };
    Some(PrintedFixedPoints { chart, lambdas })
}
