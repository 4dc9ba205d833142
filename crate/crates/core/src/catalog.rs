//! Flag manifolds with second Betti number one and their structure constants.
//!
//! Each space is reduced to the data the Ricci flow needs: the real dimensions
//! `d_i` of the isotropy summands and the non-zero structure constants `c_ij^k`.
//! Constants are stored once per unordered triple and are fully symmetric in
//! `(i, j, k)` when evaluated.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// Version tag written into catalog dumps.
pub const CATALOG_VERSION: u32 = 1;

/// Environment variable that points at a replacement catalog file.
pub const CATALOG_PATH_ENV: &str = "HRF_CATALOG_PATH";

/// Name of the exceptional r = 4 space, also accepted as `M*`.
pub const M_STAR: &str = "E8/SO(10)xSU(3)xU(1)";

/// One-based index triple `(i, j, k)` of a structure constant `c_ij^k`, with `i <= j`.
pub type Triple = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagSpace {
    name: String,
    dims: Vec<u32>,
    constants: BTreeMap<Triple, Rational>,
}

impl FlagSpace {
    /// Build and validate a space. Triples are one-based and normalized to `i <= j`.
    pub fn new(
        name: impl Into<String>,
        dims: Vec<u32>,
        constants: impl IntoIterator<Item = (Triple, Rational)>,
    ) -> Result<Self> {
        let name = name.into();
        let r = dims.len();
        if !(2..=6).contains(&r) {
            return Err(Error::InvalidSpace(format!(
                "{name}: r = {r} outside 2..=6"
            )));
        }
        for (i, &d) in dims.iter().enumerate() {
            if d == 0 {
                return Err(Error::NonPositiveDimension {
                    index: i + 1,
                    value: 0,
                });
            }
        }
        let mut table = BTreeMap::new();
        for ((i, j, k), c) in constants {
            if [i, j, k].iter().any(|&n| n == 0 || n > r) {
                return Err(Error::InvalidSpace(format!(
                    "{name}: index triple ({i},{j},{k}) out of range"
                )));
            }
            if c.is_negative() {
                return Err(Error::InvalidSpace(format!(
                    "{name}: c_{i}{j}^{k} = {c} is negative"
                )));
            }
            if c.is_zero() {
                continue;
            }
            let key = (i.min(j), i.max(j), k);
            if table.insert(key, c).is_some() {
                return Err(Error::InvalidSpace(format!(
                    "{name}: duplicate constant c_{}{}^{}",
                    key.0, key.1, key.2
                )));
            }
        }
        Ok(FlagSpace {
            name,
            dims,
            constants: table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of isotropy summands.
    pub fn r(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Real dimension of `G/K`.
    pub fn total_dim(&self) -> u32 {
        self.dims.iter().sum()
    }

    /// Stored constants, keyed by one-based `(i, j, k)` with `i <= j`.
    pub fn constants(&self) -> &BTreeMap<Triple, Rational> {
        &self.constants
    }

    /// `c_ij^k` for one-based indices, symmetric in all three; zero when not listed.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        // every permutation of a stored triple maps to the same sorted key
        for (&(a, b, c), v) in &self.constants {
            let mut s = [a, b, c];
            s.sort_unstable();
            if s == idx {
                return *v;
            }
        }
        Rational::zero()
    }

    /// All ordered triples `(i, j, k)` (zero-based) with non-zero bracket `[k; i j]`.
    pub fn bracket_entries(&self) -> Vec<([usize; 3], Rational)> {
        let mut out = Vec::new();
        for (&(a, b, c), v) in &self.constants {
            let base = [a - 1, b - 1, c - 1];
            let perms = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            let mut seen: Vec<[usize; 3]> = Vec::new();
            for p in perms {
                let t = [base[p[0]], base[p[1]], base[p[2]]];
                if !seen.contains(&t) {
                    seen.push(t);
                    out.push((t, *v));
                }
            }
        }
        out
    }
}

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Two-summand space with `c_11^2 = d1 d2 / (d1 + 4 d2)`.
pub fn make_r2_space(d1: i64, d2: i64) -> Result<FlagSpace> {
    make_r2_named(format!("r2[{d1},{d2}]"), d1, d2)
}

fn make_r2_named(name: String, d1: i64, d2: i64) -> Result<FlagSpace> {
    check_dims(&[d1, d2])?;
    let (a, b) = (d1 as i128, d2 as i128);
    let c112 = q(a * b, a + 4 * b);
    FlagSpace::new(name, vec![d1 as u32, d2 as u32], [((1, 1, 2), c112)])
}

/// Three-summand space with the closed-form `c_11^2` and `c_12^3`.
pub fn make_r3_space(d1: i64, d2: i64, d3: i64) -> Result<FlagSpace> {
    make_r3_named(format!("r3[{d1},{d2},{d3}]"), d1, d2, d3)
}

fn make_r3_named(name: String, d1: i64, d2: i64, d3: i64) -> Result<FlagSpace> {
    check_dims(&[d1, d2, d3])?;
    let numerator = d1 * d2 + 2 * d1 * d3 - d2 * d3;
    if numerator < 0 {
        return Err(Error::NegativeConstant { numerator });
    }
    let (a, b, c) = (d1 as i128, d2 as i128, d3 as i128);
    let denom = a + 4 * b + 9 * c;
    FlagSpace::new(
        name,
        vec![d1 as u32, d2 as u32, d3 as u32],
        [
            ((1, 1, 2), q(numerator as i128, denom)),
            ((1, 2, 3), q(c * (a + b), denom)),
        ],
    )
}

fn check_dims(dims: &[i64]) -> Result<()> {
    for (i, &d) in dims.iter().enumerate() {
        if d <= 0 {
            return Err(Error::NonPositiveDimension {
                index: i + 1,
                value: d,
            });
        }
    }
    Ok(())
}

fn r4_space(
    name: &str,
    dims: [u32; 4],
    c224: Rational,
    c112: Rational,
    c123: Rational,
    c134: Rational,
) -> FlagSpace {
    FlagSpace::new(
        name,
        dims.to_vec(),
        [
            ((1, 1, 2), c112),
            ((1, 2, 3), c123),
            ((1, 3, 4), c134),
            ((2, 2, 4), c224),
        ],
    )
    .expect("built-in r = 4 space")
}

fn builtin() -> Vec<FlagSpace> {
    let mut v = vec![
        make_r2_named("G2/U(2)#r2".into(), 8, 2).unwrap(),
        make_r2_named("F4/Sp(3)xU(1)#r2".into(), 28, 2).unwrap(),
    ];
    for (name, d) in [
        ("E8/E6xSU(2)xU(1)", [108, 54, 4]),
        ("E8/SU(8)xU(1)", [112, 56, 16]),
        ("E7/SU(5)xSU(3)xU(1)", [60, 30, 8]),
        ("E7/SU(6)xSU(2)xU(1)", [60, 30, 4]),
        ("E6/SU(3)xSU(3)xSU(2)xU(1)", [36, 18, 4]),
        ("F4/SU(3)xSU(2)xU(1)#r3", [24, 12, 4]),
        ("G2/U(2)#r3", [4, 2, 4]),
    ] {
        v.push(make_r3_named(name.into(), d[0], d[1], d[2]).unwrap());
    }
    v.push(r4_space(
        "F4/SU(3)xSU(2)xU(1)#r4",
        [12, 18, 4, 6],
        int(2),
        int(2),
        int(1),
        q(2, 3),
    ));
    v.push(r4_space(
        "E7/SU(4)xSU(3)xSU(2)xU(1)",
        [48, 36, 16, 6],
        int(2),
        int(8),
        int(4),
        q(4, 3),
    ));
    v.push(r4_space(
        M_STAR,
        [96, 60, 32, 6],
        int(2),
        int(16),
        int(8),
        q(8, 5),
    ));
    v.push(r4_space(
        "E8/SU(7)xSU(2)xU(1)",
        [84, 70, 28, 14],
        q(14, 3),
        int(14),
        int(7),
        q(14, 5),
    ));
    v.push(
        FlagSpace::new(
            "E8/U(1)xSU(4)xSU(5)",
            vec![80, 60, 40, 20, 8],
            [
                ((1, 1, 2), int(12)),
                ((1, 2, 3), int(8)),
                ((1, 3, 4), int(4)),
                ((1, 4, 5), q(4, 3)),
                ((2, 2, 4), int(4)),
                ((2, 3, 5), int(2)),
            ],
        )
        .unwrap(),
    );
    v.push(
        FlagSpace::new(
            "E8/U(1)xSU(2)xSU(3)xSU(5)",
            vec![60, 60, 40, 30, 12, 10],
            [
                ((1, 1, 2), int(8)),
                ((1, 2, 3), int(6)),
                ((1, 3, 4), int(4)),
                ((1, 4, 5), int(2)),
                ((1, 5, 6), int(1)),
                ((2, 2, 4), int(6)),
                ((2, 3, 5), int(2)),
                ((2, 4, 6), int(2)),
                ((3, 3, 6), int(2)),
            ],
        )
        .unwrap(),
    );
    v
}

/// The embedded catalog (ignores `HRF_CATALOG_PATH`).
pub fn builtin_catalog() -> &'static [FlagSpace] {
    static CATALOG: OnceLock<Vec<FlagSpace>> = OnceLock::new();
    CATALOG.get_or_init(builtin)
}

/// The active catalog: the file named by `HRF_CATALOG_PATH` if set, else the embedded one.
pub fn catalog() -> Result<Vec<FlagSpace>> {
    match std::env::var_os(CATALOG_PATH_ENV) {
        Some(path) => load_catalog(Path::new(&path)),
        None => Ok(builtin_catalog().to_vec()),
    }
}

/// Look up a space in the active catalog. `M*` is an alias for the exceptional r = 4 space.
pub fn get_space(name: &str) -> Result<FlagSpace> {
    find_in(&catalog()?, name)
}

pub fn find_in(spaces: &[FlagSpace], name: &str) -> Result<FlagSpace> {
    let wanted = if name == "M*" { M_STAR } else { name };
    spaces
        .iter()
        .find(|s| s.name == wanted)
        .cloned()
        .ok_or_else(|| Error::UnknownSpace {
            name: name.to_string(),
            available: spaces
                .iter()
                .map(|s| s.name.as_str())
                .collect::<Vec<_>>()
                .join(", "),
        })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConstantRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpaceRecord {
    pub name: String,
    pub r: usize,
    pub dims: Vec<u32>,
    pub constants: Vec<ConstantRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogFile {
    pub version: u32,
    pub spaces: Vec<SpaceRecord>,
}

impl From<&FlagSpace> for SpaceRecord {
    fn from(s: &FlagSpace) -> Self {
        SpaceRecord {
            name: s.name.clone(),
            r: s.r(),
            dims: s.dims.clone(),
            constants: s
                .constants
                .iter()
                .map(|(&(i, j, k), c)| ConstantRecord {
                    i,
                    j,
                    k,
                    num: *c.numer() as i64,
                    den: *c.denom() as i64,
                })
                .collect(),
        }
    }
}

impl TryFrom<&SpaceRecord> for FlagSpace {
    type Error = Error;

    fn try_from(rec: &SpaceRecord) -> Result<Self> {
        if rec.r != rec.dims.len() {
            return Err(Error::Catalog(format!(
                "{}: r = {} but {} dims given",
                rec.name,
                rec.r,
                rec.dims.len()
            )));
        }
        let mut constants = Vec::with_capacity(rec.constants.len());
        for c in &rec.constants {
            if c.den == 0 {
                return Err(Error::Catalog(format!("{}: zero denominator", rec.name)));
            }
            constants.push(((c.i, c.j, c.k), Rational::new(c.num as i128, c.den as i128)));
        }
        FlagSpace::new(rec.name.clone(), rec.dims.clone(), constants)
    }
}

pub fn to_catalog_file(spaces: &[FlagSpace]) -> CatalogFile {
    CatalogFile {
        version: CATALOG_VERSION,
        spaces: spaces.iter().map(SpaceRecord::from).collect(),
    }
}

pub fn dump_json(spaces: &[FlagSpace]) -> String {
    serde_json::to_string_pretty(&to_catalog_file(spaces)).expect("catalog serializes")
}

pub fn parse_json(text: &str) -> Result<Vec<FlagSpace>> {
    let file: CatalogFile = serde_json::from_str(text)?;
    if file.version != CATALOG_VERSION {
        return Err(Error::Catalog(format!(
            "unsupported catalog version {} (expected {CATALOG_VERSION})",
            file.version
        )));
    }
    file.spaces.iter().map(FlagSpace::try_from).collect()
}

pub fn load_catalog(path: &Path) -> Result<Vec<FlagSpace>> {
    parse_json(&std::fs::read_to_string(path)?)
}

/// Plain-text export: one line per space.
pub fn dump_text(spaces: &[FlagSpace]) -> String {
    let mut out = format!("# hrf catalog v{CATALOG_VERSION}\n");
    for s in spaces {
        let dims: Vec<String> = s.dims.iter().map(u32::to_string).collect();
        let consts: Vec<String> = s
            .constants
            .iter()
            .map(|(&(i, j, k), c)| format!("c{i}{j}^{k}={c}"))
            .collect();
        out.push_str(&format!(
            "{}\tr={}\tdims=({})\t{}\n",
            s.name,
            s.r(),
            dims.join(","),
            consts.join(" ")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_constants() {
        assert_eq!(make_r2_space(8, 2).unwrap().constant(1, 1, 2), q(1, 1));
        assert_eq!(make_r2_space(28, 2).unwrap().constant(1, 1, 2), q(14, 9));
        assert_eq!(make_r2_space(1, 1).unwrap().constant(1, 1, 2), q(1, 5));
        assert!(matches!(
            make_r2_space(0, 3),
            Err(Error::NonPositiveDimension { index: 1, .. })
        ));
    }

    #[test]
    fn r3_constants() {
        let s = make_r3_space(1, 1, 1).unwrap();
        assert_eq!(s.constant(1, 1, 2), q(1, 7));
        assert_eq!(s.constant(1, 2, 3), q(1, 7));
        // d1 d2 + 2 d1 d3 - d2 d3 = 10 + 20 - 100 < 0
        assert!(matches!(
            make_r3_space(1, 10, 10),
            Err(Error::NegativeConstant { .. })
        ));
        assert!(make_r3_space(1, -1, 1).is_err());
    }

    #[test]
    fn constant_lookup_is_symmetric() {
        let s = get_space("E8/U(1)xSU(2)xSU(3)xSU(5)").unwrap();
        for (i, j, k) in [(3, 3, 6), (3, 6, 3), (6, 3, 3)] {
            assert_eq!(s.constant(i, j, k), int(2));
        }
        assert_eq!(s.constant(1, 2, 3), s.constant(3, 2, 1));
        assert_eq!(s.constant(1, 1, 1), int(0));
        assert_eq!(s.constant(2, 2, 3), int(0));
    }

    #[test]
    fn bracket_entries_cover_permutations() {
        let s = make_r2_space(8, 2).unwrap();
        // (1,1,2) has three distinct orderings
        assert_eq!(s.bracket_entries().len(), 3);
        let s3 = make_r3_space(4, 2, 4).unwrap();
        assert_eq!(s3.bracket_entries().len(), 3 + 6);
    }

    #[test]
    fn unknown_name_lists_alternatives() {
        let err = get_space("SU(3)/T2").unwrap_err().to_string();
        assert!(err.contains("G2/U(2)#r2"), "{err}");
        assert_eq!(get_space("M*").unwrap().name(), M_STAR);
    }

    #[test]
    fn rejects_bad_constants() {
        assert!(FlagSpace::new("x", vec![1, 1], [((1, 1, 3), int(1))]).is_err());
        assert!(FlagSpace::new("x", vec![1, 1], [((1, 1, 2), int(-1))]).is_err());
        assert!(FlagSpace::new("x", vec![1], []).is_err());
        assert!(
            FlagSpace::new("x", vec![1, 1], [((1, 1, 2), int(1)), ((1, 1, 2), int(2))]).is_err()
        );
    }

    #[test]
    fn text_dump_has_one_line_per_space() {
        let text = dump_text(builtin_catalog());
        assert_eq!(text.lines().count(), builtin_catalog().len() + 1);
        assert!(text.contains("c13^4=2/3"));
    }

    #[test]
    fn json_version_is_checked() {
        let mut file = to_catalog_file(builtin_catalog());
        file.version = 99;
        let text = serde_json::to_string(&file).unwrap();
        assert!(matches!(parse_json(&text), Err(Error::Catalog(_))));
    }
}
