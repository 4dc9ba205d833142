//! Hand-written copies of the published Ricci components and polynomial systems,
//! evaluated in floating point and compared with the generic constructions.

use hrf_core::catalog::{builtin_catalog, get_space, make_r3_space, FlagSpace, M_STAR};
use hrf_core::dynamics::polynomialize;
use hrf_core::poincare::{chart_system, infinity_system};
use hrf_core::ricci::{ricci_components, scalar_curvature};
use hrf_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(s: &FlagSpace, i: usize, j: usize, k: usize) -> f64 {
    let q = s.constant(i, j, k);
    *q.numer() as f64 / *q.denom() as f64
}

fn d(s: &FlagSpace, i: usize) -> f64 {
    s.dims()[i - 1] as f64
}

/// `(c / (2 d)) (x_a / (x_b x_c) - x_b / (x_a x_c) - x_c / (x_a x_b))`, the term of `ric_a`
/// coming from a triple of distinct indices.
fn tri(cc: f64, da: f64, xa: f64, xb: f64, xc: f64) -> f64 {
    cc / (2.0 * da) * (xa / (xb * xc) - xb / (xa * xc) - xc / (xa * xb))
}

/// Printed Ricci components, indices one-based as in the formulas.
fn printed_ric(s: &FlagSpace, x: &[f64]) -> Vec<f64> {
    let v = |i: usize| x[i - 1];
    let h = |i: usize| 0.5 / v(i);
    // terms of c_ii^k type: -c/(2 d_i) x_k / x_i^2 on ric_i and c/(4 d_k) (x_k / x_i^2 - 2 / x_k) on ric_k
    let sq_low = |cc: f64, i: usize, k: usize| -cc / (2.0 * d(s, i)) * v(k) / (v(i) * v(i));
    let sq_high =
        |cc: f64, i: usize, k: usize| cc / (4.0 * d(s, k)) * (v(k) / (v(i) * v(i)) - 2.0 / v(k));
    match s.r() {
        2 => {
            let c112 = c(s, 1, 1, 2);
            vec![h(1) + sq_low(c112, 1, 2), h(2) + sq_high(c112, 1, 2)]
        }
        3 => {
            let (c112, c123) = (c(s, 1, 1, 2), c(s, 1, 2, 3));
            vec![
                h(1) + sq_low(c112, 1, 2) + tri(c123, d(s, 1), v(1), v(2), v(3)),
                h(2) + sq_high(c112, 1, 2) + tri(c123, d(s, 2), v(2), v(1), v(3)),
                h(3) + tri(c123, d(s, 3), v(3), v(1), v(2)),
            ]
        }
        4 => {
            let (c112, c123, c134, c224) =
                (c(s, 1, 1, 2), c(s, 1, 2, 3), c(s, 1, 3, 4), c(s, 2, 2, 4));
            vec![
                h(1) + sq_low(c112, 1, 2)
                    + tri(c123, d(s, 1), v(1), v(2), v(3))
                    + tri(c134, d(s, 1), v(1), v(3), v(4)),
                h(2) + sq_low(c224, 2, 4)
                    + sq_high(c112, 1, 2)
                    + tri(c123, d(s, 2), v(2), v(1), v(3)),
                h(3) + tri(c123, d(s, 3), v(3), v(1), v(2)) + tri(c134, d(s, 3), v(3), v(1), v(4)),
                h(4) + sq_high(c224, 2, 4) + tri(c134, d(s, 4), v(4), v(1), v(3)),
            ]
        }
        5 => {
            let (c112, c123, c134, c145) =
                (c(s, 1, 1, 2), c(s, 1, 2, 3), c(s, 1, 3, 4), c(s, 1, 4, 5));
            let (c224, c235) = (c(s, 2, 2, 4), c(s, 2, 3, 5));
            vec![
                h(1) + sq_low(c112, 1, 2)
                    + tri(c123, d(s, 1), v(1), v(2), v(3))
                    + tri(c134, d(s, 1), v(1), v(3), v(4))
                    + tri(c145, d(s, 1), v(1), v(4), v(5)),
                h(2) + sq_high(c112, 1, 2)
                    + sq_low(c224, 2, 4)
                    + tri(c123, d(s, 2), v(2), v(1), v(3))
                    + tri(c235, d(s, 2), v(2), v(3), v(5)),
                h(3) + tri(c123, d(s, 3), v(3), v(1), v(2))
                    + tri(c134, d(s, 3), v(3), v(1), v(4))
                    + tri(c235, d(s, 3), v(3), v(2), v(5)),
                h(4) + sq_high(c224, 2, 4)
                    + tri(c134, d(s, 4), v(4), v(1), v(3))
                    + tri(c145, d(s, 4), v(4), v(1), v(5)),
                h(5) + tri(c235, d(s, 5), v(5), v(2), v(3)) + tri(c145, d(s, 5), v(5), v(1), v(4)),
            ]
        }
        6 => {
            let (c112, c123, c134, c145, c156) = (
                c(s, 1, 1, 2),
                c(s, 1, 2, 3),
                c(s, 1, 3, 4),
                c(s, 1, 4, 5),
                c(s, 1, 5, 6),
            );
            let (c224, c235, c246, c336) =
                (c(s, 2, 2, 4), c(s, 2, 3, 5), c(s, 2, 4, 6), c(s, 3, 3, 6));
            vec![
                h(1) + sq_low(c112, 1, 2)
                    + tri(c123, d(s, 1), v(1), v(2), v(3))
                    + tri(c134, d(s, 1), v(1), v(3), v(4))
                    + tri(c145, d(s, 1), v(1), v(4), v(5))
                    + tri(c156, d(s, 1), v(1), v(5), v(6)),
                h(2) + sq_high(c112, 1, 2)
                    + sq_low(c224, 2, 4)
                    + tri(c123, d(s, 2), v(2), v(1), v(3))
                    + tri(c235, d(s, 2), v(2), v(3), v(5))
                    + tri(c246, d(s, 2), v(2), v(4), v(6)),
                h(3) + sq_low(c336, 3, 6)
                    + tri(c123, d(s, 3), v(3), v(1), v(2))
                    + tri(c134, d(s, 3), v(3), v(1), v(4))
                    + tri(c235, d(s, 3), v(3), v(2), v(5)),
                h(4) + sq_high(c224, 2, 4)
                    + tri(c134, d(s, 4), v(4), v(1), v(3))
                    + tri(c145, d(s, 4), v(4), v(1), v(5))
                    + tri(c246, d(s, 4), v(4), v(2), v(6)),
                h(5) + tri(c145, d(s, 5), v(5), v(1), v(4))
                    + tri(c235, d(s, 5), v(5), v(2), v(3))
                    + tri(c156, d(s, 5), v(5), v(1), v(6)),
                h(6) + sq_high(c336, 3, 6)
                    + tri(c156, d(s, 6), v(6), v(1), v(5))
                    + tri(c246, d(s, 6), v(6), v(2), v(4)),
            ]
        }
        _ => unreachable!(),
    }
}

fn random_point(rng: &mut ChaCha8Rng, r: usize) -> Vec<f64> {
    (0..r).map(|_| rng.gen_range(0.1..5.0)).collect()
}

fn rel_close(a: f64, b: f64, scale: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * scale.max(1e-300)
}

#[test]
fn ricci_matches_printed_formulas_for_every_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in builtin_catalog() {
        for _ in 0..200 {
            let x = random_point(&mut rng, s.r());
            let got = ricci_components(s, &x).unwrap();
            let want = printed_ric(s, &x);
            let scale = x.iter().map(|v| 1.0 / v).sum::<f64>() * 10.0;
            for (g, w) in got.ric.iter().zip(&want) {
                assert!(
                    rel_close(*g, *w, scale, 1e-12),
                    "{} at {x:?}: {g} vs {w}",
                    s.name()
                );
            }
            let scal: f64 = want.iter().enumerate().map(|(i, r)| d(s, i + 1) * r).sum();
            assert!(rel_close(
                got.scal,
                scal,
                scale * s.total_dim() as f64,
                1e-12
            ));
        }
    }
}

#[test]
fn printed_scalar_curvature_r4() {
    let s = get_space(M_STAR).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let x = random_point(&mut rng, 4);
        let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
        let want = 0.5 * (1..=4).map(|i| d(&s, i) / x[i - 1]).sum::<f64>()
            - c(&s, 1, 2, 3) / 2.0 * (x1 / (x2 * x3) + x2 / (x1 * x3) + x3 / (x1 * x2))
            - c(&s, 1, 3, 4) / 2.0 * (x1 / (x3 * x4) + x3 / (x1 * x4) + x4 / (x1 * x3))
            - c(&s, 1, 1, 2) / 4.0 * (x2 / (x1 * x1) + 2.0 / x2)
            - c(&s, 2, 2, 4) / 4.0 * (x4 / (x2 * x2) + 2.0 / x4);
        let got = scalar_curvature(&s, &x).unwrap();
        assert!((got - want).abs() <= 1e-11 * want.abs().max(100.0));
    }
}

#[test]
fn r3_structure_constants_from_dimensions() {
    for (d1, d2, d3) in [(108i64, 54i64, 4i64), (4, 2, 4), (7, 3, 5), (1, 1, 1)] {
        let s = make_r3_space(d1, d2, d3).unwrap();
        let (a, b, cc) = (d1 as i128, d2 as i128, d3 as i128);
        let den = a + 4 * b + 9 * cc;
        assert_eq!(
            s.constant(1, 1, 2),
            Rational::new(a * b + 2 * a * cc - b * cc, den)
        );
        assert_eq!(s.constant(1, 2, 3), Rational::new(cc * (a + b), den));
    }
    for name in ["E8/E6xSU(2)xU(1)", "G2/U(2)#r3", "E7/SU(6)xSU(2)xU(1)"] {
        let s = get_space(name).unwrap();
        let dims = s.dims();
        let t = make_r3_space(dims[0] as i64, dims[1] as i64, dims[2] as i64).unwrap();
        assert_eq!(s.constants(), t.constants());
    }
}

/// The printed r = 3 system, with the dimensions left symbolic.
fn printed_rf3(dd: [f64; 3], x: [f64; 3]) -> [f64; 3] {
    let [d1, d2, d3] = dd;
    let [x1, x2, x3] = x;
    let rf1 = -2.0
        * d2
        * x1
        * (d1 * d3 * x1.powi(3) + d2 * d3 * x1.powi(3)
            - d1 * d3 * x1 * x2 * x2
            - d2 * d3 * x1 * x2 * x2
            + d1 * d1 * x1 * x2 * x3
            + 4.0 * d1 * d2 * x1 * x2 * x3
            + 9.0 * d1 * d3 * x1 * x2 * x3
            - d1 * d2 * x2 * x2 * x3
            - 2.0 * d1 * d3 * x2 * x2 * x3
            + d2 * d3 * x2 * x2 * x3
            - d1 * d3 * x1 * x3 * x3
            - d2 * d3 * x1 * x3 * x3);
    let rf2 = -d1
        * x2
        * (-2.0 * d1 * d3 * x1.powi(3) - 2.0 * d2 * d3 * x1.powi(3)
            + 2.0 * d1 * d3 * x1 * x2 * x2
            + 2.0 * d2 * d3 * x1 * x2 * x2
            + 8.0 * d2 * d2 * x1 * x1 * x3
            - 4.0 * d1 * d3 * x1 * x1 * x3
            + 20.0 * d2 * d3 * x1 * x1 * x3
            + d1 * d2 * x2 * x2 * x3
            + 2.0 * d1 * d3 * x2 * x2 * x3
            - d2 * d3 * x2 * x2 * x3
            - 2.0 * d1 * d3 * x1 * x3 * x3
            - 2.0 * d2 * d3 * x1 * x3 * x3);
    let rf3 = 2.0
        * d1
        * d2
        * x1
        * x3
        * (d1 * x1 * x1 + d2 * x1 * x1 - d1 * x1 * x2 - 4.0 * d2 * x1 * x2 - 9.0 * d3 * x1 * x2
            + d1 * x2 * x2
            + d2 * x2 * x2
            - d1 * x3 * x3
            - d2 * x3 * x3);
    [rf1, rf2, rf3]
}

/// The printed r = 3 system at infinity in chart coordinates.
fn printed_inf3(dd: [f64; 3], u: [f64; 2]) -> [f64; 2] {
    let [d1, d2, d3] = dd;
    let [x1, x2] = u;
    let f1 = x1
        * (2.0 * d1 * d1 * d3 + 4.0 * d1 * d2 * d3 + 2.0 * d2 * d2 * d3
            - 2.0 * d1 * d1 * d3 * x1 * x1
            - 4.0 * d1 * d2 * d3 * x1 * x1
            - 2.0 * d2 * d2 * d3 * x1 * x1
            - 8.0 * d1 * d2 * d2 * x2
            + 4.0 * d1 * d1 * d3 * x2
            - 20.0 * d1 * d2 * d3 * x2
            + 2.0 * d1 * d1 * d2 * x1 * x2
            + 8.0 * d1 * d2 * d2 * x1 * x2
            + 18.0 * d1 * d2 * d3 * x1 * x2
            - d1 * d1 * d2 * x1 * x1 * x2
            - 2.0 * d1 * d2 * d2 * x1 * x1 * x2
            - 2.0 * d1 * d1 * d3 * x1 * x1 * x2
            - 3.0 * d1 * d2 * d3 * x1 * x1 * x2
            + 2.0 * d2 * d2 * d3 * x1 * x1 * x2
            + 2.0 * d1 * d1 * d3 * x2 * x2
            - 2.0 * d2 * d2 * d3 * x2 * x2);
    let f2 = -2.0
        * d2
        * x2
        * (-d1 * d1 - d1 * d2 - d1 * d3 - d2 * d3
            + d1 * d1 * x1
            + 4.0 * d1 * d2 * x1
            + 9.0 * d1 * d3 * x1
            - d1 * d1 * x1 * x1
            - d1 * d2 * x1 * x1
            + d1 * d3 * x1 * x1
            + d2 * d3 * x1 * x1
            - d1 * d1 * x1 * x2
            - 4.0 * d1 * d2 * x1 * x2
            - 9.0 * d1 * d3 * x1 * x2
            + d1 * d2 * x1 * x1 * x2
            + 2.0 * d1 * d3 * x1 * x1 * x2
            - d2 * d3 * x1 * x1 * x2
            + d1 * d1 * x2 * x2
            + d1 * d2 * x2 * x2
            + d1 * d3 * x2 * x2
            + d2 * d3 * x2 * x2);
    [f1, f2]
}

fn printed_rf_m_star(x: [f64; 4]) -> [f64; 4] {
    let [x1, x2, x3, x4] = x;
    [
        x1 * x2
            * (-5.0 * x4 * x1.powi(3) + x4 * x4 * x1 * x2 - x1.powi(3) * x2
                + 5.0 * x4 * x1 * x2 * x2
                - 60.0 * x4 * x1 * x2 * x3
                + 10.0 * x4 * x2 * x2 * x3
                + 5.0 * x4 * x1 * x3 * x3
                + x1 * x2 * x3 * x3),
        2.0 * x2
            * x4
            * (4.0 * x1.powi(3) * x2 - 4.0 * x1 * x2.powi(3) + x4 * x1 * x1 * x3
                - 22.0 * x1 * x1 * x2 * x3
                - 4.0 * x2.powi(3) * x3
                + 4.0 * x1 * x2 * x3 * x3),
        3.0 * x1
            * x2
            * x3
            * (5.0 * x4 * x1 * x1 + x4 * x4 * x2 - 20.0 * x4 * x1 * x2
                + x1 * x1 * x2
                + 5.0 * x4 * x2 * x2
                - 5.0 * x4 * x3 * x3
                - x2 * x3 * x3),
        -2.0 * x1
            * x4
            * (8.0 * x4 * x4 * x2 * x2 - 8.0 * x1 * x1 * x2 * x2
                + 5.0 * x4 * x4 * x1 * x3
                + 20.0 * x1 * x2 * x2 * x3
                - 8.0 * x2 * x2 * x3 * x3),
    ]
}

fn printed_inf_m_star(u: [f64; 3]) -> [f64; 3] {
    let [x1, x2, x3] = u;
    [
        -x1 * (-x1 * x1 + x1 * x1 * x2 * x2 - 13.0 * x1 * x3
            + 13.0 * x1.powi(3) * x3
            + 44.0 * x1 * x2 * x3
            - 60.0 * x1 * x1 * x2 * x3
            + 18.0 * x1.powi(3) * x2 * x3
            - 3.0 * x1 * x2 * x2 * x3
            + x1 * x1 * x3 * x3
            - 2.0 * x2 * x3 * x3),
        -2.0 * x1
            * x2
            * (-2.0 * x1 + 2.0 * x1 * x2 * x2 - 10.0 * x3 + 30.0 * x1 * x3
                - 5.0 * x1 * x1 * x3
                - 30.0 * x1 * x2 * x3
                + 5.0 * x1 * x1 * x2 * x3
                + 10.0 * x2 * x2 * x3
                - x1 * x3 * x3),
        -x3 * (-17.0 * x1 * x1 + 40.0 * x1 * x1 * x2 - 15.0 * x1 * x1 * x2 * x2 - 5.0 * x1 * x3
            + 5.0 * x1.powi(3) * x3
            - 60.0 * x1 * x1 * x2 * x3
            + 10.0 * x1.powi(3) * x2 * x3
            + 5.0 * x1 * x2 * x2 * x3
            + 17.0 * x1 * x1 * x3 * x3
            + 10.0 * x2 * x3 * x3),
    ]
}

fn printed_rf_r5(x: [f64; 5]) -> [f64; 5] {
    let [x1, x2, x3, x4, x5] = x;
    [
        -x1 * x2
            * (x1.powi(3) * x2 * x3 - x1 * x2 * x3 * x4 * x4 + 3.0 * x1.powi(3) * x2 * x5
                - 3.0 * x1 * x2 * x3 * x3 * x5
                + 6.0 * x1.powi(3) * x4 * x5
                - 6.0 * x1 * x2 * x2 * x4 * x5
                + 60.0 * x1 * x2 * x3 * x4 * x5
                - 9.0 * x2 * x2 * x3 * x4 * x5
                - 6.0 * x1 * x3 * x3 * x4 * x5
                - 3.0 * x1 * x2 * x4 * x4 * x5
                - x1 * x2 * x3 * x5 * x5),
        2.0 * x2
            * x4
            * (-x1 * x1 * x2.powi(3) + x1 * x1 * x2 * x3 * x3 + 4.0 * x1.powi(3) * x2 * x5
                - 4.0 * x1 * x2.powi(3) * x5
                - 24.0 * x1 * x1 * x2 * x3 * x5
                - 3.0 * x2.powi(3) * x3 * x5
                + 4.0 * x1 * x2 * x3 * x3 * x5
                + 2.0 * x1 * x1 * x3 * x4 * x5
                + x1 * x1 * x2 * x5 * x5),
        3.0 * x1
            * x2
            * x3
            * (x1 * x2 * x2 * x4 - x1 * x3 * x3 * x4 + 2.0 * x1 * x1 * x2 * x5
                - 2.0 * x2 * x3 * x3 * x5
                + 4.0 * x1 * x1 * x4 * x5
                - 20.0 * x1 * x2 * x4 * x5
                + 4.0 * x2 * x2 * x4 * x5
                - 4.0 * x3 * x3 * x4 * x5
                + 2.0 * x2 * x4 * x4 * x5
                + x1 * x4 * x5 * x5),
        -2.0 * x1
            * x4
            * (-2.0 * x1 * x1 * x2 * x2 * x3 + 2.0 * x2 * x2 * x3 * x4 * x4
                - 6.0 * x1 * x1 * x2 * x2 * x5
                + 24.0 * x1 * x2 * x2 * x3 * x5
                - 6.0 * x2 * x2 * x3 * x3 * x5
                + 6.0 * x2 * x2 * x4 * x4 * x5
                + 3.0 * x1 * x3 * x4 * x4 * x5
                - 2.0 * x2 * x2 * x3 * x5 * x5),
        5.0 * x1
            * x2
            * x5
            * (2.0 * x1 * x1 * x2 * x3 + 3.0 * x1 * x2 * x2 * x4 - 12.0 * x1 * x2 * x3 * x4
                + 3.0 * x1 * x3 * x3 * x4
                + 2.0 * x2 * x3 * x4 * x4
                - 2.0 * x2 * x3 * x5 * x5
                - 3.0 * x1 * x4 * x5 * x5),
    ]
}

fn assert_all_close(got: &[f64], want: &[f64], what: &str) {
    let scale = want.iter().chain(got).fold(1.0f64, |m, v| m.max(v.abs()));
    for (g, w) in got.iter().zip(want) {
        assert!(
            (g - w).abs() <= 1e-11 * scale,
            "{what}: {got:?} vs {want:?}"
        );
    }
}

#[test]
fn r3_polynomial_systems_match_printed() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for s in builtin_catalog().iter().filter(|s| s.r() == 3) {
        let dd = [d(s, 1), d(s, 2), d(s, 3)];
        let sys = polynomialize(s);
        let inf = infinity_system(&chart_system(&sys));
        for _ in 0..100 {
            let x = [
                rng.gen_range(0.1..4.0),
                rng.gen_range(0.1..4.0),
                rng.gen_range(0.1..4.0),
            ];
            assert_all_close(&sys.eval(&x), &printed_rf3(dd, x), s.name());
            let u = [x[0], x[1]];
            assert_all_close(&inf.eval(&u), &printed_inf3(dd, u), s.name());
        }
    }
}

#[test]
fn m_star_systems_match_printed() {
    let s = get_space(M_STAR).unwrap();
    let sys = polynomialize(&s);
    let inf = infinity_system(&chart_system(&sys));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let x: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.1..4.0));
        assert_all_close(&sys.eval(&x), &printed_rf_m_star(x), "RF");
        let u = [x[0], x[1], x[2]];
        assert_all_close(&inf.eval(&u), &printed_inf_m_star(u), "infinity");
    }
}

#[test]
fn r5_system_matches_printed() {
    let s = get_space("E8/U(1)xSU(4)xSU(5)").unwrap();
    let sys = polynomialize(&s);
    assert_eq!(sys.degree, 7);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let x: [f64; 5] = std::array::from_fn(|_| rng.gen_range(0.1..4.0));
        assert_all_close(&sys.eval(&x), &printed_rf_r5(x), "r=5");
    }
}
