use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Pow, Signed, Zero};
use proptest::prelude::*;

use ptheta::spectrum::track::{annulus, MAX_START};
use ptheta::spectrum::*;
use ptheta::theta::series::tri;
use ptheta::theta::theta_jet;
use ptheta::{BallComplex, SpectrumError};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Exact `θ_x(q, x)` for real `q`, `x` given as doubles.
fn exact_theta_x(q: f64, x: f64, n: usize) -> BigRational {
    let q = BigRational::from_f64(q).unwrap();
    let x = BigRational::from_f64(x).unwrap();
    let mut s = BigRational::zero();
    for j in 1..n {
        let qp: BigRational = Pow::pow(&q, BigInt::from(tri(j)));
        let xp: BigRational = Pow::pow(&x, BigInt::from(j - 1));
        s += BigRational::from_integer(BigInt::from(j)) * qp * xp;
    }
    s
}

fn first_point() -> SpectralPoint {
    find_double_zero(re(0.31), re(-7.5), 1e-12).unwrap()
}

#[test]
fn first_spectral_number_from_nearby_seed() {
    let p = first_point();
    assert!((p.q_star.re - 0.3092493386).abs() < 1e-9, "{}", p.q_star);
    // the double zero is 1.9e-8 away from -7.5032559833; see the bracket below
    assert!((p.x_star.re + 7.5032559833).abs() < 5e-8, "{}", p.x_star);
    assert!(p.residual_theta < 1e-12 && p.residual_theta_x < 1e-12 && p.theta_xx_modulus > 1e-6);
}

#[test]
fn double_zero_bracketed_by_exact_sign_change() {
    // θ_x(q*, ·) has a simple zero at x*; exact evaluation brackets it to 2e-10
    let p = first_point();
    let (q, x) = (p.q_star.re, p.x_star.re);
    let lo = exact_theta_x(q, x - 1e-10, 60);
    let hi = exact_theta_x(q, x + 1e-10, 60);
    assert!(lo.is_negative() != hi.is_negative());
    let far = exact_theta_x(q, -7.5032559833, 60);
    assert_eq!(far.is_negative(), lo.is_negative());
}

#[test]
fn seeds_at_lambda0_reach_the_same_point() {
    let p = first_point();
    for x in [-5.0, -7.5, -10.0] {
        let r = find_double_zero(re(0.309016994374947), re(x), 1e-12).unwrap();
        assert!((r.q_star - p.q_star).norm() < 1e-11);
        assert!((r.x_star - p.x_star).norm() < 1e-9);
    }
}

#[test]
fn truncated_solver_lands_on_lambda0() {
    let p = find_double_zero_in(SolverMode::Truncated(5), re(0.309), re(-7.5), 1e-12).unwrap();
    assert!((p.q_star.re - 0.309016994374947).abs() < 1e-10, "{}", p.q_star);
    assert_eq!(p.q_star.im, 0.0);
}

#[test]
fn solver_reports_bad_input() {
    assert!(matches!(find_double_zero(re(1.2), re(-1.0), 1e-9), Err(SpectrumError::InvalidArgument(_))));
    assert!(matches!(find_double_zero(re(0.3), re(0.0), 1e-9), Err(SpectrumError::InvalidArgument(_))));
}

#[test]
fn positive_scan_orders_and_fits() {
    let pts = real_spectrum_scan(30, 1e-11).unwrap();
    assert_eq!(pts.len(), 30);
    assert!((pts[0].q_star.re - 0.3092493386).abs() < 1e-9);
    for w in pts.windows(2) {
        assert!(w[0].q_star.re < w[1].q_star.re);
    }
    for p in &pts {
        assert!(p.q_star.re > 0.0 && p.q_star.re < 1.0 && p.x_star.re < 0.0);
        assert!(p.q_star.im.abs() < 1e-11 && p.x_star.im.abs() < 1e-11);
        assert!(p.residual_theta < 1e-11 && p.residual_theta_x < 1e-11 && p.theta_xx_modulus > 1e-6);
    }
    let fit = fit_positive_law(&pts, 0.0, 10, 20);
    assert!(fit.relative_change < 0.25, "{fit:?}");
    let m = AsymptoticModel::positive();
    for j in 1..=40 {
        let v = m.prediction(j);
        assert!(v > 0.0 && v < 1.0);
    }
}

#[test]
fn negative_scan_examples() {
    assert!(negative_spectrum_scan(0, 1e-10).unwrap().is_empty());
    let pts = negative_spectrum_scan(20, 1e-10).unwrap();
    assert_eq!(pts.len(), 20);
    for w in pts.windows(2) {
        assert!(w[1].point.q_star.re < w[0].point.q_star.re);
    }
    for p in &pts {
        assert!(p.point.q_star.re > -1.0 && p.point.q_star.re < 0.0);
        assert!(p.point.residual_theta < 1e-10 && p.point.residual_theta_x < 1e-10);
    }
    // per family, the distance of |y| to e^{π/2} shrinks up to the 0.2 slack
    let limit = negative_scan_notes().y_limit;
    assert!((limit - (PI / 2.0).exp()).abs() < 1e-15);
    for branch in [NegativeBranch::NegativeX, NegativeBranch::PositiveX] {
        let d: Vec<f64> = pts
            .iter()
            .filter(|p| p.branch == branch && p.point.index_label.unwrap() >= 5)
            .map(|p| (p.point.x_star.norm() - limit).abs())
            .collect();
        assert!(d.len() >= 5);
        for w in d.windows(2) {
            assert!(w[1] <= w[0] + 0.2, "{branch:?}: {d:?}");
        }
    }
}

fn real_path(to: f64) -> Vec<Complex64> {
    radial_path(re(to), 0.01, 60)
}

#[test]
fn first_two_branches_at_022() {
    let x1 = track_zero(1, &real_path(0.22), 1e-14).unwrap().samples.last().unwrap().xi;
    let x2 = track_zero(2, &real_path(0.22), 1e-14).unwrap().samples.last().unwrap().xi;
    assert!(x1.re > -7.0 && x1.re < -6.0, "{x1}");
    assert!(x2.re > -21.0 && x2.re < -19.0, "{x2}");
}

#[test]
fn third_branch_stays_in_its_annulus() {
    let t = track_zero(3, &real_path(0.2), 1e-14).unwrap();
    let xi = t.samples.last().unwrap().xi;
    let (lo, hi) = annulus(3, 0.2);
    assert!(xi.norm() > lo && xi.norm() < hi);
    assert!((lo - 0.2f64.powf(-2.5)).abs() < 1e-9 && (hi - 0.2f64.powf(-3.5)).abs() < 1e-9);
}

#[test]
fn tracked_samples_are_zeros() {
    let t = track_zero(2, &real_path(0.3), 1e-13).unwrap();
    for s in &t.samples {
        let j = theta_jet(BallComplex::point(s.q), BallComplex::point(s.xi), 1e-14).unwrap().c;
        // a relative Newton step below 1e-13 means |θ| < 1e-13 |ξ θ_x|
        assert!(j[0].abs_upper() <= 2e-13 * (s.xi * j[1].center).norm() + 1e-13);
    }
    assert!(matches!(track_zero(1, &[re(0.2)], 1e-12), Err(SpectrumError::InvalidArgument(_))));
    assert!(MAX_START <= 0.05);
}

#[test]
fn laurent_leading_coefficients_and_gaps() {
    for j in 1..=5 {
        let c = laurent_coefficients(j, 12, 0.08).unwrap();
        assert!((c[0] + 1.0).norm() < 1e-8, "j = {j}: {}", c[0]);
    }
    // ξ_3 = -q^{-3} + O(q^3): the powers -2 .. 2 vanish
    let c = laurent_coefficients(3, 10, 0.08).unwrap();
    for (m, cm) in c.iter().enumerate().take(6).skip(1) {
        assert!(cm.norm() < 1e-6, "q^{}: {cm}", m as i32 - 3);
    }
    // ξ_1 = -1/q - 1 - 2q - 4q^2 + …
    let c = laurent_coefficients(1, 6, 0.08).unwrap();
    for (k, want) in [-1.0, -1.0, -2.0, -4.0].iter().enumerate() {
        assert!((c[k] - want).norm() < 1e-8, "{k}: {}", c[k]);
    }
    assert!(laurent_coefficients(1, 4, 0.2).is_err());
}

#[test]
fn laurent_round_trip() {
    for j in 1..=5u32 {
        let c = laurent_coefficients(j, 40, 0.1).unwrap();
        for r in [0.04, 0.05, 0.08] {
            let t = track_zero(j, &radial_path(re(r), 0.01, 20), 1e-14).unwrap();
            let xi = t.samples.last().unwrap().xi;
            let s = eval_laurent(j, &c, re(r));
            assert!((s - xi).norm() <= 1e-7 * xi.norm(), "j = {j}, r = {r}: {s} vs {xi}");
        }
    }
}

#[test]
fn reciprocal_sums() {
    let r = reciprocal_sum_check(re(0.2), 12).unwrap();
    assert!(r.residual < 1e-6 && r.residual <= r.tail_bound, "{r:?}");
    let r = reciprocal_sum_check(re(0.01), 5).unwrap();
    assert!(r.residual < 1e-10);
    let res: Vec<f64> = (4..=12).map(|j| reciprocal_sum_check(re(0.25), j).unwrap().residual).collect();
    for w in res.windows(2) {
        assert!(w[1] <= w[0], "{res:?}");
    }
    assert!(reciprocal_sum_check(re(0.4), 5).is_err());
}

#[test]
fn omega_examples() {
    assert!(omega_k_unique_zero(re(0.5), 12, 0.1).unwrap());
    let c = omega_k_count(re(0.3), 3, 2.0).unwrap();
    assert_ne!(c.count, 1);
    assert!(!omega_k_unique_zero(re(0.3), 3, 2.0).unwrap());
    assert!(omega_k_count(re(0.05), 3, 0.1).is_err());
}

#[test]
fn omega_rim_case_has_a_neighbouring_zero_on_the_circle() {
    // at q = 0.9, |μ_{k-1} - μ_k| = 0.1 |μ_k|: the circle runs through the
    // next Jacobi zero, so the count cannot be resolved
    let (q, k) = (0.9f64, 40);
    let mu = |k: i32| -q.powi(-k);
    assert!(((mu(k - 1) - mu(k)).abs() - 0.1 * mu(k).abs()).abs() < 1e-12 * mu(k).abs());
    match omega_k_count(re(q), k as u32, 0.1) {
        Err(SpectrumError::BoundaryZero { .. }) => {}
        Ok(c) => assert!(c.min_relative_modulus < 1e-2 || c.count != 1, "{c:?}"),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn modulus_estimates() {
    let e31 = min_zero_modulus_estimate(0.31, 6, 128).unwrap();
    let xi1 = track_zero(1, &real_path(0.31), 1e-13).unwrap().samples.last().unwrap().xi.norm();
    assert!(e31 <= xi1 && e31 >= 1.0, "{e31} vs {xi1}");
    let e20 = min_zero_modulus_estimate(0.2, 6, 128).unwrap();
    assert!(e20 > 0.2f64.powf(-0.5) && e20 < 0.2f64.powf(-1.5), "{e20}");
    let e25 = min_zero_modulus_estimate(0.25, 6, 128).unwrap();
    assert!(e20 >= e25 && e25 >= e31);
}

#[test]
fn rho_trend_examples() {
    let t = rho_trend(&[0.108, 0.31], 12);
    assert_eq!(t.rows[0].j0, Some(1));
    assert!(t.rows[1].j0.is_some_and(|j| j <= 3));
    assert!(t.note.contains("not certified"));
    let t = rho_trend(&[0.3, 0.5, 0.7, 0.9], 30);
    let j0: Vec<u32> = t.rows.iter().map(|r| r.j0.expect("finite j0")).collect();
    for w in j0.windows(2) {
        assert!(w[0] <= w[1], "{j0:?}");
    }
}

#[test]
fn seed_grid_finds_only_the_first_spectral_number() {
    let found = seed_grid_search(100, 0.31, 1e-10);
    assert!(!found.is_empty());
    let q1 = first_point().q_star;
    for p in &found {
        let d = (p.q_star - q1).norm().min((p.q_star - q1.conj()).norm());
        assert!(d < 1e-7, "{}", p.q_star);
        assert!(p.q_star.norm() <= 0.31 && p.q_star.re >= 0.29);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn no_branch_jump_inside_031(j in 3u32..9, phi in 0.0f64..6.283, r in 0.06f64..0.31) {
        let path = radial_path(Complex64::from_polar(r, phi), 0.02, 30);
        let t = track_zero(j, &path, 1e-13);
        prop_assert!(t.is_ok(), "{:?}", t.err());
    }

    #[test]
    fn real_seeds_give_real_points(dq in -0.003f64..0.003, dx in -0.3f64..0.3) {
        let p = find_double_zero(re(0.31 + dq), re(-7.5 + dx), 1e-11).unwrap();
        prop_assert!(p.q_star.im.abs() < 1e-11 && p.x_star.im.abs() < 1e-11);
    }
}
