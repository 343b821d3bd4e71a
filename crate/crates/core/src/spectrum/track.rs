//! Continuation of the zero branches `ξ_j(q) ~ -q^{-j}`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::SpectrumError;
use crate::theta::jet::{F, FQ, FX};
use crate::theta::fast::safe_div;
use crate::theta::theta_jet_fast;

/// `c_0`: below this modulus the annulus guard holds for every branch.
pub const C0: f64 = 0.2078750206;

/// Smallest accepted step in `q` before continuation gives up.
pub const MIN_STEP: f64 = 1e-6;

/// Largest modulus at which a track may start.
pub const MAX_START: f64 = 0.05;

const NEWTON_ITERS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroSample {
    pub q: Complex64,
    pub xi: Complex64,
    /// Relative size of the last Newton correction, `|θ / (ξ θ_x)|`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroTrack {
    pub j: u32,
    pub samples: Vec<ZeroSample>,
    /// Coefficients of `q^{-j}, q^{-j+1}, …` when computed.
    pub laurent_coeffs: Vec<Complex64>,
    /// Sub-steps inserted by step halving.
    pub refinements: usize,
}

/// `|q|^{-j+1/2} < |ξ_j| < |q|^{-j-1/2}`, enforced where it is known to
/// hold: for `j >= 3` on `|q| <= 1/3`, and for every `j` on `|q| <= c_0`.
pub fn guard_active(j: u32, q_abs: f64) -> bool {
    (j >= 3 && q_abs <= 1.0 / 3.0) || q_abs <= C0
}

pub fn annulus(j: u32, q_abs: f64) -> (f64, f64) {
    let j = f64::from(j);
    (q_abs.powf(-j + 0.5), q_abs.powf(-j - 0.5))
}

fn check_guard(j: u32, q: Complex64, xi: Complex64) -> Result<(), SpectrumError> {
    let qa = q.norm();
    if !guard_active(j, qa) {
        return Ok(());
    }
    let (lo, hi) = annulus(j, qa);
    let m = xi.norm();
    if m > lo && m < hi {
        Ok(())
    } else {
        Err(SpectrumError::BranchJump { j, q: q.to_string(), modulus: m, lo, hi })
    }
}

/// Newton on `θ(q, ·)`; returns the zero and the relative size of the last correction.
pub fn refine_zero(q: Complex64, x0: Complex64, tol: f64) -> Option<(Complex64, f64)> {
    let mut x = x0;
    for _ in 0..NEWTON_ITERS {
        let c = theta_jet_fast(q, x).jet.c;
        let dx = safe_div(c[F], c[FX]);
        if !dx.is_finite() {
            return None;
        }
        x -= dx;
        let rel = dx.norm() / x.norm();
        if rel <= tol {
            let c = theta_jet_fast(q, x).jet.c;
            return Some((x, (safe_div(c[F], c[FX]) / x).norm()));
        }
    }
    None
}

/// One continuation step; `None` if the corrector fails or lands too far
/// from the prediction for the branches to stay apart.
fn step(q0: Complex64, x0: Complex64, q1: Complex64, tol: f64) -> Option<(Complex64, f64)> {
    // ξ_j ~ -q^{-j}: predict in (ln q, ln x), where the leading term is linear
    let c = theta_jet_fast(q0, x0).jet.c;
    let slope = -safe_div(q0 * c[FQ], x0 * c[FX]);
    let pred = if slope.is_finite() { x0 * (slope * (q1 / q0).ln()).exp() } else { x0 };
    let (x1, res) = refine_zero(q1, pred, tol)?;
    // neighbouring branches sit a factor ~1/|q| away
    let sep = (1.0 / q1.norm() - 1.0).min(1.0);
    ((x1 - pred).norm() <= 0.1 * sep * pred.norm()).then_some((x1, res))
}

/// Continues `ξ_j` along `q_path`, which must start at `0 < |q| <= 0.05`.
pub fn track_zero(j: u32, q_path: &[Complex64], tol: f64) -> Result<ZeroTrack, SpectrumError> {
    if j == 0 || !(tol > 0.0) || q_path.is_empty() {
        return Err(SpectrumError::InvalidArgument("need j >= 1, tol > 0 and a non-empty path".into()));
    }
    let q_start = q_path[0];
    if !(q_start.norm() > 0.0 && q_start.norm() <= MAX_START) {
        return Err(SpectrumError::InvalidArgument(format!("path must start at 0 < |q| <= {MAX_START}, got {q_start}")));
    }
    if let Some(bad) = q_path.iter().find(|q| !(q.norm() < 1.0) || q.norm() == 0.0) {
        return Err(SpectrumError::InvalidArgument(format!("path leaves the punctured unit disk at {bad}")));
    }
    let seed = -q_start.inv().powi(j as i32);
    let (mut xi, res) = refine_zero(q_start, seed, tol)
        .ok_or_else(|| SpectrumError::NoConvergence { iterations: NEWTON_ITERS, residual: f64::NAN })?;
    check_guard(j, q_start, xi)?;
    let mut samples = vec![ZeroSample { q: q_start, xi, residual: res }];
    let mut refinements = 0;
    let mut q = q_start;
    for &target in &q_path[1..] {
        let mut h = 1.0f64;
        loop {
            let q_next = q + (target - q) * h;
            match step(q, xi, q_next, tol) {
                Some((x1, r1)) => {
                    check_guard(j, q_next, x1)?;
                    q = q_next;
                    xi = x1;
                    if h == 1.0 {
                        samples.push(ZeroSample { q, xi, residual: r1 });
                        break;
                    }
                    h = 1.0;
                }
                None => {
                    h *= 0.5;
                    refinements += 1;
                    if (target - q).norm() * h < MIN_STEP {
                        return Err(SpectrumError::StepTooSmall { j, q: q.to_string() });
                    }
                }
            }
        }
    }
    Ok(ZeroTrack { j, samples, laurent_coeffs: Vec::new(), refinements })
}

/// `n` points from modulus `r0` to `q_end`, geometric in modulus, at the argument of `q_end`.
pub fn radial_path(q_end: Complex64, r0: f64, n: usize) -> Vec<Complex64> {
    let (r1, phi) = q_end.to_polar();
    let n = n.max(2);
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            Complex64::from_polar(r0 * (r1 / r0).powf(t), phi)
        })
        .collect()
}

/// `n + 1` points once around `|q| = radius` starting at argument `phi0`; last equals first.
pub fn circle_path(radius: f64, phi0: f64, n: usize) -> Vec<Complex64> {
    (0..=n).map(|i| Complex64::from_polar(radius, phi0 + TAU * i as f64 / n as f64)).collect()
}

/// Laurent coefficients of `ξ_j` at `q^{-j}, q^{-j+1}, …`, from a discrete
/// Fourier transform of `q^j ξ_j(q)` sampled on `|q| = fit_radius`.
pub fn laurent_coefficients(j: u32, n_coeffs: usize, fit_radius: f64) -> Result<Vec<Complex64>, SpectrumError> {
    Ok(laurent_track(j, n_coeffs, fit_radius, 1e-14)?.laurent_coeffs)
}

/// The circle track used by [`laurent_coefficients`], with the coefficients filled in.
pub fn laurent_track(j: u32, n_coeffs: usize, fit_radius: f64, tol: f64) -> Result<ZeroTrack, SpectrumError> {
    if !(fit_radius > 0.0 && fit_radius <= 0.1) || n_coeffs == 0 {
        return Err(SpectrumError::InvalidArgument(format!("need 0 < fit_radius <= 0.1 and n_coeffs >= 1, got {fit_radius}, {n_coeffs}")));
    }
    let n = (2 * n_coeffs).next_power_of_two().max(256);
    let start = MAX_START.min(fit_radius);
    let mut path = radial_path(Complex64::new(fit_radius, 0.0), start, 8);
    path.extend(circle_path(fit_radius, 0.0, n).into_iter().skip(1));
    let mut track = track_zero(j, &path, tol)?;
    let circle = &track.samples[track.samples.len() - n - 1..];
    let mut g: Vec<Complex64> = circle[..n].iter().map(|s| s.xi * s.q.powi(j as i32)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut g);
    track.laurent_coeffs = g[..n_coeffs].iter().enumerate().map(|(m, c)| c / n as f64 / fit_radius.powi(m as i32)).collect();
    Ok(track)
}

/// `Σ_m c_m q^{m - j}` for coefficients from [`laurent_coefficients`].
pub fn eval_laurent(j: u32, coeffs: &[Complex64], q: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * q + c;
    }
    acc * q.powi(-(j as i32))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReciprocalSum {
    pub q: Complex64,
    pub j_max: u32,
    pub partial_sum: Complex64,
    /// Bound on `Σ_{j > j_max} 1/|ξ_j|` from `|ξ_j| >= |q|^{-j+1/2}`.
    pub tail_bound: f64,
    /// `|Σ_{j <= j_max} 1/ξ_j + q|`.
    pub residual: f64,
}

/// Checks `Σ_j 1/ξ_j(q) = -q`, the coefficient of `x` in `θ = Π (1 - x/ξ_j)`.
pub fn reciprocal_sum_check(q: Complex64, j_max: u32) -> Result<ReciprocalSum, SpectrumError> {
    let qa = q.norm();
    if !(qa > 0.0 && qa <= 0.31) || j_max == 0 {
        return Err(SpectrumError::InvalidArgument(format!("need 0 < |q| <= 0.31 and j_max >= 1, got {q}, {j_max}")));
    }
    let path = radial_path(q, MAX_START.min(qa), 40);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 1..=j_max {
        let t = track_zero(j, &path, 1e-15)?;
        sum += t.samples.last().expect("non-empty track").xi.inv();
    }
    let tail_bound = qa.powf(f64::from(j_max) + 0.5) / (1.0 - qa);
    Ok(ReciprocalSum { q, j_max, partial_sum: sum, tail_bound, residual: (sum + q).norm() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn first_two_branches_at_022() {
        let path = radial_path(re(0.22), 0.01, 60);
        let x1 = track_zero(1, &path, 1e-14).unwrap().samples.last().unwrap().xi;
        let x2 = track_zero(2, &path, 1e-14).unwrap().samples.last().unwrap().xi;
        assert!(x1.re > -7.0 && x1.re < -6.0, "{x1}");
        assert!(x2.re > -21.0 && x2.re < -19.0, "{x2}");
        assert!(x1.im.abs() < 1e-12 && x2.im.abs() < 1e-12);
    }

    #[test]
    fn start_must_be_small() {
        assert!(track_zero(1, &[re(0.2)], 1e-12).is_err());
        assert!(track_zero(0, &[re(0.02)], 1e-12).is_err());
    }

    #[test]
    fn reciprocal_sum_small_q() {
        let r = reciprocal_sum_check(re(0.01), 5).unwrap();
        assert!(r.residual < 1e-10, "{}", r.residual);
    }
}
