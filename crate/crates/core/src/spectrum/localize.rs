//! Zero localization near `μ_k = -q^{-k}` and empirical radii of the branches.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::newton::{find_double_zero, SpectralPoint};
use super::track::{circle_path, radial_path, track_zero, MAX_START};
use crate::error::SpectrumError;
use crate::theta::{theta_value_fast, xi_small_radius};

/// `ε` for the smallness radius `G` of the tail `Ξ`.
pub const XI_EPS: f64 = 1e-3;

const MIN_SAMPLES: usize = 256;
const MAX_SAMPLES: usize = 1 << 17;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaCount {
    pub q: Complex64,
    pub k: u32,
    pub delta: f64,
    pub mu: Complex64,
    pub count: i64,
    pub winding: f64,
    pub samples: usize,
    /// Smallest sampled `|θ|` on the circle, relative to the largest.
    pub min_relative_modulus: f64,
    /// `G` with `|Ξ|, |Ξ'| <= 1e-3` on `|x| >= G`.
    pub g_radius: f64,
    /// Whether the whole disk lies in `|x| >= G`, where `|Ξ|` is known to be
    /// small; the count itself does not depend on it.
    pub xi_small_guaranteed: bool,
}

fn winding_on(q: Complex64, centre: Complex64, radius: f64, n: usize) -> (f64, f64, f64) {
    let vals: Vec<(Complex64, f64)> = (0..n)
        .into_par_iter()
        .map(|i| theta_value_fast(q, centre + Complex64::from_polar(radius, 2.0 * PI * i as f64 / n as f64)))
        .collect();
    // common positive scale leaves arguments unchanged
    let lmax = vals.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let z: Vec<Complex64> = vals.iter().map(|(v, l)| v * (l - lmax).exp()).collect();
    let mut total = 0.0;
    let mut max_jump = 0.0f64;
    for i in 0..n {
        let d = (z[(i + 1) % n].arg() - z[i].arg() + PI).rem_euclid(2.0 * PI) - PI;
        max_jump = max_jump.max(d.abs());
        total += d;
    }
    let mags: Vec<f64> = z.iter().map(|v| v.norm()).collect();
    let hi = mags.iter().cloned().fold(0.0, f64::max);
    let lo = mags.iter().cloned().fold(f64::INFINITY, f64::min);
    (total / (2.0 * PI), max_jump, lo / hi)
}

/// Number of zeros of `θ(q, ·)` in `|x - μ_k| <= δ |μ_k|`.
///
/// The argument of θ is sampled on the circle; the density is doubled until
/// the rounded count agrees for two successive densities and no sampled
/// argument step exceeds `π/2`.
pub fn omega_k_count(q: Complex64, k: u32, delta: f64) -> Result<OmegaCount, SpectrumError> {
    let qa = q.norm();
    if !(0.108..=0.95).contains(&qa) || k == 0 || !(delta > 0.0) {
        return Err(SpectrumError::InvalidArgument(format!("need |q| in [0.108, 0.95], k >= 1, delta > 0; got {q}, {k}, {delta}")));
    }
    let mu = -q.inv().powi(k as i32);
    let g_radius = xi_small_radius(qa, XI_EPS);
    let radius = delta * mu.norm();
    let mut n = MIN_SAMPLES;
    let mut prev: Option<i64> = None;
    loop {
        let (w, max_jump, rel) = winding_on(q, mu, radius, n);
        let count = w.round() as i64;
        let resolved = max_jump < PI / 2.0 && (w - w.round()).abs() < 0.1;
        if resolved && prev == Some(count) {
            return Ok(OmegaCount {
                q,
                k,
                delta,
                mu,
                count,
                winding: w,
                samples: n,
                min_relative_modulus: rel,
                g_radius,
                xi_small_guaranteed: (1.0 - delta) * mu.norm() >= g_radius,
            });
        }
        prev = resolved.then_some(count);
        n *= 2;
        if n > MAX_SAMPLES {
            return Err(SpectrumError::BoundaryZero { x: format!("circle |x - {mu}| = {radius}") });
        }
    }
}

/// Whether the disk `|x - μ_k| <= δ |μ_k|` holds exactly one zero.
pub fn omega_k_unique_zero(q: Complex64, k: u32, delta: f64) -> Result<bool, SpectrumError> {
    Ok(omega_k_count(q, k, delta)?.count == 1)
}

/// Tracks `ξ_j` out to `|q| = a` along the ray at `phi0`, then once around the circle.
fn circle_track(j: u32, a: f64, phi0: f64, n_grid: usize) -> Result<Vec<Complex64>, SpectrumError> {
    let start = MAX_START.min(a);
    let mut path = radial_path(Complex64::from_polar(a, phi0), start, 24);
    path.extend(circle_path(a, phi0, n_grid).into_iter().skip(1));
    let t = track_zero(j, &path, 1e-13)?;
    let n = t.samples.len();
    Ok(t.samples[n - n_grid - 1..].iter().map(|s| s.xi).collect())
}

/// The real axis carries the real spectral numbers; rays start just off it.
const RAY_ANGLE: f64 = 0.05;

/// Smallest `|ξ_j|` seen on `|q| = a` for `j <= j_max`; an estimate, not a bound.
pub fn min_zero_modulus_estimate(a: f64, j_max: u32, n_grid: usize) -> Result<f64, SpectrumError> {
    if !(0.108..1.0).contains(&a) || j_max == 0 || n_grid < 8 {
        return Err(SpectrumError::InvalidArgument(format!("need 0.108 <= a < 1, j_max >= 1, n_grid >= 8; got {a}, {j_max}, {n_grid}")));
    }
    let mins = (1..=j_max)
        .into_par_iter()
        .map(|j| circle_track(j, a, RAY_ANGLE, n_grid).map(|xs| xs.iter().map(|x| x.norm()).fold(f64::INFINITY, f64::min)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(mins.into_iter().fold(f64::INFINITY, f64::min))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchOutcome {
    pub j: u32,
    pub closed: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoRow {
    pub a: f64,
    /// Smallest `j0` with every branch `j0 <= j <= j_max` closing around `|q| = a`.
    pub j0: Option<u32>,
    pub branches: Vec<BranchOutcome>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoTrend {
    pub j_max: u32,
    pub rows: Vec<RhoRow>,
    pub note: String,
}

/// For each `a`, which branches continue once around `|q| = a` back to
/// themselves: an empirical proxy for `ρ_j >= a`.
pub fn rho_trend(a_list: &[f64], j_max: u32) -> RhoTrend {
    let rows = a_list
        .iter()
        .map(|&a| {
            let n_grid = ((64.0 / (1.0 - a)).ceil() as usize).max(128);
            let branches: Vec<BranchOutcome> = (1..=j_max)
                .into_par_iter()
                .map(|j| match circle_track(j, a, RAY_ANGLE, n_grid) {
                    Ok(xs) => {
                        let (first, last) = (xs[0], xs[xs.len() - 1]);
                        BranchOutcome { j, closed: (last - first).norm() <= 1e-6 * first.norm(), error: None }
                    }
                    Err(e) => BranchOutcome { j, closed: false, error: Some(e.to_string()) },
                })
                .collect();
            let j0 = match branches.iter().rposition(|b| !b.closed) {
                None => Some(1),
                Some(i) if i + 1 < branches.len() => Some(branches[i + 1].j),
                Some(_) => None,
            };
            RhoRow { a, j0, branches }
        })
        .collect();
    RhoTrend {
        j_max,
        rows,
        note: "empirical: a branch that closes around |q| = a is evidence for rho_j >= a; the limit rho_j -> 1 is not certified".into(),
    }
}

/// Double-zero solves from an `n × n` grid of seeds over `|q| <= radius`;
/// returns the distinct points found inside the disk.
pub fn seed_grid_search(n: usize, radius: f64, tol: f64) -> Vec<SpectralPoint> {
    let seeds: Vec<Complex64> = (0..n)
        .flat_map(|i| (0..n).map(move |k| (i, k)))
        .map(|(i, k)| {
            let t = |m: usize| -radius + 2.0 * radius * (m as f64 + 0.5) / n as f64;
            Complex64::new(t(i), t(k))
        })
        .filter(|q| q.norm() <= radius && q.norm() > 0.0)
        .collect();
    let found: Vec<SpectralPoint> = seeds
        .par_iter()
        .filter_map(|&q| {
            let x = -q.powf(-1.73);
            find_double_zero(q, x, tol).ok().filter(|p| p.q_star.norm() <= radius)
        })
        .collect();
    let mut distinct: Vec<SpectralPoint> = Vec::new();
    for p in found {
        if !distinct.iter().any(|d| (d.q_star - p.q_star).norm() < 1e-7) {
            distinct.push(p);
        }
    }
    distinct.sort_by(|a, b| a.q_star.re.total_cmp(&b.q_star.re).then(a.q_star.im.total_cmp(&b.q_star.im)));
    distinct
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oversized_disk_is_not_unique() {
        let c = omega_k_count(Complex64::new(0.3, 0.0), 3, 2.0).unwrap();
        assert_ne!(c.count, 1);
        assert!(!c.xi_small_guaranteed);
    }

    #[test]
    fn unique_zero_at_half() {
        assert!(omega_k_unique_zero(Complex64::new(0.5, 0.0), 12, 0.1).unwrap());
    }
}
