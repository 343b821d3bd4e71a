//! Real spectral numbers on (0,1) and on (-1,0).

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::newton::{find_double_zero, SpectralPoint};
use crate::error::SpectrumError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    PositiveQ,
    NegativeQ,
}

/// Leading-order laws for the real spectral numbers.
///
/// Positive family: `q̃ ≈ F(j + offset)` with `F(n) = 1 - π/2n + ln n/(8n²)`
/// and `y ≈ -e^π e^{-ln n/(4n)}`. The law read with `n = j` gives
/// `F(1) < 0`; with `offset = 1` it tracks the computed sequence from `j = 1` on.
/// Negative family: `|q̄| ≈ 1 - π/8k` and `|ȳ| → e^{π/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticModel {
    pub family: Family,
    pub index_offset: f64,
}

impl AsymptoticModel {
    pub fn positive() -> Self {
        Self { family: Family::PositiveQ, index_offset: 1.0 }
    }

    pub fn negative() -> Self {
        Self { family: Family::NegativeQ, index_offset: 0.0 }
    }

    /// Predicted `q̃_j` (positive family) or `|q̄_k|` (negative family).
    pub fn prediction(&self, j: u32) -> f64 {
        let n = f64::from(j) + self.index_offset;
        match self.family {
            Family::PositiveQ => positive_law(n),
            Family::NegativeQ => 1.0 - PI / (8.0 * n),
        }
    }

    /// Predicted double zero: `y_j` for the positive family, `|ȳ|` limit for the negative one.
    pub fn double_zero(&self, j: u32) -> f64 {
        let n = f64::from(j) + self.index_offset;
        match self.family {
            Family::PositiveQ => -(PI - n.ln() / (4.0 * n)).exp(),
            Family::NegativeQ => (PI / 2.0).exp(),
        }
    }
}

/// `1 - π/2n + ln n / (8n²)`.
pub fn positive_law(n: f64) -> f64 {
    1.0 - PI / (2.0 * n) + n.ln() / (8.0 * n * n)
}

/// Exponent `ν` with `|x| = |q|^{-ν}`.
pub fn nu_of(q: Complex64, x: Complex64) -> f64 {
    -x.norm().ln() / q.norm().ln()
}

fn check_tol(tol: f64) -> Result<(), SpectrumError> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(SpectrumError::InvalidArgument(format!("tolerance must be positive, got {tol}")))
    }
}

/// `q̃_1 < … < q̃_{j_max}` with their real double zeros `y_j < 0`.
///
/// Seeds come from the positive law corrected by `C/(j+1)²`, with `C`
/// re-estimated from the previous spectral number, and `y ≈ -q^{-(2j - 0.27)}`.
pub fn real_spectrum_scan(j_max: u32, tol: f64) -> Result<Vec<SpectralPoint>, SpectrumError> {
    check_tol(tol)?;
    let model = AsymptoticModel::positive();
    let mut out: Vec<SpectralPoint> = Vec::new();
    let mut c = 0.29;
    for j in 1..=j_max {
        let n = f64::from(j) + model.index_offset;
        let q0 = model.prediction(j) + c / (n * n);
        let x0 = -q0.powf(-(2.0 * f64::from(j) - 0.27));
        let mut p = find_double_zero(Complex64::new(q0, 0.0), Complex64::new(x0, 0.0), tol)?;
        let (q, x) = (p.q_star.re, p.x_star.re);
        let nu = nu_of(p.q_star, p.x_star);
        if !(q > 0.0 && q < 1.0 && x < 0.0) || (nu - (2.0 * f64::from(j) - 0.27)).abs() > 0.5 {
            return Err(SpectrumError::MissedBranch(format!("j = {j}: solver landed at q = {q}, x = {x} (nu = {nu})")));
        }
        if let Some(prev) = out.last() {
            if !(q > prev.q_star.re + 1e-7) {
                return Err(SpectrumError::MissedBranch(format!("j = {j}: q = {q} does not exceed the previous {}", prev.q_star.re)));
            }
        }
        c = (q - model.prediction(j)) * n * n;
        p.index_label = Some(i64::from(j));
        out.push(p);
    }
    Ok(out)
}

/// Which sign of `x` a negative-`q` double zero has; the two families interlace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NegativeBranch {
    /// `x < 0`, `|x| ≈ |q|^{-(4k - 0.55)}`.
    NegativeX,
    /// `x > 0`, `|x| ≈ |q|^{-(4k + 0.45)}`.
    PositiveX,
}

impl NegativeBranch {
    fn nu(self, k: u32) -> f64 {
        match self {
            Self::NegativeX => 4.0 * f64::from(k) - 0.55,
            Self::PositiveX => 4.0 * f64::from(k) + 0.45,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Self::NegativeX => -1.0,
            Self::PositiveX => 1.0,
        }
    }
}

/// Member of the negative-`q` spectrum, with its place in each family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NegativeSpectralPoint {
    pub point: SpectralPoint,
    pub branch: NegativeBranch,
    pub family_index: u32,
    pub nu: f64,
}

/// Metadata shipped with a negative scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NegativeScanNotes {
    /// `e^{π/2}`, the limit of `|ȳ_k|`.
    pub y_limit: f64,
    /// The law `1 - π/8k` is printed for `q̄_k ∈ (-1,0)` although it is
    /// positive; it is compared against `|q̄_k|` here.
    pub sign_note: String,
}

pub fn negative_scan_notes() -> NegativeScanNotes {
    NegativeScanNotes {
        y_limit: (PI / 2.0).exp(),
        sign_note: "the law 1 - pi/(8k) is positive; it is compared against |q_k| for q_k in (-1,0)".into(),
    }
}

fn solve_family(branch: NegativeBranch, count: u32, tol: f64) -> Result<Vec<NegativeSpectralPoint>, SpectrumError> {
    let mut out = Vec::new();
    let mut c = 0.15;
    for k in 1..=count {
        let nu_t = branch.nu(k);
        let kf = f64::from(k);
        let law = 1.0 - PI / (2.0 * (nu_t + 0.55));
        let a0 = (law + c / (kf * kf)).min(0.999);
        let x0 = branch.sign() * a0.powf(-nu_t);
        let p = find_double_zero(Complex64::new(-a0, 0.0), Complex64::new(x0, 0.0), tol)?;
        let nu = nu_of(p.q_star, p.x_star);
        let ok = p.q_star.re < 0.0 && p.q_star.re > -1.0 && p.x_star.re * branch.sign() > 0.0 && (nu - nu_t).abs() < 0.5;
        if !ok {
            return Err(SpectrumError::MissedBranch(format!(
                "{branch:?} k = {k}: solver landed at q = {}, x = {} (nu = {nu})",
                p.q_star, p.x_star
            )));
        }
        c = (-p.q_star.re - law) * kf * kf;
        out.push(NegativeSpectralPoint { point: p, branch, family_index: k, nu });
    }
    Ok(out)
}

/// The first `k_max` spectral numbers in `(-1, 0)`, ordered by decreasing `q`.
///
/// Both families are solved separately and merged; `index_label` is the
/// position in the merged list.
pub fn negative_spectrum_scan(k_max: u32, tol: f64) -> Result<Vec<NegativeSpectralPoint>, SpectrumError> {
    check_tol(tol)?;
    if k_max == 0 {
        return Ok(Vec::new());
    }
    let per_family = k_max.div_ceil(2) + 1;
    let fams = [NegativeBranch::NegativeX, NegativeBranch::PositiveX]
        .par_iter()
        .map(|&b| solve_family(b, per_family, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let mut all: Vec<NegativeSpectralPoint> = fams.into_iter().flatten().collect();
    all.sort_by(|a, b| b.point.q_star.re.total_cmp(&a.point.q_star.re));
    all.truncate(k_max as usize);
    for w in all.windows(2) {
        if !(w[1].point.q_star.re < w[0].point.q_star.re - 1e-7) {
            return Err(SpectrumError::MissedBranch(format!(
                "negative spectrum not strictly decreasing near q = {}",
                w[0].point.q_star.re
            )));
        }
    }
    for (i, p) in all.iter_mut().enumerate() {
        p.point.index_label = Some(i as i64 + 1);
    }
    Ok(all)
}

/// Least-squares `C` in `r_j ≈ C / j²`.
pub fn fit_inverse_square(js: &[u32], r: &[f64]) -> f64 {
    let num: f64 = js.iter().zip(r).map(|(&j, &r)| r / f64::from(j).powi(2)).sum();
    let den: f64 = js.iter().map(|&j| f64::from(j).powi(-4)).sum();
    num / den
}

/// Residuals of a positive scan against the law, and how the fitted constant moves.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticFit {
    pub index_offset: f64,
    pub js: Vec<u32>,
    /// `q̃_j - F(j + offset)`.
    pub residuals: Vec<f64>,
    pub c_full: f64,
    pub c_tail: f64,
    pub relative_change: f64,
    /// `max |r_j| j²` over the fitted range.
    pub max_scaled: f64,
}

/// Fits `r_j · j²` on `j_lo..=j_hi` and on `tail_from..=j_hi`.
pub fn fit_positive_law(points: &[SpectralPoint], index_offset: f64, j_lo: u32, tail_from: u32) -> AsymptoticFit {
    let mut js = Vec::new();
    let mut residuals = Vec::new();
    for p in points {
        let Some(j) = p.index_label else { continue };
        let j = j as u32;
        if j >= j_lo {
            js.push(j);
            residuals.push(p.q_star.re - positive_law(f64::from(j) + index_offset));
        }
    }
    let c_full = fit_inverse_square(&js, &residuals);
    let tail: Vec<usize> = (0..js.len()).filter(|&i| js[i] >= tail_from).collect();
    let c_tail = fit_inverse_square(
        &tail.iter().map(|&i| js[i]).collect::<Vec<_>>(),
        &tail.iter().map(|&i| residuals[i]).collect::<Vec<_>>(),
    );
    let max_scaled = js.iter().zip(&residuals).map(|(&j, r)| r.abs() * f64::from(j).powi(2)).fold(0.0, f64::max);
    AsymptoticFit {
        index_offset,
        js,
        residuals,
        c_full,
        c_tail,
        relative_change: ((c_tail - c_full) / c_full).abs(),
        max_scaled,
    }
}
