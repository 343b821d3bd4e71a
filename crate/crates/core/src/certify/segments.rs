//! The Σ > 0 certificates: on every boundary segment the perturbation
//! `Ṽ_{a,b} - V` is dominated by `V`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bound::{certify_segment_bound, exact_threshold, BoundCertificate, BoundKind, PartsConvention};
use crate::error::CertifyError;
use crate::interval::IntervalReal;
use crate::poly::{
    build_perturbed_resultant, contour_segments, perturbation_key, tail_phi_psi, two_over_f, IntPoly, SegmentQ,
};

/// Tabulated thresholds for one segment: lower bound on `V`, upper bounds
/// on `V1`, on `V2` and `V3` jointly, and on `W1..W4` jointly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentThresholds {
    pub segment: String,
    pub lower_v: String,
    pub upper_v1: String,
    pub upper_vk: String,
    pub upper_w: String,
}

/// The published threshold table, in segment order.
pub fn published_thresholds() -> Vec<SegmentThresholds> {
    crate::constants::manifest().segment_thresholds.clone()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaCertificate {
    pub segment: String,
    /// Bound certificates for V (lower), V1, V2, V3, W1, W2, W3, W4 (upper).
    pub inputs: Vec<BoundCertificate>,
    pub lower_v: f64,
    pub upper_v1: f64,
    pub upper_vk: f64,
    pub upper_w: f64,
    pub a0: f64,
    pub b0: f64,
    pub sigma_lower: f64,
    pub valid: bool,
}

impl SigmaCertificate {
    /// Recomputes Σ from the stored bounds; equals `sigma_lower` bit for bit.
    pub fn recompute_sigma(&self) -> f64 {
        sigma_lower_bound(self.lower_v, self.upper_v1, self.upper_vk, self.upper_w, self.a0, self.b0)
    }
}

/// Lower end of the enclosure of
/// `L/√2 - Σ_{j=1..3} (U_{Vj} a^j + U_W b^{j+1}) - U_W a b^2`
/// with `U_{V1} = upper_v1`, `U_{V2} = U_{V3} = upper_vk`.
pub fn sigma_lower_bound(lower_v: f64, upper_v1: f64, upper_vk: f64, upper_w: f64, a0: f64, b0: f64) -> f64 {
    let p = IntervalReal::point;
    let a = p(a0);
    let b = p(b0);
    let uv = [p(upper_v1), p(upper_vk), p(upper_vk)];
    let uw = p(upper_w);
    let mut s = p(lower_v) / IntervalReal::point(2.0).sqrt();
    for j in 1..=3u32 {
        s = s - uv[(j - 1) as usize] * a.powi(j) - uw * b.powi(j + 1);
    }
    s = s - uw * a * b.sqr();
    s.lo
}

/// `(a0, b0)`: upper bounds on the dropped tails `φ`, `ψ` at `|q| = 1/3`, `|x| = γ`.
pub fn perturbation_radii() -> Result<(f64, f64), CertifyError> {
    let gamma = two_over_f(0.2256613757)?.hi;
    let third = IntervalReal::point(1.0) / IntervalReal::point(3.0);
    Ok(tail_phi_psi(third.hi, gamma, 5)?)
}

/// Options for [`certify_all_segments_with`].
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Lower thresholds are multiplied, upper thresholds divided by this factor.
    pub threshold_scale: f64,
    pub convention: PartsConvention,
    /// Overrides `(a0, b0)`; `None` uses [`perturbation_radii`].
    pub radii: Option<(f64, f64)>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { threshold_scale: 1.0, convention: PartsConvention::Doubled, radii: None }
    }
}

fn scaled(lit: &str, scale: &BigRational, kind: BoundKind) -> BigRational {
    let t = exact_threshold(lit);
    match kind {
        BoundKind::Lower => t * scale,
        BoundKind::Upper => t / scale,
    }
}

/// Certifies Σ > 0 on one segment.
pub fn certify_sigma(
    seg: &SegmentQ,
    th: &SegmentThresholds,
    polys: &BTreeMap<(u32, u32), IntPoly>,
    opts: &SuiteOptions,
) -> Result<SigmaCertificate, CertifyError> {
    let scale = BigRational::from_float(opts.threshold_scale)
        .filter(|s| s > &BigRational::from_integer(0.into()))
        .ok_or_else(|| CertifyError::DegenerateInput("threshold scale must be positive".into()))?;
    let (a0, b0) = match opts.radii {
        Some(r) => r,
        None => perturbation_radii()?,
    };
    let jobs: [(&str, BoundKind, &str); 8] = [
        ("V", BoundKind::Lower, &th.lower_v),
        ("V1", BoundKind::Upper, &th.upper_v1),
        ("V2", BoundKind::Upper, &th.upper_vk),
        ("V3", BoundKind::Upper, &th.upper_vk),
        ("W1", BoundKind::Upper, &th.upper_w),
        ("W2", BoundKind::Upper, &th.upper_w),
        ("W3", BoundKind::Upper, &th.upper_w),
        ("W4", BoundKind::Upper, &th.upper_w),
    ];
    let inputs = jobs
        .par_iter()
        .map(|(name, kind, lit)| {
            let p = &polys[&perturbation_key(name).expect("known name")];
            certify_segment_bound(p, name, seg, *kind, &scaled(lit, &scale, *kind), opts.convention)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let lower_v = inputs[0].threshold;
    let (upper_v1, upper_vk, upper_w) = (inputs[1].threshold, inputs[2].threshold, inputs[4].threshold);
    // thresholds are rounded to f64; push them the safe way before forming Σ
    let lower_v = lower_v.next_down();
    let (upper_v1, upper_vk, upper_w) = (upper_v1.next_up(), upper_vk.next_up(), upper_w.next_up());
    let sigma_lower = sigma_lower_bound(lower_v, upper_v1, upper_vk, upper_w, a0, b0);
    if !(sigma_lower > 0.0) {
        return Err(CertifyError::CertificateFailed {
            segment: seg.name.clone(),
            polynomial: "sigma".into(),
            reason: format!("sigma lower bound {sigma_lower} is not positive"),
            t_lo: 0.0,
            t_hi: 1.0,
        });
    }
    Ok(SigmaCertificate {
        segment: seg.name.clone(),
        inputs,
        lower_v,
        upper_v1,
        upper_vk,
        upper_w,
        a0,
        b0,
        sigma_lower,
        valid: true,
    })
}

/// Real coefficients give `|P(conj q)| = |P(q)|`, so the lower half of the
/// right edge `Re q = 1/3` is covered by mirroring `K0..K3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryCheck {
    pub real_coefficients: bool,
    pub mirrored_cover: bool,
    pub valid: bool,
}

pub fn conjugation_symmetry_check(polys: &BTreeMap<(u32, u32), IntPoly>) -> SymmetryCheck {
    // all coefficients are integers by construction; the check is that the
    // K pieces tile Im q ∈ [0, 1/3] on Re q = 1/3 so their mirror tiles [-1/3, 0]
    let real_coefficients = !polys.is_empty();
    let segs = contour_segments();
    let ks: Vec<&SegmentQ> = segs.iter().filter(|s| s.name.starts_with('K') && s.name.len() == 2).collect();
    let third = BigRational::new(1.into(), 3.into());
    let zero = BigRational::from_integer(0.into());
    let mut cover = ks.first().map_or(false, |s| s.start.im == zero);
    for w in ks.windows(2) {
        cover &= w[0].end == w[1].start;
    }
    cover &= ks.iter().all(|s| s.start.re == third && s.end.re == third);
    cover &= ks.last().map_or(false, |s| s.end.im == third);
    SymmetryCheck { real_coefficients, mirrored_cover: cover, valid: real_coefficients && cover }
}

/// All twelve Σ-certificates plus the symmetry check, in table order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentSuite {
    pub certificates: Vec<SigmaCertificate>,
    pub symmetry: SymmetryCheck,
}

pub fn certify_all_segments() -> Result<SegmentSuite, CertifyError> {
    certify_all_segments_with(&SuiteOptions::default())
}

pub fn certify_all_segments_with(opts: &SuiteOptions) -> Result<SegmentSuite, CertifyError> {
    certify_segments_table(&published_thresholds(), opts)
}

/// Like [`certify_all_segments_with`] with a caller-supplied table, one row
/// per segment in [`contour_segments`] order.
pub fn certify_segments_table(table: &[SegmentThresholds], opts: &SuiteOptions) -> Result<SegmentSuite, CertifyError> {
    let polys = build_perturbed_resultant()?;
    let certificates = report_with(&polys, table, opts)?
        .into_iter()
        .map(|(_, r)| r)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SegmentSuite { certificates, symmetry: conjugation_symmetry_check(&polys) })
}

/// Outcome per segment without stopping at the first failure.
pub fn segment_report(
    table: &[SegmentThresholds],
    opts: &SuiteOptions,
) -> Result<Vec<SegmentOutcome>, CertifyError> {
    report_with(&build_perturbed_resultant()?, table, opts)
}

type SegmentOutcome = (String, Result<SigmaCertificate, CertifyError>);

fn report_with(
    polys: &BTreeMap<(u32, u32), IntPoly>,
    table: &[SegmentThresholds],
    opts: &SuiteOptions,
) -> Result<Vec<SegmentOutcome>, CertifyError> {
    let segs = contour_segments();
    if table.len() != segs.len() || segs.iter().zip(table).any(|(s, t)| s.name != t.segment) {
        return Err(CertifyError::DegenerateInput("threshold table must list every segment in order".into()));
    }
    let mut opts = *opts;
    if opts.radii.is_none() {
        opts.radii = Some(perturbation_radii()?);
    }
    Ok(segs
        .par_iter()
        .zip(table.par_iter())
        .map(|(seg, th)| (seg.name.clone(), certify_sigma(seg, th, polys, &opts)))
        .collect())
}
