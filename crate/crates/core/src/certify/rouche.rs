//! Zero counting inside rectangles by certified argument tracking.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::BallComplex;
use crate::error::CertifyError;
use crate::poly::IntPoly;

/// Sub-arcs allowed per edge before giving up.
pub const MAX_SUBARCS: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
}

impl Rect {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Self {
        Self { re_lo, re_hi, im_lo, im_hi }
    }

    /// Corners in counterclockwise order starting at the lower left.
    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_lo, self.im_lo),
            Complex64::new(self.re_hi, self.im_lo),
            Complex64::new(self.re_hi, self.im_hi),
            Complex64::new(self.re_lo, self.im_hi),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroCount {
    pub region: Rect,
    pub count: i64,
    /// Total argument change divided by 2π before rounding.
    pub winding: f64,
    pub subarcs: usize,
}

/// Ball enclosing the straight sub-edge from `a` to `b`, padded so that it
/// also covers the edge with corners rounded differently (e.g. exact `1/3`).
fn edge_ball(a: Complex64, b: Complex64) -> BallComplex {
    let c = (a + b) * 0.5;
    let r = (b - a).norm() * 0.5;
    BallComplex::new(c, r + 4.0 * f64::EPSILON * (r + c.norm()) + f64::MIN_POSITIVE)
}

/// Argument change of `p` along one edge, with the number of sub-arcs used.
///
/// On a sub-edge whose image ball excludes 0 the image lies in an open
/// half-plane through 0, so the increment is the principal difference of
/// the endpoint arguments.
fn edge_increment(p: &IntPoly, a: Complex64, b: Complex64) -> Result<(f64, usize), CertifyError> {
    let mut total = 0.0;
    let mut used = 0usize;
    let mut stack = vec![(0.0f64, 1.0f64)];
    while let Some((s, t)) = stack.pop() {
        let za = a + (b - a) * s;
        let zb = a + (b - a) * t;
        let img = p.eval_ball(edge_ball(za, zb));
        if img.contains_zero() {
            if used + stack.len() + 2 > MAX_SUBARCS {
                return Err(CertifyError::BoundaryZero { location: format!("{za}..{zb}") });
            }
            let m = 0.5 * (s + t);
            stack.push((m, t));
            stack.push((s, m));
            continue;
        }
        used += 1;
        let va = p.eval_ball(BallComplex::point(za)).center;
        let vb = p.eval_ball(BallComplex::point(zb)).center;
        total += (vb / va).arg();
    }
    Ok((total, used))
}

/// Number of zeros (with multiplicity) of `p` inside the rectangle.
pub fn rouche_zero_count(region: Rect, p: &IntPoly) -> Result<ZeroCount, CertifyError> {
    if !(region.re_lo < region.re_hi && region.im_lo < region.im_hi) {
        return Err(CertifyError::DegenerateInput("rectangle must have positive width and height".into()));
    }
    if p.is_zero() {
        return Err(CertifyError::DegenerateInput("zero polynomial".into()));
    }
    let c = region.corners();
    let edges = (0..4)
        .into_par_iter()
        .map(|i| edge_increment(p, c[i], c[(i + 1) % 4]))
        .collect::<Result<Vec<_>, _>>()?;
    let total: f64 = edges.iter().map(|e| e.0).sum();
    let subarcs = edges.iter().map(|e| e.1).sum();
    let winding = total / std::f64::consts::TAU;
    let count = winding.round();
    if (winding - count).abs() > 0.25 {
        return Err(CertifyError::Inconclusive { subdivisions: subarcs });
    }
    Ok(ZeroCount { region, count: count as i64, winding, subarcs })
}

/// `K = [-1/3, 1/3]^2`, bordered by the four edge segments.
pub fn square_k() -> Rect {
    let t = 1.0 / 3.0;
    Rect::new(-t, t, -t, t)
}

/// `{Re q ∈ [-1/3, 0.29], |Im q| ≤ 1/3}`.
pub fn left_strip() -> Rect {
    let t = 1.0 / 3.0;
    Rect::new(-t, 0.29, -t, t)
}
