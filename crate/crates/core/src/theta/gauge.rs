//! The gauge φ(r) = 2 Σ_{ν≥1} r^{ν²/2} and dominating-term margins.

use serde::{Deserialize, Serialize};

use super::series::tri;
use crate::ball::BallComplex;
use crate::error::ThetaError;
use crate::interval::IntervalReal;

/// Enclosure of φ over an interval of radii inside (0,1).
pub fn phi_interval(r: IntervalReal) -> IntervalReal {
    assert!(r.lo >= 0.0 && r.hi < 1.0);
    let s = r.sqrt();
    let mut sum = IntervalReal::zero();
    let mut nu = 1u32;
    loop {
        let term = s.pow_int((nu * nu) as f64);
        sum = sum + term;
        // tail from nu+1 on: first term s^{(nu+1)^2}, ratio at most s^{2nu+3}
        let next = s.pow_int(((nu + 1) * (nu + 1)) as f64);
        let ratio = s.pow_int((2 * nu + 3) as f64);
        if next.hi <= 1e-20 * sum.lo.max(f64::MIN_POSITIVE) || nu > 10_000 {
            let tail = next / (IntervalReal::one() - ratio);
            let tail = IntervalReal::new(0.0, tail.hi);
            return (sum + tail) * 2.0;
        }
        nu += 1;
    }
}

/// Certified upper bound on φ(r).
pub fn phi_gauge(r: f64) -> Result<f64, ThetaError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(ThetaError::DomainError(format!("phi_gauge needs 0 < r < 1, got {r}")));
    }
    Ok(phi_interval(IntervalReal::point(r)).hi)
}

/// The radius where φ crosses 1, bisected until `|φ(r) - 1| < tol` is certified.
pub fn solve_c0(tol: f64) -> f64 {
    let (mut lo, mut hi) = (0.1f64, 0.3f64);
    loop {
        let mid = 0.5 * (lo + hi);
        let v = phi_interval(IntervalReal::point(mid));
        if v.lo > 1.0 - tol && v.hi < 1.0 + tol {
            return mid;
        }
        if v.hi < 1.0 {
            lo = mid;
        } else if v.lo > 1.0 {
            hi = mid;
        } else {
            // the enclosure straddles 1 but is wider than tol; nothing finer is possible
            return mid;
        }
        if hi - lo < f64::EPSILON * mid {
            return mid;
        }
    }
}

/// Enclosure of `|L| - S` where `L = q^{k(k+1)/2} x^k` and `S` is the sum of
/// moduli of every other term, for `|q| in qa`, `|x| in xa`.
pub fn margin_interval(qa: IntervalReal, k: u32, xa: IntervalReal) -> IntervalReal {
    let k = k as usize;
    let lead = qa.pow_int(tri(k) as f64) * xa.pow_int(k as f64);
    let mut others = IntervalReal::zero();
    let mut j = 0usize;
    loop {
        let term = qa.pow_int(tri(j) as f64) * xa.pow_int(j as f64);
        if j != k {
            others = others + term;
        }
        j += 1;
        if j > k {
            // geometric tail from index j: ratio of consecutive terms is q^{i+1} x <= q^j x
            let ratio = qa.pow_int(j as f64) * xa;
            if ratio.hi <= 0.5 {
                let first = qa.pow_int(tri(j) as f64) * xa.pow_int(j as f64);
                let tail = first.hi / (1.0 - ratio.hi) * (1.0 + 4.0 * f64::EPSILON);
                let scale = lead.lo.abs().max(f64::MIN_POSITIVE);
                if tail <= 1e-17 * scale || j > 100_000 {
                    others = others + IntervalReal::new(0.0, tail);
                    return lead - others;
                }
            }
            if j > 100_000 {
                return IntervalReal::new(f64::NEG_INFINITY, lead.hi);
            }
        }
    }
}

/// Certified lower bound on `|L| - S` over the circle `|x| = |q|^{-k-1/2}`.
pub fn dominating_term_margin(q: BallComplex, k: u32) -> Result<f64, ThetaError> {
    let qa = q.abs_interval();
    if !(qa.lo > 0.0 && qa.hi < 1.0) {
        return Err(ThetaError::DomainError("dominating_term_margin needs 0 < |q| < 1".into()));
    }
    let xa = (qa.pow_int(k as f64) * qa.sqrt()).recip();
    Ok(margin_interval(qa, k, xa).lo)
}

/// Certified lower bound on `|L| - S` at a prescribed `|x|`.
pub fn dominating_term_margin_at_radius(q_abs: f64, k: u32, x_abs: f64) -> Result<f64, ThetaError> {
    if !(q_abs > 0.0 && q_abs < 1.0 && x_abs > 0.0) {
        return Err(ThetaError::DomainError("need 0 < q_abs < 1 and x_abs > 0".into()));
    }
    Ok(margin_interval(IntervalReal::point(q_abs), k, IntervalReal::point(x_abs)).lo)
}

/// The largest `|q|` for which `qx` dominates at `|x| = x_abs` (k = 1),
/// located by bisection on the margin's sign.
pub fn solve_c1(x_abs: f64) -> f64 {
    let m = |q: f64| margin_interval(IntervalReal::point(q), 1, IntervalReal::point(x_abs)).mid();
    let (mut lo, mut hi) = (0.16f64, 0.3f64);
    debug_assert!(m(lo) > 0.0 && m(hi) < 0.0);
    while hi - lo > 4.0 * f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        if m(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Certifies dominance of the `k`-th term at `|x| = x_abs` for every `|q|` in
/// `[q_lo, q_hi]` by subdividing into `pieces` closed intervals.
pub fn dominance_on_range(q_lo: f64, q_hi: f64, k: u32, x_abs: f64, pieces: usize) -> bool {
    let xa = IntervalReal::point(x_abs);
    (0..pieces).all(|i| {
        let a = q_lo + (q_hi - q_lo) * i as f64 / pieces as f64;
        let b = if i + 1 == pieces { q_hi } else { q_lo + (q_hi - q_lo) * (i + 1) as f64 / pieces as f64 };
        margin_interval(IntervalReal::new(a, b), k, xa).lo > 0.0
    })
}

/// The two gauge radii: `c0` (φ = 1) and `c1` (edge of `qx` dominance at |x| = 7.95).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GaugeConstants {
    pub c0: f64,
    pub c1: f64,
}

impl GaugeConstants {
    pub fn compute() -> Self {
        Self { c0: solve_c0(1e-13), c1: solve_c1(7.95) }
    }

    pub fn phi_at(&self, r: f64) -> Result<f64, ThetaError> {
        phi_gauge(r)
    }
}
