//! The bilateral series Θ*(q,x) = Σ_{j∈ℤ} q^{j(j+1)/2} x^j and the tail
//! Ξ(q,x) = -Σ_{j≤-1} q^{j(j+1)/2} x^j, so that θ = Θ* + Ξ.
//!
//! With `w = 1/x` the negative-index half is `w θ(q, w)`.

use serde::{Deserialize, Serialize};

use super::series::{jet_tail_bound, partial_sums, partial_value, terms_needed, TruncationPlan};
use crate::ball::BallComplex;
use crate::error::ThetaError;
use crate::interval::IntervalReal;

fn series_value(q: BallComplex, w: BallComplex, tol: f64) -> Result<BallComplex, ThetaError> {
    let (q_hi, w_hi) = (q.abs_upper(), w.abs_upper());
    let (n, jet_tail) = terms_needed(q_hi, w_hi, tol / 4.0)
        .ok_or(ThetaError::ToleranceUnreachable { tol, achieved: f64::INFINITY })?;
    let tail = jet_tail.min(TruncationPlan::tail_at(q_hi, w_hi, n));
    Ok(partial_value(q, w, n).inflate(tail))
}

fn check_domain(q: &BallComplex, x: &BallComplex) -> Result<(), ThetaError> {
    if q.abs_lower() == 0.0 || !(q.abs_upper() < 1.0) {
        return Err(ThetaError::DomainError("need 0 < |q| < 1".into()));
    }
    if x.contains_zero() {
        return Err(ThetaError::DomainError("x must be nonzero".into()));
    }
    Ok(())
}

/// Θ*(q,x), summing `j >= 0` and `j <= -1` separately with their own tail bounds.
pub fn jacobi_theta_star_eval(q: BallComplex, x: BallComplex, tol: f64) -> Result<BallComplex, ThetaError> {
    check_domain(&q, &x)?;
    let w = x.recip();
    let pos = series_value(q, x, tol)?;
    let neg = w * series_value(q, w, tol)?;
    Ok(pos + neg)
}

/// Ξ(q,x) together with its `x`-derivative.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct XiTail {
    pub value: BallComplex,
    pub derivative: BallComplex,
}

/// Ξ(q,x) for `|x| > 1`.
pub fn xi_tail_eval(q: BallComplex, x: BallComplex) -> Result<XiTail, ThetaError> {
    if !(q.abs_upper() < 1.0) {
        return Err(ThetaError::DomainError("need |q| < 1".into()));
    }
    if !(x.abs_lower() > 1.0) {
        return Err(ThetaError::DomainError("xi_tail_eval needs |x| > 1".into()));
    }
    let w = x.recip();
    let (n, tail) = terms_needed(q.abs_upper(), w.abs_upper(), 1e-300)
        .ok_or(ThetaError::ToleranceUnreachable { tol: 0.0, achieved: f64::INFINITY })?;
    let s = partial_sums(q, w, n).map(|v| v.inflate(tail));
    // Ξ = -w S(q,w), dΞ/dx = w^2 (S + w S_w)
    let value = -(w * s[0]);
    let derivative = w * w * (s[0] + w * s[1]);
    Ok(XiTail { value, derivative })
}

/// Upper bounds on `sup |Ξ|` and `sup |Ξ'|` over `|x| >= r`, `|q| <= q_abs`.
pub fn xi_bounds_outside(q_abs: f64, r: f64) -> (f64, f64) {
    assert!(r > 1.0);
    let w = IntervalReal::point(r).recip();
    let (n, tail) = terms_needed(q_abs, w.hi, 1e-30).expect("|w| < 1 always converges");
    let tail = tail.max(jet_tail_bound(q_abs, w.hi, n).unwrap_or(0.0));
    // S(|q|, |w|) and S_w(|q|, |w|) with nonnegative terms
    let mut s0 = IntervalReal::zero();
    let mut s1 = IntervalReal::zero();
    let q = IntervalReal::point(q_abs);
    for j in 0..n {
        let t = q.pow_int(super::series::tri(j) as f64);
        s0 = s0 + t * w.pow_int(j as f64);
        if j >= 1 {
            s1 = s1 + t * w.pow_int((j - 1) as f64) * j as f64;
        }
    }
    let s0 = s0 + IntervalReal::new(0.0, tail);
    let s1 = s1 + IntervalReal::new(0.0, tail);
    let value = (w * s0).hi;
    let deriv = (w.sqr() * (s0 + w * s1)).hi;
    (value, deriv)
}

/// Smallest tested radius `G` with `|Ξ| <= eps` and `|Ξ'| <= eps` on `|x| >= G`.
pub fn xi_small_radius(q_abs: f64, eps: f64) -> f64 {
    assert!(eps > 0.0 && q_abs < 1.0);
    let ok = |r: f64| {
        let (a, b) = xi_bounds_outside(q_abs, r);
        a <= eps && b <= eps
    };
    let mut hi = 2.0;
    while !ok(hi) {
        hi *= 2.0;
    }
    let mut lo = 1.0;
    while hi - lo > 1e-9 * hi {
        let mid = 0.5 * (lo + hi);
        if mid > 1.0 && ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn bilateral_series_against_direct_sum() {
        let (q, x) = (0.2f64, 1.5f64);
        let direct: f64 = (-60i64..60).map(|j| q.powf((j * (j + 1)) as f64 / 2.0) * x.powi(j as i32)).sum();
        let v = jacobi_theta_star_eval(BallComplex::real(q), BallComplex::real(x), 1e-14).unwrap();
        assert!(v.contains(Complex64::new(direct, 0.0)) || (v.center.re - direct).abs() < 1e-14);
    }

    #[test]
    fn small_radius_is_of_order_inverse_eps() {
        let g = xi_small_radius(0.5, 1e-3);
        assert!(g > 900.0 && g < 1200.0, "{g}");
        let (a, b) = xi_bounds_outside(0.5, g);
        assert!(a <= 1e-3 && b <= 1e-3);
    }
}
