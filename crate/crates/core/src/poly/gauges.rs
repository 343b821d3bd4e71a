//! Real gauges attached to the quartic truncation: `f(t)` bounding the
//! size of double zeros, and the tails `φ`, `ψ` dropped by the truncation.

use crate::error::ThetaError;
use crate::interval::IntervalReal;

/// `f(t) = t - t^{5/2}/(1 - t)`, enclosed.
pub fn f_gauge_interval(t: IntervalReal) -> IntervalReal {
    let one = IntervalReal::one();
    t - t.sqr() * t.sqrt() / (one - t)
}

/// `f(t) = t - t^{5/2}/(1 - t) = t - Σ_{j≥3} t^{j-1/2}` for `0 < t < 1`.
pub fn f_gauge(t: f64) -> Result<f64, ThetaError> {
    if !(t > 0.0 && t < 1.0) {
        return Err(ThetaError::DomainError(format!("f needs 0 < t < 1, got {t}")));
    }
    Ok(f_gauge_interval(IntervalReal::point(t)).mid())
}

/// Enclosure of `2 / f(t)`.
pub fn two_over_f(t: f64) -> Result<IntervalReal, ThetaError> {
    if !(t > 0.0 && t < 1.0) {
        return Err(ThetaError::DomainError(format!("f needs 0 < t < 1, got {t}")));
    }
    let f = f_gauge_interval(IntervalReal::point(t));
    if !f.is_positive() {
        return Err(ThetaError::DomainError(format!("f({t}) is not positive")));
    }
    Ok(IntervalReal::point(2.0) / f)
}

/// `f'(t) = 1 - (5/2 t^{3/2}(1-t) + t^{5/2}) / (1-t)^2`.
pub fn f_gauge_derivative_interval(t: IntervalReal) -> IntervalReal {
    let one = IntervalReal::one();
    let s = t.sqrt();
    let omt = one - t;
    let num = t * s * omt * 2.5 + t.sqr() * s;
    one - num / omt.sqr()
}

/// Certifies `f' > 0` on `[a, b]` by interval evaluation on `pieces` subintervals.
pub fn f_gauge_increasing_on(a: f64, b: f64, pieces: usize) -> bool {
    assert!(0.0 <= a && a < b && b < 1.0 && pieces > 0);
    let h = (b - a) / pieces as f64;
    (0..pieces).all(|i| {
        let lo = a + h * i as f64;
        let hi = if i + 1 == pieces { b } else { a + h * (i + 1) as f64 };
        f_gauge_derivative_interval(IntervalReal::new(lo, hi)).is_positive()
    })
}

/// Upper bounds on `φ = Σ_{j≥j0} |q|^{j(j+1)/2}|x|^j` and
/// `ψ = Σ_{j≥j0} j |q|^{j(j+1)/2-1}|x|^{j-1}`.
///
/// Both sums are bounded by explicit summation up to an index where the
/// term ratio drops below 1/2, plus a geometric tail.
pub fn tail_phi_psi(q_abs: f64, x_abs: f64, j_start: u32) -> Result<(f64, f64), ThetaError> {
    if !(q_abs >= 0.0 && q_abs < 1.0 && x_abs >= 0.0) {
        return Err(ThetaError::NonConvergent { q_abs });
    }
    if x_abs == 0.0 || q_abs == 0.0 {
        return Ok((0.0, 0.0));
    }
    let q = IntervalReal::point(q_abs);
    let x = IntervalReal::point(x_abs);
    // ratio of consecutive φ terms at index j is q^{j+1} x; for ψ it is at most (j+1)/j q^{j+1} x
    let mut phi = IntervalReal::zero();
    let mut psi = IntervalReal::zero();
    let mut j = j_start.max(1);
    loop {
        let jf = j as f64;
        let e = jf * (jf + 1.0) / 2.0;
        let term = q.pow_int(e) * x.pow_int(jf);
        phi = phi + term;
        psi = psi + q.pow_int(e - 1.0) * x.pow_int(jf - 1.0) * jf;
        let ratio = q.pow_int(jf + 1.0) * x * ((jf + 2.0) / (jf + 1.0));
        if ratio.hi <= 0.5 {
            // tail from index j+1 onwards, each series geometric with ratio < 1/2
            let next_phi = term * q.pow_int(jf + 1.0) * x;
            let next_psi = q.pow_int(e + jf) * x.pow_int(jf) * (jf + 1.0);
            let denom = IntervalReal::one() - ratio;
            phi = phi + next_phi / denom;
            psi = psi + next_psi / denom;
            return Ok((phi.hi, psi.hi));
        }
        if j > 100_000 {
            return Err(ThetaError::NonConvergent { q_abs });
        }
        j += 1;
    }
}
