//! Truncated power series `S(q, w) = sum_j q^{j(j+1)/2} w^j` and its tails.
//!
//! The same series appears twice: as θ itself (`w = x`) and, with `w = 1/x`,
//! inside the tail Ξ of the Jacobi theta function.

use serde::{Deserialize, Serialize};

use super::jet::Scalar;
use crate::interval::IntervalReal;

/// Hard cap on the number of series terms we are willing to sum.
pub const MAX_TERMS: usize = 200_000;

/// Exponent `j(j+1)/2`.
#[inline]
pub fn tri(j: usize) -> u64 {
    (j as u64) * (j as u64 + 1) / 2
}

/// Number of terms and a bound on the discarded tail of the θ series at a point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationPlan {
    pub n_terms: usize,
    pub tail_bound: f64,
}

impl TruncationPlan {
    /// Upper bound on `|sum_{j >= n} q^{j(j+1)/2} x^j|` given `|q| <= q_abs`, `|x| <= x_abs`.
    ///
    /// Equal to `q^{n(n+1)/2} x^n / (1 - q^n x)` once `q^n x <= 1/2`, and
    /// infinite before that, which keeps it nonincreasing in `n`.
    pub fn tail_at(q_abs: f64, x_abs: f64, n: usize) -> f64 {
        if x_abs == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        if q_abs == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        let x = IntervalReal::point(x_abs);
        let ratio = pow_upper(q_abs, n as f64) * x;
        if ratio.hi > 0.5 {
            return f64::INFINITY;
        }
        let lead = pow_upper(q_abs, tri(n) as f64) * x.pow_int(n as f64);
        (lead / (IntervalReal::one() - ratio)).hi
    }

    /// Smallest plan whose tail bound is at most `tol`.
    pub fn for_point(q_abs: f64, x_abs: f64, tol: f64) -> Option<Self> {
        if !(q_abs < 1.0) {
            return None;
        }
        let mut n = 1;
        while n <= MAX_TERMS {
            let t = Self::tail_at(q_abs, x_abs, n);
            if t <= tol {
                return Some(Self { n_terms: n, tail_bound: t });
            }
            n += 1;
        }
        None
    }
}

/// Upper enclosure of `q^e` for `0 <= q`, integer-valued `e >= 0`.
pub fn pow_upper(q: f64, e: f64) -> IntervalReal {
    IntervalReal::point(q).pow_int(e)
}

/// Bound valid for every one of the five components `S, S_w, S_ww, S_q, S_qw`
/// of the tail `sum_{j >= n}`, given `|q| <= q_abs`, `|w| <= w_abs`, `n >= 2`.
///
/// Each term of any component is at most `(j+1)^3 q^{t_j - 1} w^{j-2} max(1,w)^2`
/// and consecutive majorants have ratio at most `((n+2)/(n+1))^3 q^{n+1} w`.
pub fn jet_tail_bound(q_abs: f64, w_abs: f64, n: usize) -> Option<f64> {
    assert!(n >= 2);
    if q_abs == 0.0 {
        // every term with j >= 2 carries a positive power of q
        return Some(0.0);
    }
    let q = IntervalReal::point(q_abs);
    let w = IntervalReal::point(w_abs);
    let nf = n as f64;
    let growth = (IntervalReal::point(nf + 2.0) / (nf + 1.0)).powi(3);
    let ratio = growth * pow_upper(q_abs, nf + 1.0) * w;
    if !(ratio.hi < 1.0) {
        return None;
    }
    let lead = IntervalReal::point(nf + 1.0).powi(3)
        * q.pow_int((tri(n) - 1) as f64)
        * w.pow_int(nf - 2.0)
        * IntervalReal::point(w_abs.max(1.0)).powi(2);
    let bound = (lead / (IntervalReal::one() - ratio)).hi;
    bound.is_finite().then_some(bound)
}

/// Natural log of the largest term modulus `max_j q^{t_j} w^j`.
pub fn log_max_term(q_abs: f64, w_abs: f64) -> f64 {
    if w_abs <= 1.0 || q_abs == 0.0 {
        return 0.0;
    }
    let lq = q_abs.ln();
    let lw = w_abs.ln();
    // t_j ln q + j ln w is a concave quadratic in j with vertex near lw/(-lq) - 1/2
    let jstar = (lw / -lq - 0.5).max(0.0);
    let mut best = 0.0f64;
    for j in [jstar.floor(), jstar.ceil()] {
        let v = j * (j + 1.0) / 2.0 * lq + j * lw;
        best = best.max(v);
    }
    best
}

/// Number of terms so that the jet tail is below `rel * max term` and `abs_tol`.
pub fn terms_needed(q_abs: f64, w_abs: f64, abs_tol: f64) -> Option<(usize, f64)> {
    if q_abs == 0.0 || w_abs == 0.0 {
        return Some((3, 0.0));
    }
    let scale = log_max_term(q_abs, w_abs).exp();
    let target = abs_tol.min(scale * 1e-18).max(f64::MIN_POSITIVE);
    // start near the point where the ratio drops below 1/2
    let mut n = 2usize;
    if q_abs < 1.0 && w_abs > 0.0 {
        let guess = ((0.5f64 / w_abs).ln() / q_abs.ln()).ceil();
        if guess.is_finite() && guess > 2.0 {
            n = (guess as usize).min(MAX_TERMS);
        }
    }
    while n <= MAX_TERMS {
        if let Some(b) = jet_tail_bound(q_abs, w_abs, n) {
            if b <= target {
                return Some((n, b));
            }
        }
        n += 1 + n / 64;
    }
    None
}

/// Partial sums `[S, S_w, S_ww, S_q, S_qw]` over `j = 0 .. n-1`.
///
/// Every monomial is built from the previous full terms, so no factor like
/// `q^{t_j}` or `w^j` is formed on its own (those under/overflow long before
/// their product does), and `q = 0` or `w = 0` need no special casing.
pub fn partial_sums<T: Scalar>(q: T, w: T, n: usize) -> [T; 5] {
    let zero = T::from_f64(0.0);
    let one = T::from_f64(1.0);
    let mut s = [zero; 5];
    // a1 = q^{t_{j-1}} w^{j-1}, a2 = q^{t_{j-2}} w^{j-2}
    let mut a1 = zero;
    let mut a2 = zero;
    // qj = q^j, qj1 = q^{j-1}
    let mut qj = one;
    let mut qj1 = zero;
    for j in 0..n {
        let a = if j == 0 { one } else { a1 * qj * w };
        s[0] = s[0] + a;
        if j >= 1 {
            let jf = T::from_f64(j as f64);
            let tf = T::from_f64(tri(j) as f64);
            let e = a1 * qj1;
            s[1] = s[1] + jf * a1 * qj;
            s[3] = s[3] + tf * e * w;
            s[4] = s[4] + tf * jf * e;
        }
        if j >= 2 {
            s[2] = s[2] + T::from_f64((j * (j - 1)) as f64) * a2 * qj1 * qj;
        }
        a2 = a1;
        a1 = a;
        qj1 = qj;
        qj = qj * q;
    }
    s
}

/// Value of the series only, `j = 0 .. n-1`.
pub fn partial_value<T: Scalar>(q: T, w: T, n: usize) -> T {
    let one = T::from_f64(1.0);
    let mut s = T::from_f64(0.0);
    let mut term = one;
    let mut qj = one;
    for j in 0..n {
        if j > 0 {
            qj = qj * q;
            term = term * (qj * w);
        }
        s = s + term;
    }
    s
}

/// `ln sum_j |q|^{t_j} |w|^j`, the scale against which residuals are judged.
pub fn log_term_mass(q_abs: f64, w_abs: f64) -> f64 {
    if q_abs == 0.0 || w_abs == 0.0 {
        return 0.0;
    }
    let lm = log_max_term(q_abs, w_abs);
    let lq = q_abs.ln();
    let lw = w_abs.ln();
    let mut acc = 0.0;
    let mut j = 0usize;
    loop {
        let v = tri(j) as f64 * lq + j as f64 * lw - lm;
        acc += v.exp();
        // past the vertex and negligible
        if v < -60.0 && (j as f64) > lw / -lq {
            break;
        }
        j += 1;
        if j > MAX_TERMS {
            break;
        }
    }
    lm + acc.ln()
}
