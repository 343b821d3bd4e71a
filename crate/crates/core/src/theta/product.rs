//! θ through the Jacobi triple product.
//!
//! For `x != 0`,
//! `θ(q,x) = Θ*(q,x) - (1/x) θ(q,1/x)` with
//! `Θ*(q,x) = prod_{m>=1} (1 - q^m)(1 + q^m x)(1 + q^{m-1}/x)`.
//! The product has no cancellation, which matters near `|q| -> 1` where the
//! plain series has enormous terms that almost cancel.

use super::jet::{Jet, Scalar};
use super::series::partial_sums;
use crate::interval::IntervalReal;

/// Jet of the first `m_max` factors of the triple product.
pub fn theta_star_product<T: Scalar>(q: T, x: T, m_max: usize) -> Jet<T> {
    let zero = T::from_f64(0.0);
    let one = T::from_f64(1.0);
    let two = T::from_f64(2.0);
    let w = x.recip();
    let w2 = w * w;
    let w3 = w2 * w;
    let mut acc = Jet::constant(one);
    // qm = q^m, qm1 = q^{m-1}, qm2 = q^{m-2}
    let mut qm1 = one;
    let mut qm2 = zero;
    for m in 1..=m_max {
        let qm = qm1 * q;
        let mf = T::from_f64(m as f64);
        let a = Jet::new(one - qm, zero, zero, -(mf * qm1), zero);
        let b = Jet::new(one + qm * x, qm, zero, mf * qm1 * x, mf * qm1);
        let mf1 = T::from_f64((m - 1) as f64);
        let dq = if m >= 2 { mf1 * qm2 } else { zero };
        let c = Jet::new(one + qm1 * w, -(qm1 * w2), two * qm1 * w3, dq * w, -(dq * w2));
        acc = acc * a * b * c;
        qm2 = qm1;
        qm1 = qm;
    }
    acc
}

/// Value of the first `m_max` factors.
pub fn theta_star_product_value<T: Scalar>(q: T, x: T, m_max: usize) -> T {
    let one = T::from_f64(1.0);
    let w = x.recip();
    let mut acc = one;
    let mut qm1 = one;
    for _ in 1..=m_max {
        let qm = qm1 * q;
        acc = acc * (one - qm) * (one + qm * x) * (one + qm1 * w);
        qm1 = qm;
    }
    acc
}

/// Radii bounding `T - 1` component-wise, where `T` is the jet of the
/// discarded factors `m > m_max`, valid for `|q| <= q_abs` and
/// `x_min <= |x| <= x_max`. Returns `None` when the factors are not yet
/// uniformly close to 1 (each of `q^m x`, `q^{m-1}/x`, `q^m` must stay below 1/2).
pub fn product_tail_radii(q_abs: f64, x_min: f64, x_max: f64, m_max: usize) -> Option<[f64; 5]> {
    assert!(m_max >= 2);
    if q_abs == 0.0 {
        return Some([0.0; 5]);
    }
    let one = IntervalReal::one();
    let q = IntervalReal::point(q_abs);
    let xmax = IntervalReal::point(x_max);
    let xmin = IntervalReal::point(x_min);
    let m = m_max as f64;
    let qm = q.pow_int(m);
    let qm1 = q.pow_int(m - 1.0);
    let half = 0.5;
    if (qm * q * xmax).hi > half || (qm / xmin).hi > half || (qm * q).hi > half {
        return None;
    }
    let omq = one - q;
    let s1 = qm * q / omq;
    let s2 = (qm * q).sqr() / (one - q.sqr());
    let sm1 = qm / omq;
    let d1 = qm * (IntervalReal::point(m + 1.0) - q * m) / omq.sqr();
    let d2 = qm1 * (IntervalReal::point(m) - q * (m - 1.0)) / omq.sqr();
    let two = IntervalReal::point(2.0);
    let l0 = two * (s1 + s1 * xmax + sm1 / xmin);
    let lx = two * s1 + two * sm1 / xmin.sqr();
    let lxx = IntervalReal::point(4.0) * s2 + IntervalReal::point(10.0) * sm1 / xmin.powi(3);
    let lq = two * d1 + two * d1 * xmax + two * d2 / xmin;
    let lqx = IntervalReal::point(4.0) * d1 + IntervalReal::point(4.0) * d2 / xmin.sqr();
    let e = l0.exp();
    // e^l - 1 <= l / (1 - l) for 0 <= l < 1, sharper than subtracting 1 from exp
    let em1 = if l0.hi < 0.5 { (l0 / (one - l0)).hi } else { (e - one).hi };
    let radii = [
        em1,
        (e * lx).hi,
        (e * (lxx + lx.sqr())).hi,
        (e * lq).hi,
        (e * (lqx + lq * lx)).hi,
    ];
    radii.iter().all(|r| r.is_finite()).then_some(radii)
}

/// Smallest `m_max >= 2` whose tail radii all fall below `target`.
pub fn factors_needed(q_abs: f64, x_min: f64, x_max: f64, target: f64) -> Option<(usize, [f64; 5])> {
    if q_abs == 0.0 {
        return Some((2, [0.0; 5]));
    }
    let reach = x_max.max(1.0 / x_min).max(1.0);
    let guess = ((target / reach).ln() / q_abs.ln()).floor();
    let mut m = if guess.is_finite() && guess > 2.0 { guess as usize } else { 2 };
    m = m.min(super::series::MAX_TERMS);
    while m <= super::series::MAX_TERMS {
        if let Some(r) = product_tail_radii(q_abs, x_min, x_max, m) {
            if r.iter().all(|v| *v <= target) {
                return Some((m, r));
            }
        }
        m += 1 + m / 32;
    }
    None
}

/// Jet of the tail `Ξ(q,x) = -(1/x) θ(q, 1/x)` from the first `n` terms,
/// each series component enlarged by `series_tail`.
pub fn xi_jet<T: Scalar>(q: T, x: T, n: usize, series_tail: f64) -> Jet<T> {
    let zero = T::from_f64(0.0);
    let two = T::from_f64(2.0);
    let w = x.recip();
    let s = partial_sums(q, w, n).map(|v| v.inflate(series_tail));
    // chain rule through w(x) = 1/x
    let w1 = -(w * w);
    let w2 = two * w * w * w;
    let f = Jet::new(s[0], s[1] * w1, s[2] * w1 * w1 + s[1] * w2, s[3], s[4] * w1);
    let wj = Jet::new(w, w1, w2, zero, zero);
    -(wj * f)
}

/// θ through the product, with the discarded factors folded in as radii.
pub fn theta_jet_product<T: Scalar>(
    q: T,
    x: T,
    m_max: usize,
    tail_radii: [f64; 5],
    n: usize,
    series_tail: f64,
) -> Jet<T> {
    let p = theta_star_product(q, x, m_max);
    let t = Jet::constant(T::from_f64(1.0)).inflate(tail_radii);
    p * t + xi_jet(q, x, n, series_tail)
}
