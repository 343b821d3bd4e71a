//! Plain double-precision evaluation for Newton solvers and continuation.
//!
//! Results carry a `log_scale`: the true jet equals `jet * exp(log_scale)`.
//! Scaling only kicks in when the terms would overflow, e.g. for deep
//! branches `|x| ~ |q|^{-j}` at small `|q|`.

use num_complex::Complex64;

use super::jet::Jet;
use super::product::{factors_needed, theta_jet_product, theta_star_product_value};
use super::series::{log_max_term, log_term_mass, partial_sums, partial_value, terms_needed, tri, MAX_TERMS};

const SERIES_LIMIT: f64 = 9.21; // ln 1e4
const OVERFLOW_LIMIT: f64 = 650.0;

#[derive(Clone, Copy, Debug)]
pub struct FastJet {
    pub jet: Jet<Complex64>,
    pub log_scale: f64,
}

impl FastJet {
    /// `ln sum_j |q|^{j(j+1)/2} |x|^j` at the evaluation point.
    pub fn log_mass(q: Complex64, x: Complex64) -> f64 {
        log_term_mass(q.norm(), x.norm())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Series,
    Product,
    ScaledSeries,
}

pub fn choose_route(q: Complex64, x: Complex64) -> Route {
    let lm = log_max_term(q.norm(), x.norm());
    if lm <= SERIES_LIMIT || x.norm() == 0.0 {
        Route::Series
    } else if lm <= OVERFLOW_LIMIT {
        Route::Product
    } else {
        Route::ScaledSeries
    }
}

fn series_terms(q_abs: f64, w_abs: f64) -> usize {
    terms_needed(q_abs, w_abs, f64::INFINITY).map(|(n, _)| n).unwrap_or(super::series::MAX_TERMS)
}

fn product_factors(q_abs: f64, x_abs: f64) -> usize {
    factors_needed(q_abs, x_abs, x_abs, 1e-18).map(|(m, _)| m).unwrap_or(super::series::MAX_TERMS)
}

/// Jet `(θ, θ_x, θ_xx, θ_q, θ_qx)` in double precision.
pub fn theta_jet_fast(q: Complex64, x: Complex64) -> FastJet {
    let (qa, xa) = (q.norm(), x.norm());
    match choose_route(q, x) {
        Route::Series => {
            let s = partial_sums(q, x, series_terms(qa, xa));
            FastJet { jet: Jet { c: s }, log_scale: 0.0 }
        }
        Route::Product => {
            let m = product_factors(qa, xa);
            let n = series_terms(qa, 1.0 / xa);
            FastJet { jet: theta_jet_product(q, x, m, [0.0; 5], n, 0.0), log_scale: 0.0 }
        }
        Route::ScaledSeries => scaled_series(q, x),
    }
}

/// θ alone in double precision, returned as `(value, log_scale)`.
pub fn theta_value_fast(q: Complex64, x: Complex64) -> (Complex64, f64) {
    let (qa, xa) = (q.norm(), x.norm());
    match choose_route(q, x) {
        Route::Series => (partial_value(q, x, series_terms(qa, xa)), 0.0),
        Route::Product => {
            let m = product_factors(qa, xa);
            let n = series_terms(qa, 1.0 / xa);
            let w = x.inv();
            (theta_star_product_value(q, x, m) - w * partial_value(q, w, n), 0.0)
        }
        Route::ScaledSeries => {
            let fj = scaled_series(q, x);
            (fj.jet.c[0], fj.log_scale)
        }
    }
}

/// `a / b` without the intermediate `|b|²`, which overflows once `|b|` passes ~1e154.
pub fn safe_div(a: Complex64, b: Complex64) -> Complex64 {
    let s = b.re.abs().max(b.im.abs());
    if s == 0.0 || !s.is_finite() {
        return a / b;
    }
    (a / s) / (b / s)
}

fn scaled_series(q: Complex64, x: Complex64) -> FastJet {
    let (qa, xa) = (q.norm(), x.norm());
    let lm = log_max_term(qa, xa);
    // the peak index: t_j ln|q| + j ln|x| is a concave quadratic in j
    let (lq, lx) = (qa.ln(), xa.ln());
    let jstar = (lx / -lq - 0.5).max(0.0);
    let v = |j: usize| tri(j) as f64 * lq + j as f64 * lx;
    let (a, b) = (jstar.floor() as usize, jstar.ceil() as usize);
    let m = if v(a) >= v(b) { a } else { b };
    // anchor at the largest term and reach the others by the ratios
    // q^{j+1} x, so neighbouring terms keep full relative accuracy
    let anchor = (q.ln() * tri(m) as f64 + x.ln() * m as f64 - lm).exp();
    let mut terms = vec![Complex64::new(0.0, 0.0); m + 1];
    terms[m] = anchor;
    let mut qp = q.powi(m as i32);
    for j in (0..m).rev() {
        // term_j = term_{j+1} / (q^{j+1} x)
        terms[j] = safe_div(terms[j + 1], qp * x);
        qp = safe_div(qp, q);
        if !terms[j].is_finite() || terms[j].norm() < 1e-30 {
            terms[j] = Complex64::new(0.0, 0.0);
            break;
        }
    }
    let mut qp = q.powi(m as i32 + 1);
    let mut t = anchor;
    for j in m + 1.. {
        t = t * qp * x;
        qp *= q;
        if !t.is_finite() || t.norm() < 1e-30 {
            break;
        }
        terms.push(t);
        if j > MAX_TERMS {
            break;
        }
    }
    let (qi, xi) = (q.inv(), x.inv());
    let mut s = [Complex64::new(0.0, 0.0); 5];
    for (j, &term) in terms.iter().enumerate() {
        let t = tri(j) as f64;
        let jf = j as f64;
        s[0] += term;
        s[1] += term * jf * xi;
        s[2] += term * (jf * (jf - 1.0)) * xi * xi;
        s[3] += term * t * qi;
        s[4] += term * (t * jf) * qi * xi;
    }
    FastJet { jet: Jet { c: s }, log_scale: lm }
}
