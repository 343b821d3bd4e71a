//! Dominating-term certificates and the constants of the annulus separation argument.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ball::BallComplex;
use crate::error::CertifyError;
use crate::interval::IntervalReal;
use crate::theta::{theta_eval, theta_partial_eval, theta_value_fast, GaugeConstants};

/// One checked numeric claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckedInequality {
    pub name: String,
    /// Enclosure of the left-hand side.
    pub lo: f64,
    pub hi: f64,
    /// `">"` or `"<"` against `bound`.
    pub relation: String,
    pub bound: f64,
    pub passed: bool,
}

impl CheckedInequality {
    fn greater(name: &str, v: IntervalReal, bound: f64) -> Self {
        Self { name: name.into(), lo: v.lo, hi: v.hi, relation: ">".into(), bound, passed: v.lo > bound }
    }

    fn less(name: &str, v: IntervalReal, bound: f64) -> Self {
        Self { name: name.into(), lo: v.lo, hi: v.hi, relation: "<".into(), bound, passed: v.hi < bound }
    }

    /// `|v - target| <= tol`.
    fn close(name: &str, v: IntervalReal, target: f64, tol: f64) -> Self {
        let err = (v - target).abs();
        Self { name: name.into(), lo: v.lo, hi: v.hi, relation: format!("= ±{tol:e}"), bound: target, passed: err.hi <= tol }
    }

    pub fn value(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub checks: Vec<CheckedInequality>,
    pub b_tail: f64,
    pub g0: f64,
    pub sin_threshold: f64,
    pub cos_threshold: f64,
    pub cos_4gamma: f64,
    pub all_passed: bool,
}

impl PropositionReport {
    pub fn failures(&self) -> Vec<&CheckedInequality> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn p(x: f64) -> IntervalReal {
    IntervalReal::point(x)
}

fn dec(s: &str) -> IntervalReal {
    IntervalReal::from_decimal(s)
}

/// `2 Σ_{l≥3} 3^{-l²/2}`.
pub fn b_tail_bound() -> IntervalReal {
    let root_third = (p(1.0) / p(3.0)).sqrt();
    let mut s = IntervalReal::zero();
    let mut last = IntervalReal::one();
    for l in 3..40u32 {
        last = root_third.pow_int((l * l) as f64);
        s = s + last;
    }
    // the terms after l = 39 add up to less than the last one kept
    s = s + IntervalReal::new(0.0, last.hi);
    s * 2.0
}

/// Re-derives every numeric step of the separation argument on the
/// circles `|x| = |q|^{-k-1/2}` for `c0 ≤ |q| ≤ 1/3`.
pub fn verify_proposition_constants() -> PropositionReport {
    let one = IntervalReal::one();
    let three = p(3.0);
    let s3 = three.sqrt();
    let mut checks = Vec::new();

    let b = b_tail_bound();
    checks.push(CheckedInequality::less("B tail 2*sum_{l>=3} 3^{-l^2/2} < 0.0146", b, 0.0146));
    checks.push(CheckedInequality::close("B tail = 0.01456...", b, 0.01456, 1e-5));

    // g0 = 2 * 3^{-1/2} (1 - 4/3^{3/2}) * (1/2), using |cos β| > 1/2
    let g0 = s3.recip() * (one - p(4.0) / (s3 * three));
    checks.push(CheckedInequality::close("g0 = 0.1329058248", g0, 0.1329058248, 1e-9));
    let g0_printed = dec("0.1329058248");
    let sin_t = p(0.0146) / g0_printed;
    checks.push(CheckedInequality::close("sin threshold 0.0146/g0 = 0.1098522207", sin_t, 0.1098522207, 1e-8));
    let cos_t = (one - sin_t.sqr()).sqrt();
    checks.push(CheckedInequality::close("cos threshold = 0.9939479310", cos_t, 0.9939479310, 1e-8));
    // cos 4γ = 8c^4 - 8c^2 + 1, increasing in c on [0.99, 1]
    let c = dec("0.9939479310");
    let c2 = c.sqr();
    let cos4 = c2.sqr() * 8.0 - c2 * 8.0 + 1.0;
    checks.push(CheckedInequality::close("cos 4gamma = 0.904624914", cos4, 0.904624914, 1e-8));
    // |q|^{1/2}(1 - 4|q|^{3/2}) decreasing on [c0, 1/3]: derivative 1/(2√r) - 8r < 0
    let c0 = GaugeConstants::compute().c0;
    let r = IntervalReal::new(c0, (one / three).hi);
    checks.push(CheckedInequality::less("d/dr (r^{1/2} - 4 r^2) < 0 on [c0, 1/3]", p(0.5) / r.sqrt() - r * 8.0, 0.0));

    let inv9 = one / p(9.0);
    let mixed = s3.recip() + p(2.0) * inv9;
    checks.push(CheckedInequality::less("case |cos b|<=1/2: 1/sqrt3 + 2/9 < 0.8", mixed, 0.8));
    checks.push(CheckedInequality::greater("case |cos b|<=1/2: R >= 1 - 0.8 > 0.2 (margin)", one - mixed, 0.2));
    checks.push(CheckedInequality::greater("case |cos g|<=1/2: 1 - 1/sqrt3 - 2/9 > 0.2", one - mixed, 0.2));
    checks.push(CheckedInequality::greater("case cos b cos g > 0: 1 - 2/9 > 0.7", one - p(2.0) * inv9, 0.7));
    checks.push(CheckedInequality::greater(
        "case 1/2<|cos b|<=1/sqrt2: 1 - (2/3)^{1/2} - 1/9 > 0.07",
        one - (p(2.0) / three).sqrt() - inv9,
        0.07,
    ));
    checks.push(CheckedInequality::greater("case 1/sqrt2<|cos b|<=0.85: 1 - 1.7/sqrt3 > 0.018", one - dec("1.7") / s3, 0.018));
    let c4 = dec("0.904624914");
    let rows: [(&str, &str, &str, f64); 3] = [
        ("0.93", "0.445", "case 0.85<|cos b|<=0.93", 0.015),
        ("0.98", "0.7298", "case 0.93<|cos b|<=0.98", 0.015),
        ("1", "0.9208", "case 0.98<|cos b|<=1", 0.03),
    ];
    for (a, k, label, bound) in rows {
        let (a, k) = (dec(a), dec(k));
        let at_third = one - a * p(2.0) / s3 + p(2.0) * inv9 * c4 * k;
        checks.push(CheckedInequality::greater(&format!("{label}: value at |q| = 1/3 > {bound}"), at_third, bound));
        // 1 - 2a√r + 2ck r² decreases on [c0, 1/3], so |q| = 1/3 is the worst case
        let slope = -(a / r.sqrt()) + c4 * k * r * 4.0;
        checks.push(CheckedInequality::less(&format!("{label}: bound decreasing in |q| on [c0, 1/3]"), slope, 0.0));
    }
    for (cb, c2b) in [("0.85", "0.445"), ("0.93", "0.7298"), ("0.98", "0.9208")] {
        let v = dec(cb).sqr() * 2.0 - 1.0;
        checks.push(CheckedInequality::close(&format!("cos 2b at |cos b| = {cb} equals {c2b}"), v, dec(c2b).mid(), 1e-15));
    }

    let all_passed = checks.iter().all(|c| c.passed);
    PropositionReport {
        checks,
        b_tail: b.mid(),
        g0: g0.mid(),
        sin_threshold: sin_t.mid(),
        cos_threshold: cos_t.mid(),
        cos_4gamma: cos4.mid(),
        all_passed,
    }
}

/// A first-term dominance claim `1 > Σ rest` with its margin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceCertificate {
    pub name: String,
    pub q_max: f64,
    pub x_max: f64,
    /// Upper bound on the sum of the remaining terms relative to the first.
    pub rest_upper: f64,
    pub margin_lower: f64,
    pub valid: bool,
}

/// Sums `term(j)` for `j >= start` with a geometric tail: once
/// `ratio(j)` (an upper bound on every later term ratio) is at most 1/2,
/// the remainder is at most `term(j+1) / (1 - ratio(j))`. Summation goes on
/// until that remainder is negligible.
fn dominated_sum(start: u32, term: impl Fn(u32) -> IntervalReal, ratio: impl Fn(u32) -> IntervalReal) -> Option<IntervalReal> {
    let mut s = IntervalReal::zero();
    let mut j = start;
    loop {
        s = s + term(j);
        let r = ratio(j);
        if r.hi <= 0.5 {
            let tail = (term(j + 1) / (IntervalReal::one() - r)).hi;
            if tail <= 1e-17 * s.hi.max(1e-300) || j > 1000 {
                return Some(s + IntervalReal::new(0.0, tail));
            }
        }
        if j > 10_000 {
            return None;
        }
        j += 1;
    }
}

fn check_args(q_max: f64, x_max: f64) -> Result<(), CertifyError> {
    if !(q_max > 0.0 && q_max < 1.0 && x_max >= 0.0) {
        return Err(CertifyError::DegenerateInput(format!("need 0 < q_max < 1 and x_max >= 0, got ({q_max}, {x_max})")));
    }
    Ok(())
}

fn dominance(name: &str, q_max: f64, x_max: f64, rest: Option<IntervalReal>) -> Result<DominanceCertificate, CertifyError> {
    let rest = rest.ok_or_else(|| CertifyError::CertificateFailed {
        segment: name.into(),
        polynomial: "series".into(),
        reason: "tail ratio never drops below 1/2".into(),
        t_lo: q_max,
        t_hi: x_max,
    })?;
    let margin = IntervalReal::one() - rest;
    let cert = DominanceCertificate {
        name: name.into(),
        q_max,
        x_max,
        rest_upper: rest.hi,
        margin_lower: margin.lo,
        valid: margin.lo > 0.0,
    };
    if !cert.valid {
        return Err(CertifyError::CertificateFailed {
            segment: name.into(),
            polynomial: "series".into(),
            reason: format!("first term not dominating, margin {}", margin.lo),
            t_lo: q_max,
            t_hi: x_max,
        });
    }
    Ok(cert)
}

/// `θ_xx / 2q^3 = 1 + Σ_{j≥1} (j+1)(j+2)/2 q^{j(j+5)/2} x^j`: certifies the
/// first term dominates for `|q| ≤ q_max`, `|x| ≤ x_max`.
pub fn theta_xx_nonvanishing(q_max: f64, x_max: f64) -> Result<DominanceCertificate, CertifyError> {
    check_args(q_max, x_max)?;
    let (q, x) = (p(q_max), p(x_max));
    let term = |j: u32| {
        let jf = j as f64;
        q.pow_int(jf * (jf + 5.0) / 2.0) * x.pow_int(jf) * ((jf + 1.0) * (jf + 2.0) / 2.0)
    };
    // t_{j+1}/t_j = (j+3)/(j+1) q^{j+3} x, decreasing in j once q^{..} x shrinks
    let ratio = |j: u32| {
        let jf = j as f64;
        q.pow_int(jf + 3.0) * x * ((jf + 3.0) / (jf + 1.0))
    };
    dominance("theta_xx first-term dominance", q_max, x_max, dominated_sum(1, term, ratio))
}

/// `(θ_q/x - θ_x/q)/(q^2 x) = Σ_{j≥1} j(j+1)/2 q^{(j-1)(j+4)/2} x^{j-1}`:
/// certifies the `j = 1` term (equal to 1) dominates.
pub fn no_common_zero_thetaq_thetax(q_max: f64, x_max: f64) -> Result<DominanceCertificate, CertifyError> {
    check_args(q_max, x_max)?;
    let (q, x) = (p(q_max), p(x_max));
    let term = |j: u32| {
        let jf = j as f64;
        q.pow_int((jf - 1.0) * (jf + 4.0) / 2.0) * x.pow_int(jf - 1.0) * (jf * (jf + 1.0) / 2.0)
    };
    // t_{j+1}/t_j = (j+2)/j q^{j+2} x
    let ratio = |j: u32| {
        let jf = j as f64;
        q.pow_int(jf + 2.0) * x * ((jf + 2.0) / jf)
    };
    dominance("theta_q/theta_x first-term dominance", q_max, x_max, dominated_sum(2, term, ratio))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransversalityPoint {
    pub x_abs: f64,
    pub three_y: f64,
    pub one_plus_chi_upper: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransversalityCertificate {
    pub q_abs: f64,
    pub endpoints: Vec<TransversalityPoint>,
    /// `χ` is a power series in `|y|` with nonnegative coefficients, hence
    /// convex, so `3|y| - 1 - χ` is concave and positive between positive endpoints.
    pub justification: String,
    pub valid: bool,
}

/// `χ(|y|) = Σ_{j≥3} j(j+1)/2 |q|^{(j-1)(j-2)/2} |y|^{j-1}`.
pub fn transversality_chi(q_abs: f64, y_abs: f64) -> Option<IntervalReal> {
    let (q, y) = (p(q_abs), p(y_abs));
    let term = |j: u32| {
        let jf = j as f64;
        q.pow_int((jf - 1.0) * (jf - 2.0) / 2.0) * y.pow_int(jf - 1.0) * (jf * (jf + 1.0) / 2.0)
    };
    // t_{j+1}/t_j = (j+2)/j q^{j-1} y
    let ratio = |j: u32| {
        let jf = j as f64;
        q.pow_int(jf - 1.0) * y * ((jf + 2.0) / jf)
    };
    dominated_sum(3, term, ratio)
}

/// Checks `3|y| > 1 + χ` with `y = q^2 x` at `|q| = 0.31` and `|x| ∈ {5.946, λ}`.
pub fn transversality_check() -> Result<TransversalityCertificate, CertifyError> {
    let q_abs = 0.31;
    let lambda = crate::poly::two_over_f(0.29)?;
    let mut endpoints = Vec::new();
    for x in [dec("5.946"), lambda] {
        let y = p(q_abs).sqr() * x;
        // worst case over the enclosure of x: smallest 3y, largest χ
        let chi = transversality_chi(q_abs, y.hi).ok_or_else(|| CertifyError::CertificateFailed {
            segment: "transversality".into(),
            polynomial: "chi".into(),
            reason: "chi series tail not controlled".into(),
            t_lo: x.lo,
            t_hi: x.hi,
        })?;
        let three_y = (y * 3.0).lo;
        let rhs = (chi + 1.0).hi;
        endpoints.push(TransversalityPoint { x_abs: x.mid(), three_y, one_plus_chi_upper: rhs, passed: three_y > rhs });
    }
    let valid = endpoints.iter().all(|e| e.passed);
    let cert = TransversalityCertificate {
        q_abs,
        endpoints,
        justification: "chi is convex in |y| (nonnegative power series), so endpoint checks cover the interval".into(),
        valid,
    };
    if !valid {
        return Err(CertifyError::CertificateFailed {
            segment: "transversality".into(),
            polynomial: "3y - 1 - chi".into(),
            reason: "endpoint inequality fails".into(),
            t_lo: 5.946,
            t_hi: lambda.hi,
        });
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleCertificate {
    pub q: Complex64,
    pub k: u32,
    pub radius: f64,
    pub arcs: usize,
    /// Certified lower bound on `|θ|` over the circle.
    pub min_lower_bound: f64,
    /// Sampled (and locally polished) minimum of `|θ|`.
    pub sampled_min: f64,
    pub sampled_min_angle: f64,
}

/// Certifies `θ(q, x) ≠ 0` on `|x| = |q|^{-k-1/2}` by a mean-value bound on
/// each of `n_subdiv` arcs, bisecting arcs that do not close (up to 8 levels).
pub fn circle_nonvanishing(q: BallComplex, k: u32, n_subdiv: usize) -> Result<CircleCertificate, CertifyError> {
    if k < 2 || n_subdiv == 0 {
        return Err(CertifyError::DegenerateInput("need k >= 2 and at least one arc".into()));
    }
    let q_abs = q.abs_interval();
    if !(q_abs.hi <= 1.0 / 3.0 + 1e-12) || q_abs.lo == 0.0 {
        return Err(CertifyError::DegenerateInput("need 0 < |q| <= 1/3".into()));
    }
    let radius = q_abs.mid().powf(-(k as f64) - 0.5);
    let tau = std::f64::consts::TAU;
    let h0 = tau / n_subdiv as f64;
    let mut min_lb = f64::INFINITY;
    let mut arcs = 0usize;
    // |θ| scales with the largest term on the circle, so the tolerance is relative to the term mass
    let (lq, lr) = (q_abs.hi.ln(), radius.ln());
    let mass: f64 = (0..200).map(|j: i32| (f64::from(j * (j + 1) / 2) * lq + f64::from(j) * lr).exp()).sum();
    let tol = 1e-12 * mass;
    let mut stack: Vec<(f64, f64, u32)> = (0..n_subdiv).rev().map(|i| (h0 * i as f64, h0 * (i + 1) as f64, 0)).collect();
    while let Some((a0, a1, depth)) = stack.pop() {
        let mid = 0.5 * (a0 + a1);
        let xc = Complex64::from_polar(radius, mid);
        // chord from the midpoint to an endpoint bounds the distance to the arc
        let dist = 2.0 * radius * ((a1 - a0) / 4.0).sin();
        let xc_ball = BallComplex::point(xc);
        let arc_ball = BallComplex::new(xc, dist * (1.0 + 1e-12) + 1e-300);
        let val = theta_eval(q, xc_ball, tol)?;
        let dx = theta_partial_eval(q, arc_ball, 1, 0, tol)?;
        let lb = val.abs_lower() - dx.abs_upper() * arc_ball.radius;
        if lb > 0.0 {
            min_lb = min_lb.min(lb);
            arcs += 1;
            continue;
        }
        if depth >= 8 {
            return Err(CertifyError::Inconclusive { subdivisions: arcs + stack.len() + 1 });
        }
        stack.push((mid, a1, depth + 1));
        stack.push((a0, mid, depth + 1));
    }
    let (sampled_min, sampled_min_angle) = sampled_circle_min(q.center, radius, 4 * n_subdiv.max(256));
    Ok(CircleCertificate { q: q.center, k, radius, arcs, min_lower_bound: min_lb, sampled_min, sampled_min_angle })
}

/// Minimum of `|θ|` on the circle: dense sampling, then golden-section polish.
pub fn sampled_circle_min(q: Complex64, radius: f64, n: usize) -> (f64, f64) {
    let f = |a: f64| {
        let (v, ls) = theta_value_fast(q, Complex64::from_polar(radius, a));
        v.norm() * ls.exp()
    };
    let tau = std::f64::consts::TAU;
    let h = tau / n as f64;
    let (mut best, mut best_a) = (f64::INFINITY, 0.0);
    for i in 0..n {
        let a = h * i as f64;
        let v = f(a);
        if v < best {
            best = v;
            best_a = a;
        }
    }
    let (mut lo, mut hi) = (best_a - h, best_a + h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let a = 0.5 * (lo + hi);
    let v = f(a);
    if v < best {
        (v, a.rem_euclid(tau))
    } else {
        (best, best_a)
    }
}
