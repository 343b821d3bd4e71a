//! The partial theta function θ(q,x) = Σ_{j≥0} q^{j(j+1)/2} x^j.

pub mod fast;
pub mod gauge;
pub mod jacobi;
pub mod jet;
pub mod product;
pub mod series;

use serde::Serialize;

use crate::ball::BallComplex;
use crate::error::ThetaError;
use jet::Jet;
use series::{log_max_term, terms_needed};

pub use fast::{theta_jet_fast, theta_value_fast, FastJet};
pub use gauge::{
    dominating_term_margin, dominating_term_margin_at_radius, phi_gauge, phi_interval, solve_c0,
    solve_c1, GaugeConstants,
};
pub use jacobi::{jacobi_theta_star_eval, xi_small_radius, xi_tail_eval, XiTail};
pub use series::TruncationPlan;

/// Which partial derivative to return from [`theta_partial_eval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Partial {
    Value,
    X,
    XX,
    Q,
    QX,
}

impl Partial {
    pub fn from_orders(dx: u8, dq: u8) -> Result<Self, ThetaError> {
        match (dx, dq) {
            (0, 0) => Ok(Self::Value),
            (1, 0) => Ok(Self::X),
            (2, 0) => Ok(Self::XX),
            (0, 1) => Ok(Self::Q),
            (1, 1) => Ok(Self::QX),
            _ => Err(ThetaError::UnsupportedOrder { dx, dq }),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Self::Value => jet::F,
            Self::X => jet::FX,
            Self::XX => jet::FXX,
            Self::Q => jet::FQ,
            Self::QX => jet::FQX,
        }
    }
}

fn check_q(q: &BallComplex) -> Result<f64, ThetaError> {
    let q_hi = q.abs_upper();
    if !(q_hi < 1.0) {
        return Err(ThetaError::NonConvergent { q_abs: q_hi });
    }
    Ok(q_hi)
}

/// Certified jet through the plain series. `None` if the tail cannot be bounded.
pub fn jet_by_series(q: BallComplex, x: BallComplex, tol: f64) -> Option<Jet<BallComplex>> {
    let (q_hi, x_hi) = (q.abs_upper(), x.abs_upper());
    let (n, tail) = terms_needed(q_hi, x_hi, tol / 4.0)?;
    let s = series::partial_sums(q, x, n);
    let mut jet = Jet { c: s.map(|v| v.inflate(tail)) };
    // the value component also admits the sharper geometric bound
    let plain = TruncationPlan::tail_at(q_hi, x_hi, n);
    if plain < tail {
        jet.c[0] = BallComplex::new(s[0].center, s[0].radius).inflate(plain);
    }
    Some(jet)
}

/// Certified jet through the triple product. `None` if `x` may vanish or
/// the truncation cannot be controlled.
pub fn jet_by_product(q: BallComplex, x: BallComplex, tol: f64) -> Option<Jet<BallComplex>> {
    let q_hi = q.abs_upper();
    let (x_lo, x_hi) = (x.abs_lower(), x.abs_upper());
    if x_lo == 0.0 {
        return None;
    }
    let target = (tol / 4.0).min(1e-18);
    let (m, radii) = product::factors_needed(q_hi, x_lo, x_hi, target)?;
    let (n, tail) = terms_needed(q_hi, 1.0 / x_lo, tol / 4.0)?;
    Some(product::theta_jet_product(q, x, m, radii, n, tail))
}

/// How a certified jet was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalRoute {
    Series,
    Product,
}

/// Route and truncation behind a certified value: series terms, or
/// product factors for the triple-product route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EvalPlan {
    pub route: EvalRoute,
    pub terms: usize,
}

fn plan_for(route: EvalRoute, q: &BallComplex, x: &BallComplex, tol: f64) -> EvalPlan {
    let (q_hi, x_lo, x_hi) = (q.abs_upper(), x.abs_lower(), x.abs_upper());
    let terms = match route {
        EvalRoute::Series => terms_needed(q_hi, x_hi, tol / 4.0).map_or(0, |t| t.0),
        EvalRoute::Product => product::factors_needed(q_hi, x_lo, x_hi, (tol / 4.0).min(1e-18)).map_or(0, |t| t.0),
    };
    EvalPlan { route, terms }
}

/// Certified jet `(θ, θ_x, θ_xx, θ_q, θ_qx)`, choosing the better route for
/// the requested component.
pub fn theta_jet_for(
    q: BallComplex,
    x: BallComplex,
    want: Partial,
    tol: f64,
) -> Result<Jet<BallComplex>, ThetaError> {
    Ok(theta_jet_planned(q, x, want, tol)?.0)
}

/// [`theta_jet_for`] together with the route that produced it.
pub fn theta_jet_planned(
    q: BallComplex,
    x: BallComplex,
    want: Partial,
    tol: f64,
) -> Result<(Jet<BallComplex>, EvalPlan), ThetaError> {
    if !(tol > 0.0) {
        return Err(ThetaError::DomainError(format!("tolerance must be positive, got {tol}")));
    }
    let q_hi = check_q(&q)?;
    let k = want.index();
    let series_first = log_max_term(q_hi, x.abs_upper()) <= 9.21 || x.abs_lower() == 0.0;
    type RouteFn = fn(BallComplex, BallComplex, f64) -> Option<Jet<BallComplex>>;
    let routes: [(EvalRoute, RouteFn); 2] = if series_first {
        [(EvalRoute::Series, jet_by_series), (EvalRoute::Product, jet_by_product)]
    } else {
        [(EvalRoute::Product, jet_by_product), (EvalRoute::Series, jet_by_series)]
    };
    let mut best: Option<(Jet<BallComplex>, EvalRoute)> = None;
    for (name, route) in routes {
        if let Some(j) = route(q, x, tol) {
            let better = match &best {
                Some(b) => j.c[k].radius < b.0.c[k].radius,
                None => j.c[k].radius.is_finite(),
            };
            if better {
                best = Some((j, name));
            }
        }
        if let Some(b) = &best {
            if b.0.c[k].radius <= tol {
                break;
            }
        }
    }
    let (jet, route) = best.ok_or(ThetaError::ToleranceUnreachable { tol, achieved: f64::INFINITY })?;
    let r = jet.c[k].radius;
    if !r.is_finite() || (q.is_exact() && x.is_exact() && r > tol) {
        return Err(ThetaError::ToleranceUnreachable { tol, achieved: r });
    }
    Ok((jet, plan_for(route, &q, &x, tol)))
}

/// Certified enclosure of θ(q,x).
pub fn theta_eval(q: BallComplex, x: BallComplex, tol: f64) -> Result<BallComplex, ThetaError> {
    Ok(theta_jet_for(q, x, Partial::Value, tol)?.c[jet::F])
}

/// Certified enclosure of `∂^{dx}_x ∂^{dq}_q θ(q,x)` for the five orders used.
pub fn theta_partial_eval(
    q: BallComplex,
    x: BallComplex,
    dx_order: u8,
    dq_order: u8,
    tol: f64,
) -> Result<BallComplex, ThetaError> {
    let want = Partial::from_orders(dx_order, dq_order)?;
    Ok(theta_jet_for(q, x, want, tol)?.c[want.index()])
}

/// Certified jet where every component meets the tolerance if possible.
pub fn theta_jet(q: BallComplex, x: BallComplex, tol: f64) -> Result<Jet<BallComplex>, ThetaError> {
    theta_jet_for(q, x, Partial::Value, tol)
}
