//! Newton iteration on the double-zero system `θ = θ_x = 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ball::BallComplex;
use crate::error::{SpectrumError, ThetaError};
use crate::theta::jet::{F, FQ, FQX, FX, FXX};
use crate::theta::series::partial_sums;
use crate::theta::{theta_jet, theta_jet_fast};

pub const MAX_ITERATIONS: usize = 50;

/// Smallest `|θ_xx|` accepted for a genuine double (not triple) zero.
pub const MIN_THETA_XX: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub q_star: Complex64,
    pub x_star: Complex64,
    /// Certified upper bound on `|θ(q*, x*)|`.
    pub residual_theta: f64,
    /// Certified upper bound on `|θ_x(q*, x*)|`.
    pub residual_theta_x: f64,
    /// Certified lower bound on `|θ_xx(q*, x*)|`.
    pub theta_xx_modulus: f64,
    pub index_label: Option<i64>,
    pub iterations: usize,
}

/// Which function the solver works on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverMode {
    /// The full series θ.
    Full,
    /// The truncation `Σ_{j<n} q^{j(j+1)/2} x^j`.
    Truncated(usize),
}

/// `(θ, θ_x, θ_xx, θ_q, θ_qx)` times `exp(-log_scale)`, with `log_scale`.
fn jet(mode: SolverMode, q: Complex64, x: Complex64) -> ([Complex64; 5], f64) {
    match mode {
        SolverMode::Full => {
            let fj = theta_jet_fast(q, x);
            (fj.jet.c, fj.log_scale)
        }
        SolverMode::Truncated(n) => (partial_sums(q, x, n), 0.0),
    }
}

/// Residual pair `(θ, x θ_x)` after scaling, and the Jacobian in `(q, s)`
/// where `x = σ e^s`.
fn system(mode: SolverMode, q: Complex64, x: Complex64) -> ([Complex64; 2], [[Complex64; 2]; 2], f64) {
    let (c, ls) = jet(mode, q, x);
    let f = [c[F], x * c[FX]];
    let j = [[c[FQ], x * c[FX]], [x * c[FQX], x * c[FX] + x * x * c[FXX]]];
    (f, j, ls)
}

fn norm2(f: &[Complex64; 2], ls: f64) -> f64 {
    (f[0].norm_sqr() + f[1].norm_sqr()).sqrt() * ls.exp()
}

/// Solves `θ(q,x) = θ_x(q,x) = 0` from a seed.
///
/// The unknowns are `q` and `s` with `x = σ e^s`, `σ = x_seed / |x_seed|`,
/// which keeps real seeds exactly real and evens out the scale of `x`.
pub fn find_double_zero(q_seed: Complex64, x_seed: Complex64, tol: f64) -> Result<SpectralPoint, SpectrumError> {
    find_double_zero_in(SolverMode::Full, q_seed, x_seed, tol)
}

pub fn find_double_zero_in(
    mode: SolverMode,
    q_seed: Complex64,
    x_seed: Complex64,
    tol: f64,
) -> Result<SpectralPoint, SpectrumError> {
    if !(tol > 0.0) {
        return Err(SpectrumError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if !(q_seed.norm() < 1.0) || x_seed.norm() == 0.0 || !x_seed.is_finite() {
        return Err(SpectrumError::InvalidArgument(format!("need |q| < 1 and x != 0, got q = {q_seed}, x = {x_seed}")));
    }
    let sigma = x_seed / x_seed.norm();
    let mut q = q_seed;
    let mut s = Complex64::new(x_seed.norm().ln(), 0.0);
    let xof = |s: Complex64| sigma * s.exp();
    let (mut f, mut jac, ls0) = system(mode, q, xof(s));
    let mut res = norm2(&f, ls0);
    for it in 1..=MAX_ITERATIONS {
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        let scale = (jac[0][0].norm() + jac[0][1].norm()) * (jac[1][0].norm() + jac[1][1].norm());
        if !(det.norm() > 1e-14 * scale) {
            return Err(SpectrumError::SingularJacobian { q: q.to_string(), x: xof(s).to_string() });
        }
        let dq = (f[0] * jac[1][1] - f[1] * jac[0][1]) / det;
        let ds = (jac[0][0] * f[1] - jac[1][0] * f[0]) / det;
        // damped step: halve until the residual does not grow
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..30 {
            let qn = q - dq * lambda;
            let sn = s - ds * lambda;
            if qn.norm() < 1.0 {
                let (fnew, jnew, lsn) = system(mode, qn, xof(sn));
                let rn = norm2(&fnew, lsn);
                if rn.is_finite() && (rn <= res || rn < tol * 1e-3) {
                    accepted = Some((qn, sn, fnew, jnew, rn));
                    break;
                }
            }
            lambda *= 0.5;
        }
        let Some((qn, sn, fnew, jnew, rn)) = accepted else {
            return Err(SpectrumError::NoConvergence { iterations: it, residual: res });
        };
        let step = (dq * lambda).norm() + (ds * lambda).norm();
        q = qn;
        s = sn;
        f = fnew;
        jac = jnew;
        res = rn;
        if step < 1e-15 || (res < tol * 1e-3 && step < 1e-12) {
            return finish(mode, q, xof(s), tol, it);
        }
    }
    Err(SpectrumError::NoConvergence { iterations: MAX_ITERATIONS, residual: res })
}

/// Recomputes the residuals with certified ball arithmetic.
fn finish(mode: SolverMode, q: Complex64, x: Complex64, tol: f64, iterations: usize) -> Result<SpectralPoint, SpectrumError> {
    let c: [BallComplex; 5] = match mode {
        SolverMode::Full => {
            let (qb, xb) = (BallComplex::point(q), BallComplex::point(x));
            // the rounding floor may sit above tol/1000; the residual test below decides
            match theta_jet(qb, xb, tol * 1e-3) {
                Err(ThetaError::ToleranceUnreachable { achieved, .. }) if achieved.is_finite() => theta_jet(qb, xb, achieved * 1.01)?.c,
                r => r?.c,
            }
        }
        SolverMode::Truncated(n) => partial_sums(BallComplex::point(q), BallComplex::point(x), n),
    };
    let p = SpectralPoint {
        q_star: q,
        x_star: x,
        residual_theta: c[F].abs_upper(),
        residual_theta_x: c[FX].abs_upper(),
        theta_xx_modulus: c[FXX].abs_lower(),
        index_label: None,
        iterations,
    };
    if !(p.residual_theta < tol && p.residual_theta_x < tol) {
        return Err(SpectrumError::NoConvergence { iterations, residual: p.residual_theta.max(p.residual_theta_x) });
    }
    if !(p.theta_xx_modulus > MIN_THETA_XX) {
        return Err(SpectrumError::MissedBranch(format!("|theta_xx| = {} at q = {q}: not a double zero", p.theta_xx_modulus)));
    }
    Ok(p)
}
