use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThetaError {
    #[error("series does not converge: |q| = {q_abs} (need |q| < 1)")]
    NonConvergent { q_abs: f64 },
    #[error("tolerance {tol:e} unreachable; best radius {achieved:e}")]
    ToleranceUnreachable { tol: f64, achieved: f64 },
    #[error("unsupported derivative order (dx = {dx}, dq = {dq})")]
    UnsupportedOrder { dx: u8, dq: u8 },
    #[error("domain error: {0}")]
    DomainError(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("polynomial vanishes identically on [{lo}, {hi}]")]
    IdenticallyZeroOnInterval { lo: f64, hi: f64 },
    #[error("certificate failed on {segment}/{polynomial}: {reason} (t in [{t_lo}, {t_hi}])")]
    CertificateFailed { segment: String, polynomial: String, reason: String, t_lo: f64, t_hi: f64 },
    #[error("cannot certify that the function is nonzero on the boundary near {location}")]
    BoundaryZero { location: String },
    #[error("inconclusive after {subdivisions} subdivisions")]
    Inconclusive { subdivisions: usize },
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("singular Jacobian at q = {q}, x = {x}")]
    SingularJacobian { q: String, x: String },
    #[error("missed branch: {0}")]
    MissedBranch(String),
    #[error("branch jump for j = {j} at q = {q}: |xi| = {modulus} outside ({lo}, {hi})")]
    BranchJump { j: u32, q: String, modulus: f64, lo: f64, hi: f64 },
    #[error("continuation stalled for j = {j} near q = {q}")]
    StepTooSmall { j: u32, q: String },
    #[error("cannot bound |theta| below on the contour near x = {x}")]
    BoundaryZero { x: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}
