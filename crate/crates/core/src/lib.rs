//! Certified numerics for the partial theta function
//! θ(q,x) = Σ_{j≥0} q^{j(j+1)/2} x^j: evaluation, exact resultants,
//! segment certificates, Rouché counts and spectrum computations.

pub mod ball;
pub mod certify;
pub mod constants;
pub mod error;
pub mod interval;
pub mod poly;
pub mod round;
pub mod spectrum;
pub mod theta;

pub use ball::BallComplex;
pub use error::{CertifyError, PolyError, SpectrumError, ThetaError};
pub use interval::IntervalReal;
