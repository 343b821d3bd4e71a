//! Exact polynomial arithmetic: the quartic truncation `U`, its resultant
//! `V`, the perturbation expansion and restrictions to segments.

pub mod gauges;
pub mod int_poly;
pub mod mpoly;
pub mod rat_poly;
pub mod resultant;
pub mod segment;

pub use gauges::{f_gauge, f_gauge_increasing_on, tail_phi_psi, two_over_f};
pub use int_poly::{IntPoly, PolyJson};
pub use mpoly::{BivariateIntPoly, MPoly, Var};
pub use rat_poly::RatPoly;
pub use resultant::{
    build_perturbed_resultant, perturbation_key, perturbation_name, sylvester_resultant, truncation_resultant,
    PerturbationKey,
};
pub use segment::{contour_segment, contour_segments, restrict_to_segment, GaussRat, RealPolyPair, SegmentQ};

/// Checks whether `(4q^2 + 2q - 1)^2` divides `V`, returning the cofactor if so.
pub fn golden_square_cofactor(v: &IntPoly) -> Option<IntPoly> {
    let f = IntPoly::from_i64(&[-1, 2, 4]);
    v.div_exact(&(&f * &f)).ok()
}
