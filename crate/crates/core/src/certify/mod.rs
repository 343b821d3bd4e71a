//! Certified inequalities: segment bounds, Σ-certificates, Rouché counts and
//! the dominating-term lemmas.

pub mod bound;
pub mod lemmas;
pub mod rouche;
pub mod segments;
pub mod sturm;

pub use bound::{certify_segment_bound, BoundCertificate, BoundKind, PartsConvention, PRECISION_BITS};
pub use lemmas::{
    circle_nonvanishing, no_common_zero_thetaq_thetax, theta_xx_nonvanishing, transversality_check,
    verify_proposition_constants, CheckedInequality, CircleCertificate, DominanceCertificate, PropositionReport,
    TransversalityCertificate,
};
pub use rouche::{left_strip, rouche_zero_count, square_k, Rect, ZeroCount};
pub use segments::{
    certify_all_segments, certify_all_segments_with, certify_segments_table, published_thresholds, segment_report, SegmentSuite,
    SegmentThresholds, SigmaCertificate, SuiteOptions,
};
pub use sturm::{isolate_real_roots, RootInterval, SturmSequence};
