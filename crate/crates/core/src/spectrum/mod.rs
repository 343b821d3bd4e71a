//! Spectrum of θ: double zeros, zero branches and their Laurent series.

pub mod export;
pub mod localize;
pub mod newton;
pub mod scan;
pub mod track;

pub use export::{ScanDocument, SpectrumRow, TrackDocument, TrackRow};
pub use localize::{
    min_zero_modulus_estimate, omega_k_count, omega_k_unique_zero, rho_trend, seed_grid_search, BranchOutcome, OmegaCount,
    RhoRow, RhoTrend,
};
pub use newton::{find_double_zero, find_double_zero_in, SolverMode, SpectralPoint};
pub use scan::{
    fit_positive_law, negative_scan_notes, negative_spectrum_scan, real_spectrum_scan, AsymptoticFit, AsymptoticModel,
    Family, NegativeBranch, NegativeScanNotes, NegativeSpectralPoint,
};
pub use track::{
    circle_path, eval_laurent, laurent_coefficients, laurent_track, radial_path, reciprocal_sum_check, track_zero,
    ReciprocalSum, ZeroSample, ZeroTrack,
};
