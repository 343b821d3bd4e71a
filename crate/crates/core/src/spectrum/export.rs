//! CSV rows and versioned JSON documents for scans and tracks.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::newton::SpectralPoint;
use super::scan::{NegativeScanNotes, NegativeSpectralPoint};
use super::track::ZeroTrack;

pub const SCHEMA_VERSION: u32 = 1;

/// One CSV row of a spectrum scan. The last three columns are empty for
/// the positive family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub index: Option<i64>,
    pub q_re: f64,
    pub q_im: f64,
    pub x_re: f64,
    pub x_im: f64,
    pub residual_theta: f64,
    pub residual_theta_x: f64,
    pub theta_xx_modulus: f64,
    pub iterations: usize,
    pub branch: Option<String>,
    pub family_index: Option<u32>,
    pub nu: Option<f64>,
}

impl From<&SpectralPoint> for SpectrumRow {
    fn from(p: &SpectralPoint) -> Self {
        Self {
            index: p.index_label,
            q_re: p.q_star.re,
            q_im: p.q_star.im,
            x_re: p.x_star.re,
            x_im: p.x_star.im,
            residual_theta: p.residual_theta,
            residual_theta_x: p.residual_theta_x,
            theta_xx_modulus: p.theta_xx_modulus,
            iterations: p.iterations,
            branch: None,
            family_index: None,
            nu: None,
        }
    }
}

impl From<&NegativeSpectralPoint> for SpectrumRow {
    fn from(p: &NegativeSpectralPoint) -> Self {
        let branch = serde_json::to_value(p.branch).ok().and_then(|v| v.as_str().map(str::to_owned));
        Self { branch, family_index: Some(p.family_index), nu: Some(p.nu), ..Self::from(&p.point) }
    }
}

/// One CSV row of a tracked branch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackRow {
    pub j: u32,
    pub q_re: f64,
    pub q_im: f64,
    pub xi_re: f64,
    pub xi_im: f64,
    pub residual: f64,
}

pub fn track_rows(t: &ZeroTrack) -> Vec<TrackRow> {
    t.samples
        .iter()
        .map(|s| TrackRow { j: t.j, q_re: s.q.re, q_im: s.q.im, xi_re: s.xi.re, xi_im: s.xi.im, residual: s.residual })
        .collect()
}

/// Writes rows with a header line; the header is written even for no rows.
pub fn write_csv<T: Serialize, W: Write>(rows: &[T], header: &[&str], out: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub const SPECTRUM_HEADER: [&str; 12] = [
    "index",
    "q_re",
    "q_im",
    "x_re",
    "x_im",
    "residual_theta",
    "residual_theta_x",
    "theta_xx_modulus",
    "iterations",
    "branch",
    "family_index",
    "nu",
];

pub const TRACK_HEADER: [&str; 6] = ["j", "q_re", "q_im", "xi_re", "xi_im", "residual"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanDocument {
    pub schema_version: u32,
    pub scan: ScanKind,
    pub max_index: u32,
    pub tol: f64,
    pub points: Vec<SpectrumRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<NegativeScanNotes>,
}

impl ScanDocument {
    pub fn positive(points: &[SpectralPoint], max_index: u32, tol: f64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            scan: ScanKind::Positive,
            max_index,
            tol,
            points: points.iter().map(SpectrumRow::from).collect(),
            notes: None,
        }
    }

    pub fn negative(points: &[NegativeSpectralPoint], max_index: u32, tol: f64, notes: NegativeScanNotes) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            scan: ScanKind::Negative,
            max_index,
            tol,
            points: points.iter().map(SpectrumRow::from).collect(),
            notes: Some(notes),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackDocument {
    pub schema_version: u32,
    pub track: ZeroTrack,
}

impl TrackDocument {
    pub fn new(track: ZeroTrack) -> Self {
        Self { schema_version: SCHEMA_VERSION, track }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn point() -> SpectralPoint {
        SpectralPoint {
            q_star: Complex64::new(0.3, 0.0),
            x_star: Complex64::new(-7.5, 0.0),
            residual_theta: 1e-13,
            residual_theta_x: 2e-13,
            theta_xx_modulus: 0.02,
            index_label: Some(1),
            iterations: 4,
        }
    }

    #[test]
    fn csv_has_header_and_empty_optionals() {
        let mut buf = Vec::new();
        write_csv(&[SpectrumRow::from(&point())], &SPECTRUM_HEADER, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], SPECTRUM_HEADER.join(","));
        assert_eq!(lines[1], "1,0.3,0.0,-7.5,0.0,1e-13,2e-13,0.02,4,,,");
    }

    #[test]
    fn empty_scan_still_has_header() {
        let mut buf = Vec::new();
        write_csv::<SpectrumRow, _>(&[], &SPECTRUM_HEADER, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);
    }
}
