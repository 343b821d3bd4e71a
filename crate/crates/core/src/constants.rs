//! Published constants, polynomial lists and segment thresholds, read from
//! the manifest `data/constants.json` that is compiled into the crate.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::certify::SegmentThresholds;
use crate::poly::{IntPoly, PolyJson};

pub const MANIFEST_JSON: &str = include_str!("../data/constants.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constant {
    pub name: String,
    /// Decimal literal as printed.
    pub value: String,
    /// Allowed absolute difference for a reproduction.
    pub tolerance: f64,
    pub source: String,
}

impl Constant {
    pub fn value_f64(&self) -> f64 {
        self.value.parse().expect("manifest values are decimal literals")
    }
}

/// A published one- or two-sided bound `lo <= value < hi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub name: String,
    pub lo: Option<String>,
    pub hi: Option<String>,
    pub source: String,
}

impl Bound {
    /// `lo <= v < hi` for the sides that are present.
    pub fn contains(&self, v: f64) -> bool {
        let lo = self.lo.as_deref().map_or(true, |s| v >= s.parse::<f64>().expect("decimal"));
        let hi = self.hi.as_deref().map_or(true, |s| v < s.parse::<f64>().expect("decimal"));
        lo && hi
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCorrection {
    pub segment: String,
    pub field: String,
    pub value: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub constants: Vec<Constant>,
    pub bounds: Vec<Bound>,
    pub polynomials: BTreeMap<String, PolyJson>,
    pub segment_thresholds: Vec<SegmentThresholds>,
    pub corrected_thresholds: Vec<ThresholdCorrection>,
}

impl Manifest {
    pub fn constant(&self, name: &str) -> Option<&Constant> {
        self.constants.iter().find(|c| c.name == name)
    }

    pub fn bound(&self, name: &str) -> Option<&Bound> {
        self.bounds.iter().find(|b| b.name == name)
    }

    pub fn polynomial(&self, name: &str) -> Option<IntPoly> {
        self.polynomials.get(name).map(|p| IntPoly::from_json(p).expect("manifest polynomials are integer lists"))
    }

    /// The threshold table with the listed corrections applied.
    pub fn corrected_table(&self) -> Vec<SegmentThresholds> {
        let mut t = self.segment_thresholds.clone();
        for c in &self.corrected_thresholds {
            let row = t.iter_mut().find(|r| r.segment == c.segment).expect("correction names a known segment");
            match c.field.as_str() {
                "lower_v" => row.lower_v = c.value.clone(),
                "upper_v1" => row.upper_v1 = c.value.clone(),
                "upper_vk" => row.upper_vk = c.value.clone(),
                "upper_w" => row.upper_w = c.value.clone(),
                other => panic!("unknown threshold field {other}"),
            }
        }
        t
    }
}

pub fn manifest() -> &'static Manifest {
    static M: OnceLock<Manifest> = OnceLock::new();
    M.get_or_init(|| serde_json::from_str(MANIFEST_JSON).expect("embedded manifest parses"))
}

/// Published value of a named constant.
pub fn published(name: &str) -> f64 {
    manifest().constant(name).unwrap_or_else(|| panic!("no constant {name} in the manifest")).value_f64()
}
