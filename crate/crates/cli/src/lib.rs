//! Certificate suites and the reproduction report behind the `ptheta` binary.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use ptheta::certify::sturm::refine_root;
use ptheta::certify::*;
use ptheta::constants::manifest;
use ptheta::poly::{truncation_resultant, two_over_f, RatPoly};
use ptheta::spectrum::{find_double_zero, real_spectrum_scan, SpectrumRow};
use ptheta::theta::{solve_c0, solve_c1};
use ptheta::CertifyError;

pub const SCHEMA_VERSION: u32 = 1;

/// `2/f(0.29)`, the radius used by the lemma certificates.
pub const LAMBDA: f64 = 8.841250518;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Segments,
    Disk,
    Lemmas,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdTable {
    /// The table as published.
    Published,
    /// The published table with the entries listed under `corrected_thresholds` replaced.
    Corrected,
}

impl ThresholdTable {
    pub fn rows(self) -> Vec<SegmentThresholds> {
        match self {
            Self::Published => manifest().segment_thresholds.clone(),
            Self::Corrected => manifest().corrected_table(),
        }
    }
}

/// One certificate in a suite; `detail` holds the full certificate when it was produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateEntry {
    pub kind: String,
    pub name: String,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub detail: Value,
}

impl CertificateEntry {
    fn from_result<T: Serialize>(kind: &str, name: &str, r: Result<T, CertifyError>, valid: impl Fn(&T) -> bool) -> Self {
        match r {
            Ok(c) => Self {
                kind: kind.into(),
                name: name.into(),
                valid: valid(&c),
                error: None,
                detail: serde_json::to_value(&c).expect("certificates serialize"),
            },
            Err(e) => Self { kind: kind.into(), name: name.into(), valid: false, error: Some(e.to_string()), detail: Value::Null },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub thresholds: ThresholdTable,
    pub threshold_scale: f64,
    pub certificates: Vec<CertificateEntry>,
    pub valid: bool,
}

impl SuiteReport {
    pub fn failures(&self) -> Vec<&CertificateEntry> {
        self.certificates.iter().filter(|c| !c.valid).collect()
    }
}

/// The twelve Σ-certificates and the conjugation-symmetry check.
pub fn segment_entries(table: ThresholdTable, threshold_scale: f64) -> Vec<CertificateEntry> {
    let opts = SuiteOptions { threshold_scale, ..SuiteOptions::default() };
    let outcomes = match segment_report(&table.rows(), &opts) {
        Ok(o) => o,
        Err(e) => {
            return vec![CertificateEntry::from_result::<()>("sigma", "segments", Err(e), |_| false)];
        }
    };
    let mut out: Vec<CertificateEntry> = outcomes
        .into_iter()
        .map(|(name, r)| CertificateEntry::from_result("sigma", &name, r, |c: &SigmaCertificate| c.valid))
        .collect();
    let sym = build_sym();
    out.push(CertificateEntry::from_result("symmetry", "conjugation", sym, |s: &segments::SymmetryCheck| s.valid));
    out
}

fn build_sym() -> Result<segments::SymmetryCheck, CertifyError> {
    let polys = ptheta::poly::build_perturbed_resultant()?;
    Ok(segments::conjugation_symmetry_check(&polys))
}

/// Zero counts of `V`: two in `K`, none in the strip left of `Re q = 0.29`.
pub fn disk_entries() -> Vec<CertificateEntry> {
    let v = match truncation_resultant() {
        Ok(v) => v,
        Err(e) => return vec![CertificateEntry::from_result::<()>("rouche", "V", Err(e.into()), |_| false)],
    };
    [("K", square_k(), 2), ("left_strip", left_strip(), 0)]
        .into_iter()
        .map(|(name, rect, want)| CertificateEntry::from_result("rouche", name, rouche_zero_count(rect, &v), |c: &ZeroCount| c.count == want))
        .collect()
}

/// The proposition constants and the three lemma certificates at `(0.31, λ)`.
pub fn lemma_entries() -> Vec<CertificateEntry> {
    let prop = verify_proposition_constants();
    let prop_valid = prop.all_passed;
    vec![
        CertificateEntry {
            kind: "proposition".into(),
            name: "constants".into(),
            valid: prop_valid,
            error: None,
            detail: serde_json::to_value(&prop).expect("report serializes"),
        },
        CertificateEntry::from_result("lemma", "theta_xx_nonvanishing", theta_xx_nonvanishing(0.31, LAMBDA), |c: &DominanceCertificate| c.valid),
        CertificateEntry::from_result("lemma", "no_common_zero_thetaq_thetax", no_common_zero_thetaq_thetax(0.31, LAMBDA), |c: &DominanceCertificate| {
            c.valid
        }),
        CertificateEntry::from_result("lemma", "transversality", transversality_check(), |c: &TransversalityCertificate| c.valid),
    ]
}

pub fn run_suite(suite: Suite, table: ThresholdTable, threshold_scale: f64) -> SuiteReport {
    let mut certificates = Vec::new();
    if matches!(suite, Suite::All | Suite::Segments) {
        certificates.extend(segment_entries(table, threshold_scale));
    }
    if matches!(suite, Suite::All | Suite::Disk) {
        certificates.extend(disk_entries());
    }
    if matches!(suite, Suite::All | Suite::Lemmas) {
        certificates.extend(lemma_entries());
    }
    let valid = certificates.iter().all(|c| c.valid);
    SuiteReport { schema_version: SCHEMA_VERSION, suite, thresholds: table, threshold_scale, certificates, valid }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantRow {
    pub computed: f64,
    pub paper_value: String,
    pub abs_diff: f64,
    pub tolerance: f64,
    pub within: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub computed: f64,
    pub lo: Option<String>,
    pub hi: Option<String>,
    pub within: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproductionReport {
    pub schema_version: u32,
    pub thresholds: ThresholdTable,
    pub constants_table: BTreeMap<String, ConstantRow>,
    pub bounds_table: BTreeMap<String, BoundRow>,
    pub certificates: Vec<CertificateEntry>,
    pub spectral_points: Vec<SpectrumRow>,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

/// The double root of `V` in `(0.3, 0.32)`, from the square-free part of `gcd(V, V')`.
pub fn lambda0() -> Option<f64> {
    let v = RatPoly::from_int_poly(&truncation_resultant().ok()?);
    let g = v.gcd(&v.derivative());
    let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let roots = isolate_real_roots(&g, &rat(3, 10), &rat(32, 100)).ok()?;
    let r = roots.first()?;
    Some(refine_root(&g, r, &rat(1, 1_000_000_000_000_000_000)).mid_f64())
}

/// Every published constant recomputed, keyed by its manifest name.
pub fn computed_constants() -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    let prop = verify_proposition_constants();
    let c1 = solve_c1(7.95);
    m.insert("c0".into(), solve_c0(1e-13));
    m.insert("c1".into(), c1);
    match find_double_zero(Complex64::new(0.31, 0.0), Complex64::new(-7.5, 0.0), 1e-12) {
        Ok(p) => {
            m.insert("q_tilde_1".into(), p.q_star.re);
            m.insert("y_1".into(), p.x_star.re);
        }
        Err(_) => {
            m.insert("q_tilde_1".into(), f64::NAN);
            m.insert("y_1".into(), f64::NAN);
        }
    }
    m.insert("lambda0".into(), lambda0().unwrap_or(f64::NAN));
    let pub_c1 = manifest().constant("c1").map_or(c1, |c| c.value_f64());
    m.insert("gamma_radius".into(), two_over_f(pub_c1).map_or(f64::NAN, |i| i.mid()));
    m.insert("lambda".into(), two_over_f(0.29).map_or(f64::NAN, |i| i.mid()));
    m.insert("g0".into(), prop.g0);
    m.insert("sin_threshold".into(), prop.sin_threshold);
    m.insert("cos_threshold".into(), prop.cos_threshold);
    m.insert("cos_4gamma".into(), prop.cos_4gamma);
    m
}

fn computed_bounds() -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    m.insert("b_tail".into(), lemmas::b_tail_bound().hi);
    let (a0, b0) = segments::perturbation_radii().unwrap_or((f64::NAN, f64::NAN));
    m.insert("a0".into(), a0);
    m.insert("b0".into(), b0);
    m
}

/// Recomputes every published constant and runs every certificate.
pub fn reproduce(table: ThresholdTable, spectrum_max: u32) -> ReproductionReport {
    let computed = computed_constants();
    let mut mismatches = Vec::new();
    let mut constants_table = BTreeMap::new();
    for c in &manifest().constants {
        let v = computed.get(&c.name).copied().unwrap_or(f64::NAN);
        let abs_diff = (v - c.value_f64()).abs();
        let within = abs_diff <= c.tolerance;
        if !within {
            mismatches.push(format!("constant {}: computed {v}, published {}, |diff| {abs_diff:e} > {:e}", c.name, c.value, c.tolerance));
        }
        constants_table.insert(c.name.clone(), ConstantRow { computed: v, paper_value: c.value.clone(), abs_diff, tolerance: c.tolerance, within });
    }
    let bvals = computed_bounds();
    let mut bounds_table = BTreeMap::new();
    for b in &manifest().bounds {
        let v = bvals.get(&b.name).copied().unwrap_or(f64::NAN);
        let within = b.contains(v);
        if !within {
            mismatches.push(format!("bound {}: computed {v} outside [{:?}, {:?})", b.name, b.lo, b.hi));
        }
        bounds_table.insert(b.name.clone(), BoundRow { computed: v, lo: b.lo.clone(), hi: b.hi.clone(), within });
    }
    let suite = run_suite(Suite::All, table, 1.0);
    for f in suite.failures() {
        mismatches.push(format!("certificate {} {}: {}", f.kind, f.name, f.error.as_deref().unwrap_or("not valid")));
    }
    let spectral_points = match real_spectrum_scan(spectrum_max, 1e-11) {
        Ok(pts) => pts.iter().map(SpectrumRow::from).collect(),
        Err(e) => {
            mismatches.push(format!("spectrum scan: {e}"));
            Vec::new()
        }
    };
    ReproductionReport {
        schema_version: SCHEMA_VERSION,
        thresholds: table,
        constants_table,
        bounds_table,
        certificates: suite.certificates,
        spectral_points,
        pass: mismatches.is_empty(),
        mismatches,
    }
}

/// Deterministic pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// `{"schema_version": 1, "error": ...}` for failures that produce no document.
pub fn error_document(msg: &str) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "error": msg })
}
