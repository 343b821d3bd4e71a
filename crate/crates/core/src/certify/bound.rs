//! Bounds on `|P^R| + |P^I|` along a segment.
//!
//! Upper bound `< m`: each of the four polynomials `±P^R ± P^I - m` has no
//! root on `[0, 1]` and is negative somewhere. Lower bound `> m`: `[0, 1]`
//! is cut into pieces on each of which one fixed sign choice
//! `s1 P^R + s2 P^I` (the one matching the signs at the piece midpoint)
//! exceeds `m` with no root of the difference, so `|P^R| + |P^I| >= s1 P^R + s2 P^I > m`.
//! Pieces are bisected until this holds; near a common sign change of
//! `P^R` and `P^I` with small modulus it never does, and the bound fails.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::sturm::SturmSequence;
use crate::error::CertifyError;
use crate::interval::{parse_decimal, rational_to_f64};
use crate::poly::{restrict_to_segment, IntPoly, RatPoly, SegmentQ};

/// Width of the f64 significand: coefficients are exact, comparisons of
/// rationals are exact, only reported witness values are rounded.
pub const PRECISION_BITS: u32 = 53;

const MAX_DEPTH: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// How the real and imaginary parts are normalized.
///
/// The published segment tables read as bounds on `|2 Re P| + |2 Im P|`
/// (every tabulated threshold sits just beyond twice the literal extremum
/// of `|Re P| + |Im P|`), which `Doubled` reproduces. The Rouché
/// inequality built from them is invariant under this common factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartsConvention {
    Doubled,
    Literal,
}

impl PartsConvention {
    fn factor(self) -> BigRational {
        match self {
            Self::Doubled => BigRational::from_integer(BigInt::from(2)),
            Self::Literal => BigRational::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub segment: String,
    pub polynomial: String,
    pub kind: BoundKind,
    pub threshold: f64,
    /// Exact threshold as a decimal or fraction string.
    pub threshold_exact: String,
    pub witness_t: f64,
    pub witness_value: f64,
    pub root_free: bool,
    pub pieces: usize,
    pub convention: PartsConvention,
    pub precision_bits: u32,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn abs_sum(re: &RatPoly, im: &RatPoly, t: &BigRational) -> BigRational {
    re.eval(t).abs() + im.eval(t).abs()
}

fn fail(seg: &SegmentQ, poly: &str, reason: String, lo: &BigRational, hi: &BigRational) -> CertifyError {
    CertifyError::CertificateFailed {
        segment: seg.name.clone(),
        polynomial: poly.to_string(),
        reason,
        t_lo: rational_to_f64(lo),
        t_hi: rational_to_f64(hi),
    }
}

/// Certifies a lower or upper bound on `|P^R| + |P^I|` over the segment.
pub fn certify_segment_bound(
    p: &IntPoly,
    name: &str,
    seg: &SegmentQ,
    kind: BoundKind,
    threshold: &BigRational,
    convention: PartsConvention,
) -> Result<BoundCertificate, CertifyError> {
    if !threshold.is_positive() {
        return Err(CertifyError::DegenerateInput(format!("threshold must be positive, got {threshold}")));
    }
    let pair = restrict_to_segment(p, seg);
    let k = convention.factor();
    let re = pair.re_part.scale(&k);
    let im = pair.im_part.scale(&k);
    let m = RatPoly::constant(threshold.clone());
    let (zero, one) = (BigRational::zero(), BigRational::one());
    let combo = |s1: bool, s2: bool| {
        let a = if s1 { re.clone() } else { -&re };
        let b = if s2 { im.clone() } else { -&im };
        &(&a + &b) - &m
    };
    let half = rat(1, 2);
    let (pieces, witness_t) = match kind {
        BoundKind::Upper => {
            for (s1, s2) in [(true, true), (true, false), (false, true), (false, false)] {
                let d = combo(s1, s2);
                if d.is_zero() {
                    return Err(fail(seg, name, "bound attained identically".into(), &zero, &one));
                }
                let sturm = SturmSequence::new(&d);
                if !sturm.root_free(&zero, &one) {
                    return Err(fail(seg, name, format!("upper bound {threshold} reached"), &zero, &one));
                }
                if !d.eval(&half).is_negative() {
                    return Err(fail(seg, name, format!("upper bound {threshold} exceeded"), &zero, &one));
                }
            }
            (1, half.clone())
        }
        BoundKind::Lower => (lower_pieces(&re, &im, threshold, seg, name)?, half.clone()),
    };
    let witness_value = rational_to_f64(&abs_sum(&re, &im, &witness_t));
    Ok(BoundCertificate {
        segment: seg.name.clone(),
        polynomial: name.to_string(),
        kind,
        threshold: rational_to_f64(threshold),
        threshold_exact: threshold.to_string(),
        witness_t: rational_to_f64(&witness_t),
        witness_value,
        root_free: true,
        pieces,
        convention,
        precision_bits: PRECISION_BITS,
    })
}

fn lower_pieces(
    re: &RatPoly,
    im: &RatPoly,
    threshold: &BigRational,
    seg: &SegmentQ,
    name: &str,
) -> Result<usize, CertifyError> {
    let m = RatPoly::constant(threshold.clone());
    // Sturm chains for the four sign choices, built lazily
    let mut chains: [Option<Option<SturmSequence>>; 4] = Default::default();
    let mut stack = vec![(BigRational::zero(), BigRational::one(), 0u32)];
    let mut pieces = 0;
    let two = rat(2, 1);
    while let Some((a, b, depth)) = stack.pop() {
        let mid = (&a + &b) / &two;
        let s1 = !re.eval(&mid).is_negative();
        let s2 = !im.eval(&mid).is_negative();
        let idx = usize::from(s1) * 2 + usize::from(s2);
        let chain = chains[idx].get_or_insert_with(|| {
            let x = if s1 { re.clone() } else { -re };
            let y = if s2 { im.clone() } else { -im };
            let d = &(&x + &y) - &m;
            (!d.is_zero()).then(|| SturmSequence::new(&d))
        });
        let ok = match chain {
            Some(st) => st.polynomial().eval(&mid).is_positive() && st.root_free(&a, &b),
            None => false,
        };
        if ok {
            pieces += 1;
            continue;
        }
        if abs_sum(re, im, &mid) <= *threshold {
            return Err(fail(seg, name, format!("lower bound {threshold} violated"), &mid, &mid));
        }
        if depth >= MAX_DEPTH {
            return Err(fail(seg, name, format!("lower bound {threshold} undecided"), &a, &b));
        }
        stack.push((mid.clone(), b, depth + 1));
        stack.push((a, mid, depth + 1));
    }
    Ok(pieces)
}

/// Parses a threshold literal exactly (`"0.00252"`, `"1/3"`).
pub fn exact_threshold(s: &str) -> BigRational {
    crate::poly::rat_poly::parse_rational(s).or_else(|| parse_decimal(s)).expect("malformed threshold literal")
}

/// Largest `t`-sampled value of `|P^R| + |P^I|` and smallest, on a uniform grid; diagnostics only.
pub fn sampled_extrema(p: &IntPoly, seg: &SegmentQ, convention: PartsConvention, n: usize) -> (f64, f64) {
    let pair = restrict_to_segment(p, seg);
    let k = rational_to_f64(&convention.factor());
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for i in 0..=n {
        let t = i as f64 / n as f64;
        let v = k * (pair.re_part.eval_f64(t).abs() + pair.im_part.eval_f64(t).abs());
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}
