//! Directed segments in the complex `q`-plane and restriction of
//! polynomials to them.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::int_poly::{IntPoly, PolyJson};
use super::rat_poly::{parse_rational, RatPoly};
use crate::error::PolyError;
use crate::interval::rational_to_f64;

/// Gaussian rational `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    /// Parses `"a"` or `"a,b"` where each part is a fraction or decimal.
    pub fn parse(s: &str) -> Option<Self> {
        match s.split_once(',') {
            Some((a, b)) => Some(Self::new(parse_rational(a)?, parse_rational(b)?)),
            None => Some(Self::real(parse_rational(s)?)),
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

/// The segment `q(t) = start + t (end - start)`, `t ∈ [0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentQ {
    pub name: String,
    pub start: GaussRat,
    pub end: GaussRat,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn g(re: BigRational, im: BigRational) -> GaussRat {
    GaussRat::new(re, im)
}

impl SegmentQ {
    pub fn new(name: &str, start: GaussRat, end: GaussRat) -> Result<Self, PolyError> {
        if start == end {
            return Err(PolyError::DegenerateInput(format!("segment {name} has equal endpoints")));
        }
        Ok(Self { name: name.to_string(), start, end })
    }

    pub fn direction(&self) -> GaussRat {
        &self.end - &self.start
    }

    pub fn point(&self, t: &BigRational) -> GaussRat {
        let d = self.direction();
        g(&self.start.re + t * &d.re, &self.start.im + t * &d.im)
    }

    pub fn point_f64(&self, t: f64) -> Complex64 {
        let (a, b) = (self.start.to_complex(), self.end.to_complex());
        a + (b - a) * t
    }

    /// Mirror image under complex conjugation.
    pub fn conj(&self, name: &str) -> Self {
        Self { name: name.to_string(), start: self.start.conj(), end: self.end.conj() }
    }

    /// Horizontal segment `Im q = im`, `Re q ∈ [re0, re1]`.
    pub fn horizontal(name: &str, im: BigRational, re0: BigRational, re1: BigRational) -> Self {
        Self { name: name.into(), start: g(re0, im.clone()), end: g(re1, im) }
    }

    /// Vertical segment `Re q = re`, `Im q ∈ [im0, im1]`.
    pub fn vertical(name: &str, re: BigRational, im0: BigRational, im1: BigRational) -> Self {
        Self { name: name.into(), start: g(re.clone(), im0), end: g(re, im1) }
    }
}

/// The segments on which the perturbation bounds are certified, in
/// reporting order: `Kh+`, `Kh-`, `Kv-`, `K0..K3` (pieces of `Re q = 1/3`)
/// and `S0..S4` (pieces of `Re q = 0.29`).
pub fn contour_segments() -> Vec<SegmentQ> {
    let third = rat(1, 3);
    let mthird = rat(-1, 3);
    let mut out = vec![
        SegmentQ::horizontal("Kh+", third.clone(), mthird.clone(), third.clone()),
        SegmentQ::horizontal("Kh-", mthird.clone(), mthird.clone(), third.clone()),
        SegmentQ::vertical("Kv-", mthird.clone(), mthird.clone(), third.clone()),
    ];
    let k_cuts = [rat(0, 1), rat(1, 20), rat(1, 10), rat(1, 5), third.clone()];
    for i in 0..4 {
        out.push(SegmentQ::vertical(&format!("K{i}"), third.clone(), k_cuts[i].clone(), k_cuts[i + 1].clone()));
    }
    let s_re = rat(29, 100);
    let s_cuts = [rat(0, 1), rat(1, 40), rat(1, 20), rat(1, 10), rat(1, 5), third];
    for i in 0..5 {
        out.push(SegmentQ::vertical(&format!("S{i}"), s_re.clone(), s_cuts[i].clone(), s_cuts[i + 1].clone()));
    }
    out
}

pub fn contour_segment(name: &str) -> Option<SegmentQ> {
    contour_segments().into_iter().find(|s| s.name == name)
}

/// Real and imaginary parts of a polynomial restricted to a segment, as
/// polynomials in the segment parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPolyPair {
    pub re_part: RatPoly,
    pub im_part: RatPoly,
    /// `"exact"` for rational endpoints; the only kind produced here.
    pub coefficient_precision: &'static str,
}

impl RealPolyPair {
    pub fn eval_f64(&self, t: f64) -> Complex64 {
        Complex64::new(self.re_part.eval_f64(t), self.im_part.eval_f64(t))
    }

    pub fn to_json(&self) -> (PolyJson, PolyJson) {
        (self.re_part.to_json("t"), self.im_part.to_json("t"))
    }
}

/// Substitutes `q(t)` into `p` by Horner's scheme over `Q(i)[t]`.
pub fn restrict_to_segment(p: &IntPoly, seg: &SegmentQ) -> RealPolyPair {
    let d = seg.direction();
    let l_re = RatPoly::linear(seg.start.re.clone(), d.re.clone());
    let l_im = RatPoly::linear(seg.start.im.clone(), d.im.clone());
    let mut a = RatPoly::zero();
    let mut b = RatPoly::zero();
    for c in p.coeffs().iter().rev() {
        let na = &(&a * &l_re) - &(&b * &l_im);
        let nb = &(&a * &l_im) + &(&b * &l_re);
        a = &na + &RatPoly::constant(BigRational::from_integer(c.clone()));
        b = nb;
    }
    RealPolyPair { re_part: a, im_part: b, coefficient_precision: "exact" }
}

/// Parameters of a segment in wire form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SegmentJson {
    pub name: String,
    pub start: [String; 2],
    pub end: [String; 2],
}

impl From<&SegmentQ> for SegmentJson {
    fn from(s: &SegmentQ) -> Self {
        Self {
            name: s.name.clone(),
            start: [s.start.re.to_string(), s.start.im.to_string()],
            end: [s.end.re.to_string(), s.end.im.to_string()],
        }
    }
}

/// `1` as a Gaussian rational, handy in tests.
pub fn gauss_one() -> GaussRat {
    GaussRat::real(BigRational::one())
}
