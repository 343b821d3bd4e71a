//! Closed real intervals with outward rounding.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::round::*;

/// A closed interval `[lo, hi]` of reals. Arithmetic rounds `lo` down and `hi` up.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalReal {
    pub lo: f64,
    pub hi: f64,
}

impl IntervalReal {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval with lo > hi: [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub const fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn zero() -> Self {
        Self::point(0.0)
    }

    pub fn one() -> Self {
        Self::point(1.0)
    }

    /// Smallest representable interval containing the rational `r`.
    pub fn from_rational(r: &BigRational) -> Self {
        let approx = rational_to_f64(r);
        if !approx.is_finite() {
            return Self::new(f64::NEG_INFINITY, f64::INFINITY);
        }
        // the quotient approximation may be off by a few ulps; step until enclosed
        let mut lo = approx;
        while BigRational::from_float(lo).map_or(false, |a| &a > r) {
            lo = lo.next_down();
        }
        let mut hi = approx;
        while BigRational::from_float(hi).map_or(false, |a| &a < r) {
            hi = hi.next_up();
        }
        Self { lo, hi }
    }

    /// Interval containing the decimal literal `s`, e.g. `"0.2078750206"`.
    pub fn from_decimal(s: &str) -> Self {
        Self::from_rational(&parse_decimal(s).expect("malformed decimal literal"))
    }

    pub fn width(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(&self) -> f64 {
        if self.lo <= 0.0 && self.hi >= 0.0 {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn abs(&self) -> Self {
        Self { lo: self.mig(), hi: self.mag() }
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0.0
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.hi >= 0.0, "sqrt of negative interval");
        Self { lo: sqrt_down(self.lo.max(0.0)), hi: sqrt_up(self.hi) }
    }

    pub fn sqr(&self) -> Self {
        let a = self.abs();
        Self { lo: mul_down(a.lo, a.lo), hi: mul_up(a.hi, a.hi) }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = *self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    /// `self^e` for an integer-valued `e >= 0`; large exponents go through exp/ln.
    pub fn pow_int(&self, e: f64) -> Self {
        if e <= 64.0 {
            return self.powi(e as u32);
        }
        if self.hi == 0.0 {
            return Self::zero();
        }
        if self.lo <= 0.0 {
            let hi = (Self::point(self.hi).ln() * e).exp().hi;
            return Self::new(0.0, hi);
        }
        (self.ln() * e).exp()
    }

    pub fn recip(&self) -> Self {
        assert!(self.lo > 0.0 || self.hi < 0.0, "reciprocal of interval containing zero");
        Self { lo: div_down(1.0, self.hi), hi: div_up(1.0, self.lo) }
    }

    /// `exp` with a two-ulp outward widening around the library value.
    pub fn exp(&self) -> Self {
        Self {
            lo: self.lo.exp().next_down().next_down().max(0.0),
            hi: self.hi.exp().next_up().next_up(),
        }
    }

    /// Natural logarithm with a two-ulp outward widening; requires `lo > 0`.
    pub fn ln(&self) -> Self {
        assert!(self.lo > 0.0, "log of non-positive interval");
        Self { lo: self.lo.ln().next_down().next_down(), hi: self.hi.ln().next_up().next_up() }
    }

    pub fn max(&self, other: &Self) -> Self {
        Self { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn min(&self, other: &Self) -> Self {
        Self { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }
}

impl fmt::Display for IntervalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl From<f64> for IntervalReal {
    fn from(x: f64) -> Self {
        Self::point(x)
    }
}

impl Neg for IntervalReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self { lo: -self.hi, hi: -self.lo }
    }
}

impl Add for IntervalReal {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { lo: add_down(self.lo, o.lo), hi: add_up(self.hi, o.hi) }
    }
}

impl Sub for IntervalReal {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { lo: sub_down(self.lo, o.hi), hi: sub_up(self.hi, o.lo) }
    }
}

impl Mul for IntervalReal {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let cands_lo = [
            mul_down(self.lo, o.lo),
            mul_down(self.lo, o.hi),
            mul_down(self.hi, o.lo),
            mul_down(self.hi, o.hi),
        ];
        let cands_hi = [
            mul_up(self.lo, o.lo),
            mul_up(self.lo, o.hi),
            mul_up(self.hi, o.lo),
            mul_up(self.hi, o.hi),
        ];
        Self {
            lo: cands_lo.iter().copied().fold(f64::INFINITY, f64::min),
            hi: cands_hi.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

impl Div for IntervalReal {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by interval containing zero");
        let cands_lo = [
            div_down(self.lo, o.lo),
            div_down(self.lo, o.hi),
            div_down(self.hi, o.lo),
            div_down(self.hi, o.hi),
        ];
        let cands_hi = [
            div_up(self.lo, o.lo),
            div_up(self.lo, o.hi),
            div_up(self.hi, o.lo),
            div_up(self.hi, o.hi),
        ];
        Self {
            lo: cands_lo.iter().copied().fold(f64::INFINITY, f64::min),
            hi: cands_hi.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

impl Add<f64> for IntervalReal {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        self + Self::point(o)
    }
}

impl Sub<f64> for IntervalReal {
    type Output = Self;
    fn sub(self, o: f64) -> Self {
        self - Self::point(o)
    }
}

impl Mul<f64> for IntervalReal {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        self * Self::point(o)
    }
}

impl Div<f64> for IntervalReal {
    type Output = Self;
    fn div(self, o: f64) -> Self {
        self / Self::point(o)
    }
}

/// Parses a plain decimal literal (optional sign, digits, optional fraction,
/// optional exponent) into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().ok()?;
    if neg {
        numer = -numer;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

/// Nearest-ish `f64` to a rational; exact enclosure is done by the caller.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // integer quotient carrying ~64 significant bits, then rescale
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db - 64;
    let q = if shift >= 0 {
        r.numer() / (r.denom() << shift as usize)
    } else {
        (r.numer() << (-shift) as usize) / r.denom()
    };
    let half = (shift / 2) as i32;
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(half) * 2f64.powi(shift as i32 - half)
}
