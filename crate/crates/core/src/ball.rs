//! Complex balls: a floating-point center with a certified radius.
//!
//! Rounding errors of the center are captured with error-free transforms, so
//! operations that happen to be exact in floating point leave the radius at 0.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::interval::IntervalReal;
use crate::round::*;

/// Below this magnitude products may be affected by gradual underflow.
const TINY: f64 = 1e-290;
/// Absolute slack added whenever a product lands in the underflow range.
const ETA: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallComplex {
    pub center: Complex64,
    pub radius: f64,
}

impl BallComplex {
    pub fn new(center: Complex64, radius: f64) -> Self {
        assert!(radius >= 0.0 && radius.is_finite(), "invalid ball radius {radius}");
        Self { center, radius }
    }

    pub const fn point(center: Complex64) -> Self {
        Self { center, radius: 0.0 }
    }

    pub const fn real(x: f64) -> Self {
        Self { center: Complex64::new(x, 0.0), radius: 0.0 }
    }

    pub const fn zero() -> Self {
        Self::real(0.0)
    }

    pub const fn one() -> Self {
        Self::real(1.0)
    }

    /// Ball enclosing a decimal literal such as `"0.3092493386"`.
    pub fn from_decimal(s: &str) -> Self {
        Self::from_interval(IntervalReal::from_decimal(s))
    }

    /// Ball enclosing a real interval.
    pub fn from_interval(i: IntervalReal) -> Self {
        let c = i.mid();
        let r = sub_up(i.hi, c).max(sub_up(c, i.lo));
        Self { center: Complex64::new(c, 0.0), radius: r }
    }

    pub fn is_exact(&self) -> bool {
        self.radius == 0.0
    }

    /// Upper bound on the modulus of every point of the ball.
    pub fn abs_upper(&self) -> f64 {
        add_up(hypot_up(self.center.re, self.center.im), self.radius)
    }

    /// Lower bound on the modulus of every point of the ball (0 if it contains 0).
    pub fn abs_lower(&self) -> f64 {
        sub_down(hypot_down(self.center.re, self.center.im), self.radius).max(0.0)
    }

    /// Enclosure of `{|z| : z in ball}`.
    pub fn abs_interval(&self) -> IntervalReal {
        IntervalReal::new(self.abs_lower(), self.abs_upper())
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower() == 0.0
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let d = self.center - z;
        hypot_down(d.re, d.im) <= self.radius
    }

    pub fn intersects(&self, other: &Self) -> bool {
        let d = self.center - other.center;
        hypot_down(d.re, d.im) <= add_up(self.radius, other.radius)
    }

    /// Same center, radius enlarged by `r`.
    pub fn inflate(&self, r: f64) -> Self {
        Self { center: self.center, radius: add_up(self.radius, r) }
    }

    pub fn conj(&self) -> Self {
        Self { center: self.center.conj(), radius: self.radius }
    }

    pub fn scale(&self, k: f64) -> Self {
        *self * Self::real(k)
    }

    pub fn sqr(&self) -> Self {
        *self * *self
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

    /// Reciprocal; `None` if the ball contains zero.
    pub fn checked_recip(&self) -> Option<Self> {
        let (cr, ci) = (self.center.re, self.center.im);
        let mod_lo = hypot_down(cr, ci);
        let gap = sub_down(mod_lo, self.radius);
        if !(gap > 0.0) {
            return None;
        }
        let m2 = cr * cr + ci * ci;
        let center = Complex64::new(cr / m2, -ci / m2);
        // |1/z - 1/c| <= r / (|c| (|c| - r)) for |z - c| <= r
        let prop = div_up(self.radius, mul_down(mod_lo, gap));
        // center rounding: a handful of relative roundings of |1/c|
        let inv_mod = div_up(1.0, mod_lo);
        let round = if self.radius == 0.0 && ci == 0.0 && (1.0 / cr) * cr == 1.0 && cr.recip().mul_add(cr, -1.0) == 0.0 {
            0.0
        } else {
            mul_up(8.0 * f64::EPSILON, inv_mod) + if inv_mod < TINY { ETA } else { 0.0 }
        };
        Some(Self { center, radius: add_up(prop, round) })
    }

    pub fn recip(&self) -> Self {
        self.checked_recip().expect("reciprocal of a ball containing zero")
    }

    /// Complex exponential; the center error is bounded by a few relative ulps.
    pub fn exp(&self) -> Self {
        let c = self.center.exp();
        let m = hypot_up(c.re, c.im);
        // |e^z - e^c| <= |e^c| (e^r - 1)
        let prop = mul_up(m, (self.radius.exp() - 1.0).next_up().next_up());
        let round = mul_up(4.0 * f64::EPSILON, m);
        Self { center: c, radius: add_up(prop, round) }
    }
}

#[inline]
fn mag(z: Complex64) -> f64 {
    hypot_up(z.re, z.im)
}

impl fmt::Display for BallComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {:+}i) +/- {:e}", self.center.re, self.center.im, self.radius)
    }
}

impl From<f64> for BallComplex {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

impl From<Complex64> for BallComplex {
    fn from(z: Complex64) -> Self {
        Self::point(z)
    }
}

impl Neg for BallComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self { center: -self.center, radius: self.radius }
    }
}

impl Add for BallComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (sr, er) = two_sum(self.center.re, o.center.re);
        let (si, ei) = two_sum(self.center.im, o.center.im);
        let err = add_up(er.abs(), ei.abs());
        Self {
            center: Complex64::new(sr, si),
            radius: sum_up([self.radius, o.radius, err]),
        }
    }
}

impl Sub for BallComplex {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

/// Error bound of `a*b - c*d` evaluated as `fl(fl(a*b) - fl(c*d))`.
#[inline]
fn dot2_err(a: f64, b: f64, c: f64, d: f64) -> (f64, f64) {
    let (p1, e1) = two_prod(a, b);
    let (p2, e2) = two_prod(c, d);
    let (s, e3) = two_sum(p1, -p2);
    let mut err = sum_up([e1.abs(), e2.abs(), e3.abs()]);
    let tiny = |p: f64, x: f64, y: f64| p.abs() < TINY && x != 0.0 && y != 0.0;
    if tiny(p1, a, b) || tiny(p2, c, d) {
        err = add_up(err, ETA);
    }
    (s, err)
}

impl Mul for BallComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.center.re, self.center.im);
        let (c, d) = (o.center.re, o.center.im);
        let (re, err_re) = dot2_err(a, c, b, d);
        let (im, err_im) = dot2_err(a, d, -b, c);
        let mut radius = add_up(err_re, err_im);
        if self.radius != 0.0 || o.radius != 0.0 {
            radius = sum_up([
                radius,
                mul_up(mag(self.center), o.radius),
                mul_up(mag(o.center), self.radius),
                mul_up(self.radius, o.radius),
            ]);
        }
        Self { center: Complex64::new(re, im), radius }
    }
}

impl Div for BallComplex {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_keeps_zero_radius() {
        let a = BallComplex::point(Complex64::new(1.5, -2.0));
        let b = BallComplex::point(Complex64::new(0.25, 4.0));
        let s = a + b;
        assert_eq!(s.radius, 0.0);
        let p = a * b;
        assert_eq!(p.center, Complex64::new(1.5 * 0.25 + 8.0, 6.0 - 0.5));
        assert_eq!(p.radius, 0.0);
        assert_eq!(BallComplex::real(4.0).recip().radius, 0.0);
        assert_eq!(BallComplex::zero() * BallComplex::real(3.5), BallComplex::zero());
    }

    #[test]
    fn inexact_product_is_enclosed() {
        let a = BallComplex::point(Complex64::new(0.1, 0.7));
        let b = BallComplex::point(Complex64::new(0.3, -0.9));
        let p = a * b;
        assert!(p.radius > 0.0);
        assert!(p.radius < 1e-15);
    }

    #[test]
    fn reciprocal_contains_inverse_of_every_point() {
        let z = BallComplex::new(Complex64::new(2.0, 1.0), 0.5);
        let r = z.recip();
        for k in 0..16 {
            let ang = k as f64 * std::f64::consts::PI / 8.0;
            let w = z.center + Complex64::from_polar(0.5, ang);
            assert!(r.contains(w.inv()));
        }
        assert!(BallComplex::new(Complex64::new(0.1, 0.0), 0.2).checked_recip().is_none());
    }
}
