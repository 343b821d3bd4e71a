//! Truncated two-variable jets carrying `(f, f_x, f_xx, f_q, f_qx)`.
//!
//! These are exactly the partial derivatives needed for double-zero work, and
//! the arithmetic is generic so the same code drives the fast `Complex64`
//! path and the certified `BallComplex` path.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::ball::BallComplex;

/// Minimal field-like interface shared by `Complex64` and `BallComplex`.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn from_complex(z: Complex64) -> Self;
    fn recip(self) -> Self;
    fn center(&self) -> Complex64;
    /// Enlarge by an absolute error bound; a no-op for plain floats.
    fn inflate(self, r: f64) -> Self;
}

impl Scalar for Complex64 {
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn from_complex(z: Complex64) -> Self {
        z
    }
    fn recip(self) -> Self {
        self.inv()
    }
    fn center(&self) -> Complex64 {
        *self
    }
    fn inflate(self, _r: f64) -> Self {
        self
    }
}

impl Scalar for BallComplex {
    fn from_f64(x: f64) -> Self {
        BallComplex::real(x)
    }
    fn from_complex(z: Complex64) -> Self {
        BallComplex::point(z)
    }
    fn recip(self) -> Self {
        BallComplex::recip(&self)
    }
    fn center(&self) -> Complex64 {
        self.center
    }
    fn inflate(self, r: f64) -> Self {
        BallComplex::inflate(&self, r)
    }
}

/// Index of each component in [`Jet::c`].
pub const F: usize = 0;
pub const FX: usize = 1;
pub const FXX: usize = 2;
pub const FQ: usize = 3;
pub const FQX: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<T> {
    pub c: [T; 5],
}

impl<T: Scalar> Jet<T> {
    pub fn new(f: T, fx: T, fxx: T, fq: T, fqx: T) -> Self {
        Self { c: [f, fx, fxx, fq, fqx] }
    }

    pub fn constant(v: T) -> Self {
        let z = T::from_f64(0.0);
        Self::new(v, z, z, z, z)
    }

    /// The coordinate function `x`.
    pub fn var_x(x: T) -> Self {
        let z = T::from_f64(0.0);
        Self::new(x, T::from_f64(1.0), z, z, z)
    }

    /// The coordinate function `q`.
    pub fn var_q(q: T) -> Self {
        let z = T::from_f64(0.0);
        Self::new(q, z, z, T::from_f64(1.0), z)
    }

    pub fn value(&self) -> T {
        self.c[F]
    }

    pub fn recip(&self) -> Self {
        let [g, gx, gxx, gq, gqx] = self.c;
        let h = g.recip();
        let h2 = h * h;
        let h3 = h2 * h;
        let two = T::from_f64(2.0);
        Self::new(
            h,
            -(gx * h2),
            two * gx * gx * h3 - gxx * h2,
            -(gq * h2),
            two * gq * gx * h3 - gqx * h2,
        )
    }

    pub fn scale(&self, k: T) -> Self {
        Self { c: self.c.map(|v| v * k) }
    }

    pub fn inflate(&self, r: [f64; 5]) -> Self {
        let mut c = self.c;
        for (v, e) in c.iter_mut().zip(r) {
            *v = v.inflate(e);
        }
        Self { c }
    }
}

impl<T: Scalar> Add for Jet<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.c;
        for (v, w) in c.iter_mut().zip(o.c) {
            *v = *v + w;
        }
        Self { c }
    }
}

impl<T: Scalar> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut c = self.c;
        for (v, w) in c.iter_mut().zip(o.c) {
            *v = *v - w;
        }
        Self { c }
    }
}

impl<T: Scalar> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { c: self.c.map(|v| -v) }
    }
}

impl<T: Scalar> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let [f, fx, fxx, fq, fqx] = self.c;
        let [g, gx, gxx, gq, gqx] = o.c;
        let two = T::from_f64(2.0);
        Self::new(
            f * g,
            fx * g + f * gx,
            fxx * g + two * fx * gx + f * gxx,
            fq * g + f * gq,
            fqx * g + fq * gx + fx * gq + f * gqx,
        )
    }
}
