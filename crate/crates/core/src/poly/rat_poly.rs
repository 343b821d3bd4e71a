use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::int_poly::{IntPoly, PolyJson};
use crate::error::PolyError;
use crate::interval::{parse_decimal, rational_to_f64, IntervalReal};

/// Univariate polynomial with exact rational coefficients (ascending order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// `a + b t`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Outward-rounded enclosure of the values on an interval.
    pub fn eval_interval(&self, t: IntervalReal) -> IntervalReal {
        let mut acc = IntervalReal::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + IntervalReal::from_rational(c);
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + rational_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Divides by the absolute value of the leading coefficient, keeping every sign.
    pub fn normalize_positive(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.abs().recip()),
            None => Self::zero(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division `self = q d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly), PolyError> {
        let dd = d.degree().ok_or_else(|| PolyError::DegenerateInput("division by zero polynomial".into()))?;
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((Self::zero(), self.clone())),
        };
        let mut quo = vec![BigRational::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let f = top / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &f * c;
            }
            quo[k] = f;
        }
        rem.truncate(dd);
        Ok((Self::new(quo), Self::new(rem)))
    }

    pub fn rem(&self, d: &RatPoly) -> Result<RatPoly, PolyError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.normalize_positive();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, which has the same roots as `p`, all simple.
    pub fn square_free(&self) -> RatPoly {
        if self.degree().map_or(true, |d| d == 0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0
    }

    /// Sum of absolute values of the coefficients, rounded up.
    pub fn coeff_abs_sum(&self) -> f64 {
        let mut s = IntervalReal::zero();
        for c in &self.coeffs {
            s = s + IntervalReal::from_rational(&c.abs());
        }
        s.hi
    }

    pub fn to_json(&self, var: &str) -> PolyJson {
        PolyJson { var: var.to_string(), coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
    }

    /// Accepts integers, `p/q` fractions and decimal literals.
    pub fn from_json(j: &PolyJson) -> Result<Self, PolyError> {
        let c = j
            .coeffs
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| PolyError::Parse(format!("bad coefficient {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(c))
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    parse_decimal(s)
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => f.write_str("t")?,
                1 => write!(f, "({a})t")?,
                _ if a.is_one() => write!(f, "t^{k}")?,
                _ => write!(f, "({a})t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RatPoly::new(c)
    }
}
