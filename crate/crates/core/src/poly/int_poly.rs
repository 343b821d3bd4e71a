use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::ball::BallComplex;
use crate::error::PolyError;

/// Univariate polynomial with exact integer coefficients, `coeffs[k]` multiplies `q^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(usize, i64)]) -> Self {
        let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut c = vec![BigInt::zero(); deg + 1];
        for &(e, v) in terms {
            c[e] += v;
        }
        Self::new(c)
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn monomial(coef: BigInt, exp: usize) -> Self {
        let mut c = vec![BigInt::zero(); exp + 1];
        c[exp] = coef;
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Exact division by `q^k`; fails if a lower coefficient is nonzero.
    pub fn div_by_power(&self, k: usize) -> Result<Self, PolyError> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(PolyError::InexactDivision(format!("not divisible by q^{k}")));
        }
        Ok(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Exact quotient `self / d`; fails with a nonzero remainder.
    pub fn div_exact(&self, d: &IntPoly) -> Result<Self, PolyError> {
        let dd = d.degree().ok_or_else(|| PolyError::DegenerateInput("division by zero polynomial".into()))?;
        let mut rem = self.coeffs.clone();
        let n = match self.degree() {
            None => return Ok(Self::zero()),
            Some(n) if n < dd => return Err(PolyError::InexactDivision("degree too small".into())),
            Some(n) => n,
        };
        let lead = d.leading().unwrap();
        let mut quo = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return Err(PolyError::InexactDivision("non-integral quotient".into()));
            }
            let f = top / lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &f * c;
            }
            quo[k] = f;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::InexactDivision("nonzero remainder".into()));
        }
        Ok(Self::new(quo))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Ball enclosure of the values on a ball of arguments (coefficients must fit in f64 exactly).
    pub fn eval_ball(&self, z: BallComplex) -> BallComplex {
        let mut acc = BallComplex::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + coef_ball(c);
        }
        acc
    }

    pub fn to_json(&self, var: &str) -> PolyJson {
        PolyJson { var: var.to_string(), coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self, PolyError> {
        let c = j
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(|e| PolyError::Parse(format!("{s}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(c))
    }

    /// Human-readable form with descending powers, e.g. `256q^10 - 192q^7 + 1`.
    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = if a.is_one() && k > 0 { String::new() } else { a.to_string() };
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            out.push_str(&coef);
            out.push_str(&mono);
        }
        out
    }
}

/// Ball containing an integer coefficient (exact whenever it fits in 53 bits).
pub fn coef_ball(c: &BigInt) -> BallComplex {
    let f = c.to_f64().unwrap_or(f64::INFINITY);
    if BigInt::from(f as i128) == *c && f.abs() < 9.007_199_254_740_992e15 {
        BallComplex::real(f)
    } else {
        let r = crate::interval::IntervalReal::from_rational(&BigRational::from_integer(c.clone()));
        BallComplex::from_interval(r)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty("q"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

/// Wire format shared by all polynomial types.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub var: String,
    pub coeffs: Vec<String>,
}
