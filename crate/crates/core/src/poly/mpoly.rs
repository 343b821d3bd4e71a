use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::int_poly::IntPoly;
use crate::error::PolyError;

/// Sparse multivariate polynomial over the integers.
///
/// Exponent vectors are compared lexicographically, so the last key of the
/// map is the leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::from_terms(nvars, vec![(e, BigInt::one())])
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Vec<u32>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_in(&self, k: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[k]).max()
    }

    /// Coefficient of `var_k^d`, a polynomial in the remaining variables
    /// (still indexed with `nvars` slots, slot `k` set to zero).
    pub fn coeff_in(&self, k: usize, d: u32) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] == d {
                let mut e2 = e.clone();
                e2[k] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Exact quotient; fails if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly, PolyError> {
        let (de, dc) = d
            .terms
            .iter()
            .next_back()
            .ok_or_else(|| PolyError::DegenerateInput("division by zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut quo = MPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            if re.iter().zip(de).any(|(a, b)| a < b) || !(rc % dc).is_zero() {
                return Err(PolyError::InexactDivision("multivariate remainder".into()));
            }
            let e: Vec<u32> = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let t = MPoly::from_terms(self.nvars, vec![(e, rc / dc)]);
            rem = &rem - &(&t * d);
            quo = &quo + &t;
        }
        Ok(quo)
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    /// Value at an integer point.
    pub fn eval_int(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    /// Converts to a univariate polynomial in variable `k`; fails if any other variable occurs.
    pub fn to_univariate(&self, k: usize) -> Result<IntPoly, PolyError> {
        let deg = self.degree_in(k).unwrap_or(0) as usize;
        let mut c = vec![BigInt::zero(); deg + 1];
        for (e, v) in &self.terms {
            if e.iter().enumerate().any(|(i, &p)| i != k && p != 0) {
                return Err(PolyError::DegenerateInput("polynomial is not univariate".into()));
            }
            c[e[k] as usize] += v;
        }
        Ok(IntPoly::new(c))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// The two variables of a [`BivariateIntPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Q,
    X,
}

impl Var {
    pub(crate) fn index(self) -> usize {
        match self {
            Var::Q => 0,
            Var::X => 1,
        }
    }
}

/// Integer polynomial in `(q, x)`, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateIntPoly(MPoly);

impl BivariateIntPoly {
    /// From `(degree in q, degree in x, coefficient)` triples.
    pub fn from_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self(MPoly::from_terms(2, terms.iter().map(|&(i, j, c)| (vec![i, j], BigInt::from(c))).collect()))
    }

    /// Dense term list sorted by `(q-degree, x-degree)`, zero terms omitted.
    pub fn to_terms(&self) -> Vec<(u32, u32, BigInt)> {
        self.0.terms().map(|(e, c)| (e[0], e[1], c.clone())).collect()
    }

    pub fn as_mpoly(&self) -> &MPoly {
        &self.0
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.0.degree_in(v.index())
    }

    /// `U = 1 + qx + q^3x^2 + q^6x^3 + q^10x^4`, the quartic truncation of θ.
    pub fn truncation_u() -> Self {
        Self::from_terms(&[(0, 0, 1), (1, 1, 1), (3, 2, 1), (6, 3, 1), (10, 4, 1)])
    }

    /// `U_x / q = 1 + 2q^2x + 3q^5x^2 + 4q^9x^3`.
    pub fn truncation_u_x_over_q() -> Self {
        Self::from_terms(&[(0, 0, 1), (2, 1, 2), (5, 2, 3), (9, 3, 4)])
    }
}
