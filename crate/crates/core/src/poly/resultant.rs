//! Sylvester resultants by fraction-free (Bareiss) elimination.
//!
//! Rows hold the coefficients in ascending order of the eliminated
//! variable, so that `Res(x - a, x - b, x) = b - a`. For the degrees used
//! here (4 and 3) this agrees with the textbook sign.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::int_poly::IntPoly;
use super::mpoly::{BivariateIntPoly, MPoly, Var};
use crate::error::PolyError;

/// Sylvester matrix of `f` and `g` with respect to variable `k`.
pub fn sylvester_matrix(f: &MPoly, g: &MPoly, k: usize) -> Result<Vec<Vec<MPoly>>, PolyError> {
    let m = positive_degree(f, k)? as usize;
    let n = positive_degree(g, k)? as usize;
    let nv = f.nvars();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, deg, copies) in [(f, m, n), (g, n, m)] {
        let cs: Vec<MPoly> = (0..=deg).map(|d| p.coeff_in(k, d as u32)).collect();
        for i in 0..copies {
            let mut row = vec![MPoly::zero(nv); size];
            for (d, c) in cs.iter().enumerate() {
                row[i + d] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

fn positive_degree(p: &MPoly, k: usize) -> Result<u32, PolyError> {
    match p.degree_in(k) {
        Some(d) if d > 0 => Ok(d),
        _ => Err(PolyError::DegenerateInput(format!("polynomial has no positive degree in variable {k}"))),
    }
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<MPoly>>) -> Result<MPoly, PolyError> {
    let n = a.len();
    if n == 0 {
        return Err(PolyError::DegenerateInput("empty matrix".into()));
    }
    let nv = a[0][0].nvars();
    let mut negate = false;
    let mut prev = MPoly::constant(nv, BigInt::one());
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(MPoly::zero(nv)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = MPoly::zero(nv);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Resultant of two multivariate polynomials with respect to variable `k`.
pub fn resultant_mpoly(f: &MPoly, g: &MPoly, k: usize) -> Result<MPoly, PolyError> {
    bareiss_det(sylvester_matrix(f, g, k)?)
}

/// Resultant of two polynomials in `(q, x)`, eliminating `eliminate`.
pub fn sylvester_resultant(p: &BivariateIntPoly, r: &BivariateIntPoly, eliminate: Var) -> Result<IntPoly, PolyError> {
    let k = eliminate.index();
    let res = resultant_mpoly(p.as_mpoly(), r.as_mpoly(), k)?;
    res.to_univariate(1 - k)
}

/// `V(q) = Res(U, U_x/q, x) / q^26`.
pub fn truncation_resultant() -> Result<IntPoly, PolyError> {
    let res = sylvester_resultant(
        &BivariateIntPoly::truncation_u(),
        &BivariateIntPoly::truncation_u_x_over_q(),
        Var::X,
    )?;
    res.div_by_power(26)
}

/// Monomial `a^i b^j` of the perturbation expansion.
pub type PerturbationKey = (u32, u32);

/// The two perturbed factors `U + a` and `U_x/q + b` in variables `(q, x, a, b)`.
pub fn perturbed_pair() -> (MPoly, MPoly) {
    let lift = |b: BivariateIntPoly| {
        MPoly::from_terms(4, b.as_mpoly().terms().map(|(e, c)| (vec![e[0], e[1], 0, 0], c.clone())).collect())
    };
    let u = &lift(BivariateIntPoly::truncation_u()) + &MPoly::var(4, 2);
    let ux = &lift(BivariateIntPoly::truncation_u_x_over_q()) + &MPoly::var(4, 3);
    (u, ux)
}

/// `Res(U + a, U_x/q + b, x) / q^26` as a polynomial in `(q, a, b)`
/// (four slots, the `x` slot is zero).
pub fn perturbed_resultant_mpoly() -> Result<MPoly, PolyError> {
    let (u, ux) = perturbed_pair();
    let res = resultant_mpoly(&u, &ux, 1)?;
    let mut shifted = Vec::with_capacity(res.num_terms());
    for (e, c) in res.terms() {
        if e[0] < 26 {
            return Err(PolyError::InexactDivision(format!("term q^{} a^{} b^{} survives division by q^26", e[0], e[2], e[3])));
        }
        shifted.push((vec![e[0] - 26, e[1], e[2], e[3]], c.clone()));
    }
    Ok(MPoly::from_terms(4, shifted))
}

/// Coefficient polynomials in `q` of every monomial `a^i b^j` in
/// `Res(U + a, U_x/q + b, x) / q^26`. The `(0, 0)` entry is `V`.
pub fn build_perturbed_resultant() -> Result<BTreeMap<PerturbationKey, IntPoly>, PolyError> {
    let res = perturbed_resultant_mpoly()?;
    let mut groups: BTreeMap<PerturbationKey, Vec<BigInt>> = BTreeMap::new();
    for (e, c) in res.terms() {
        let v = groups.entry((e[2], e[3])).or_default();
        let d = e[0] as usize;
        if v.len() <= d {
            v.resize(d + 1, BigInt::zero());
        }
        v[d] += c;
    }
    Ok(groups.into_iter().map(|(k, v)| (k, IntPoly::new(v))).filter(|(_, p)| !p.is_zero()).collect())
}

/// Conventional names of the expansion coefficients.
pub fn perturbation_name(key: PerturbationKey) -> Option<&'static str> {
    Some(match key {
        (0, 0) => "V",
        (1, 0) => "V1",
        (2, 0) => "V2",
        (3, 0) => "V3",
        (0, 2) => "W1",
        (0, 3) => "W2",
        (0, 4) => "W3",
        (1, 2) => "W4",
        _ => return None,
    })
}

pub fn perturbation_key(name: &str) -> Option<PerturbationKey> {
    Some(match name {
        "V" => (0, 0),
        "V1" => (1, 0),
        "V2" => (2, 0),
        "V3" => (3, 0),
        "W1" => (0, 2),
        "W2" => (0, 3),
        "W3" => (0, 4),
        "W4" => (1, 2),
        _ => return None,
    })
}
