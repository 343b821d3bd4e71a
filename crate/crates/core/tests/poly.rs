use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ptheta::poly::resultant::{perturbed_pair, resultant_mpoly};
use ptheta::poly::*;

fn expected(name: &str) -> IntPoly {
    match name {
        "V" => IntPoly::from_terms(&[(10, 256), (7, -192), (6, -128), (5, 288), (4, -60), (3, -80), (2, 52), (1, -12), (0, 1)]),
        "V1" => IntPoly::from_terms(&[(10, 768), (7, -384), (6, -256), (5, 432), (4, -60), (2, 34), (1, -4), (3, -80)]),
        "V2" => IntPoly::from_terms(&[(10, 768), (7, -192), (6, -128), (5, 144), (4, -27)]),
        "V3" => IntPoly::from_terms(&[(10, 256)]),
        "W1" => IntPoly::from_terms(&[(0, -1), (5, -16), (4, 24), (1, 7), (2, -14)]),
        "W2" => IntPoly::from_terms(&[(1, -1), (2, 4), (4, -8)]),
        "W3" => IntPoly::from_terms(&[(4, 1)]),
        "W4" => IntPoly::from_terms(&[(4, 6), (5, -16)]),
        _ => unreachable!(),
    }
}

#[test]
fn perturbation_expansion_matches_listed_polynomials() {
    let map = build_perturbed_resultant().unwrap();
    assert_eq!(map.len(), 8, "monomials: {:?}", map.keys().collect::<Vec<_>>());
    for (key, poly) in &map {
        let name = perturbation_name(*key).unwrap_or_else(|| panic!("unexpected monomial {key:?}"));
        assert_eq!(poly, &expected(name), "{name}");
    }
}

#[test]
fn v_factors_with_golden_square() {
    let v = truncation_resultant().unwrap();
    let cof = golden_square_cofactor(&v).expect("(4q^2+2q-1)^2 divides V");
    let two_q_minus_one = IntPoly::from_i64(&[-1, 2]);
    let rest = cof.div_exact(&(&two_q_minus_one * &two_q_minus_one)).unwrap();
    assert_eq!(rest, IntPoly::from_i64(&[1, -4, 4, 0, 4]));
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Determinant over the rationals by Gaussian elimination with row swaps.
fn gauss_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else { return BigRational::zero() };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Sylvester determinant at a numeric point, ascending coefficient rows.
fn numeric_resultant(f: &[BigRational], g: &[BigRational]) -> BigRational {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut r = vec![BigRational::zero(); size];
        for (d, c) in f.iter().enumerate() {
            r[i + d] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![BigRational::zero(); size];
        for (d, c) in g.iter().enumerate() {
            r[i + d] = c.clone();
        }
        rows.push(r);
    }
    gauss_det(rows)
}

#[test]
fn expansion_agrees_with_pointwise_resultant() {
    let map = build_perturbed_resultant().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let q = rat(rng.gen_range(-40..=40), rng.gen_range(1..=30));
        let a = rat(rng.gen_range(-20..=20), rng.gen_range(1..=50));
        let b = rat(rng.gen_range(-20..=20), rng.gen_range(1..=50));
        if q.is_zero() {
            continue;
        }
        let qp = |k: usize| num_traits::pow(q.clone(), k);
        let u = vec![BigRational::one() + &a, qp(1), qp(3), qp(6), qp(10)];
        let ux = vec![BigRational::one() + &b, rat(2, 1) * qp(2), rat(3, 1) * qp(5), rat(4, 1) * qp(9)];
        let direct = numeric_resultant(&u, &ux) / qp(26);
        let mut expanded = BigRational::zero();
        for ((i, j), p) in &map {
            expanded += p.eval_rational(&q) * num_traits::pow(a.clone(), *i as usize) * num_traits::pow(b.clone(), *j as usize);
        }
        assert_eq!(direct, expanded);
    }
}

#[test]
fn expansion_at_zero_perturbation_is_v() {
    let (u, ux) = perturbed_pair();
    let res = resultant_mpoly(&u, &ux, 1).unwrap();
    let map = build_perturbed_resultant().unwrap();
    assert_eq!(map[&(0, 0)], truncation_resultant().unwrap());
    // every surviving term carries at least q^26
    assert!(res.terms().all(|(e, _)| e[0] >= 26));
}

fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][c] * cofactor_det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn univariate_x(coeffs: &[i64]) -> BivariateIntPoly {
    let terms: Vec<(u32, u32, i64)> = coeffs.iter().enumerate().map(|(j, &c)| (0, j as u32, c)).collect();
    BivariateIntPoly::from_terms(&terms)
}

fn int_resultant(f: &[i64], g: &[i64]) -> BigInt {
    let r = sylvester_resultant(&univariate_x(f), &univariate_x(g), Var::X).unwrap();
    r.coeff(0)
}

fn nonzero_lead(deg: usize) -> impl Strategy<Value = Vec<i64>> {
    (prop::collection::vec(-9i64..=9, deg), prop_oneof![1i64..=9, -9i64..=-1]).prop_map(|(mut v, l)| {
        v.push(l);
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cubic_resultant_matches_cofactor_expansion(f in nonzero_lead(3), g in nonzero_lead(3)) {
        let big = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        let (fb, gb) = (big(&f), big(&g));
        let mut rows = Vec::new();
        for i in 0..3 {
            let mut r = vec![BigInt::zero(); 6];
            for (d, c) in fb.iter().enumerate() { r[i + d] = c.clone(); }
            rows.push(r);
        }
        for i in 0..3 {
            let mut r = vec![BigInt::zero(); 6];
            for (d, c) in gb.iter().enumerate() { r[i + d] = c.clone(); }
            rows.push(r);
        }
        prop_assert_eq!(int_resultant(&f, &g), cofactor_det(&rows));
    }

    #[test]
    fn resultant_is_multiplicative(f in nonzero_lead(2), g in nonzero_lead(1), h in nonzero_lead(3)) {
        let fp = IntPoly::from_i64(&f);
        let gp = IntPoly::from_i64(&g);
        let fg = &fp * &gp;
        let fg: Vec<i64> = fg.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect();
        prop_assert_eq!(int_resultant(&fg, &h), int_resultant(&f, &h) * int_resultant(&g, &h));
    }

    #[test]
    fn restriction_commutes_with_ring_operations(
        a in prop::collection::vec(-50i64..50, 1..6),
        b in prop::collection::vec(-50i64..50, 1..6),
        idx in 0usize..12,
    ) {
        let seg = &contour_segments()[idx];
        let (pa, pb) = (IntPoly::from_i64(&a), IntPoly::from_i64(&b));
        let (ra, rb) = (restrict_to_segment(&pa, seg), restrict_to_segment(&pb, seg));
        let sum = restrict_to_segment(&(&pa + &pb), seg);
        prop_assert_eq!(&sum.re_part, &(&ra.re_part + &rb.re_part));
        prop_assert_eq!(&sum.im_part, &(&ra.im_part + &rb.im_part));
        let prod = restrict_to_segment(&(&pa * &pb), seg);
        let re = &(&ra.re_part * &rb.re_part) - &(&ra.im_part * &rb.im_part);
        let im = &(&ra.re_part * &rb.im_part) + &(&ra.im_part * &rb.re_part);
        prop_assert_eq!(prod.re_part, re);
        prop_assert_eq!(prod.im_part, im);
    }
}

#[test]
fn restriction_of_v_on_right_edge() {
    let v = truncation_resultant().unwrap();
    let seg = SegmentQ::vertical("Kv+", rat(1, 3), rat(-1, 3), rat(1, 3));
    let pair = restrict_to_segment(&v, &seg);
    assert!(pair.re_part.degree().unwrap() <= 10);
    assert!(pair.im_part.degree().unwrap() <= 10);
    let t = rat(1, 10);
    let re = pair.re_part.eval(&t);
    let im = pair.im_part.eval(&t);
    let modsq = ptheta::interval::rational_to_f64(&(&re * &re + &im * &im));
    let direct = v.eval_complex(seg.point_f64(0.1)).norm_sqr();
    assert!((modsq - direct).abs() < 1e-12 * direct.max(1.0));
}
