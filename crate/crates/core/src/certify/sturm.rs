//! Real-root isolation by Sturm sequences over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::CertifyError;
use crate::interval::rational_to_f64;
use crate::poly::RatPoly;

/// Sturm chain `p, p', -rem(p, p'), ...`, each member scaled by a positive constant.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<RatPoly>,
}

impl SturmSequence {
    pub fn new(p: &RatPoly) -> Self {
        let mut chain = vec![p.normalize_positive()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d.normalize_positive());
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).expect("chain members are nonzero");
            if r.is_zero() {
                break;
            }
            chain.push((-&r).normalize_positive());
        }
        Self { chain }
    }

    pub fn polynomial(&self) -> &RatPoly {
        &self.chain[0]
    }

    fn variations(&self, t: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(t);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Number of distinct roots in `[a, b]`.
    pub fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        let at_a = usize::from(self.polynomial().eval(a).is_zero());
        at_a + self.count_half_open(a, b)
    }

    /// True when the polynomial has no root in `[a, b]`.
    pub fn root_free(&self, a: &BigRational, b: &BigRational) -> bool {
        self.count_closed(a, b) == 0
    }
}

/// An isolating interval `[lo, hi]` holding exactly one root (possibly `lo == hi`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn lo_f64(&self) -> f64 {
        rational_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        rational_to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.lo_f64() <= x && x <= self.hi_f64()
    }
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

/// Disjoint closed intervals, one per distinct real root of `p` in `[lo, hi]`,
/// sorted increasingly. An empty list certifies that `p` has no root there.
pub fn isolate_real_roots(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> Result<Vec<RootInterval>, CertifyError> {
    if lo > hi {
        return Err(CertifyError::DegenerateInput(format!("empty interval [{lo}, {hi}]")));
    }
    if p.is_zero() {
        return if lo == hi {
            Err(CertifyError::DegenerateInput("zero polynomial".into()))
        } else {
            Err(CertifyError::IdenticallyZeroOnInterval { lo: rational_to_f64(lo), hi: rational_to_f64(hi) })
        };
    }
    let sturm = SturmSequence::new(&p.square_free());
    let sf = sturm.polynomial().clone();
    let mut out = Vec::new();
    if lo == hi {
        if sf.eval(lo).is_zero() {
            out.push(RootInterval { lo: lo.clone(), hi: hi.clone() });
        }
        return Ok(out);
    }
    let mut start = lo.clone();
    if sf.eval(lo).is_zero() {
        out.push(RootInterval { lo: lo.clone(), hi: lo.clone() });
        start = step_past(&sturm, lo, hi);
    }
    // work stack of half-open intervals (a, b] with their root counts
    let mut stack = vec![(start.clone(), hi.clone(), sturm.count_half_open(&start, hi))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(RootInterval { lo: a, hi: b }),
            _ => {
                let m = half(&a, &b);
                if sf.eval(&m).is_zero() {
                    out.push(RootInterval { lo: m.clone(), hi: m.clone() });
                    let (l, r) = gap_around(&sturm, &a, &m, &b);
                    let nl = sturm.count_half_open(&a, &l);
                    let nr = sturm.count_half_open(&r, &b);
                    stack.push((r, b, nr));
                    stack.push((a, l, nl));
                } else {
                    let nl = sturm.count_half_open(&a, &m);
                    stack.push((m.clone(), b, n - nl));
                    stack.push((a, m, nl));
                }
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    // neighbours from adjacent half-open pieces may share an endpoint
    for i in 0..out.len().saturating_sub(1) {
        while out[i].hi >= out[i + 1].lo {
            let shared = out[i].hi.clone();
            let k = if sf.eval(&shared).is_zero() { i + 1 } else { i };
            out[k] = bisect_once(&sturm, &out[k]);
        }
    }
    Ok(out)
}

/// One bisection step on a root interval whose root lies in `(lo, hi]`.
fn bisect_once(sturm: &SturmSequence, iv: &RootInterval) -> RootInterval {
    let m = half(&iv.lo, &iv.hi);
    if sturm.polynomial().eval(&m).is_zero() {
        return RootInterval { lo: m.clone(), hi: m };
    }
    if sturm.count_half_open(&iv.lo, &m) == 1 {
        RootInterval { lo: iv.lo.clone(), hi: m }
    } else {
        RootInterval { lo: m, hi: iv.hi.clone() }
    }
}

/// Point right of the root `r` (inside `(r, hi]`) with no root in `(r, point]`.
fn step_past(sturm: &SturmSequence, r: &BigRational, hi: &BigRational) -> BigRational {
    let mut b = hi.clone();
    loop {
        if sturm.count_half_open(r, &b) == 0 && !sturm.polynomial().eval(&b).is_zero() {
            return b;
        }
        b = half(r, &b);
    }
}

/// Points `l < m < r` inside `(a, b)` such that `m` is the only root in `(l, r]`
/// and neither `l` nor `r` is a root.
fn gap_around(sturm: &SturmSequence, a: &BigRational, m: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
    let mut l = half(a, m);
    let mut r = half(m, b);
    loop {
        let ok = sturm.count_half_open(&l, &r) == 1
            && !sturm.polynomial().eval(&l).is_zero()
            && !sturm.polynomial().eval(&r).is_zero();
        if ok {
            return (l, r);
        }
        l = half(&l, m);
        r = half(m, &r);
    }
}

/// Shrinks an isolating interval of a root of `p` below `width` by bisection.
pub fn refine_root(p: &RatPoly, iv: &RootInterval, width: &BigRational) -> RootInterval {
    let sturm = SturmSequence::new(&p.square_free());
    let sf = sturm.polynomial();
    let (mut a, mut b) = (iv.lo.clone(), iv.hi.clone());
    if sf.eval(&a).is_zero() {
        return RootInterval { lo: a.clone(), hi: a };
    }
    while &b - &a > *width {
        let m = half(&a, &b);
        if sf.eval(&m).is_zero() {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if sturm.count_half_open(&a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    RootInterval { lo: a, hi: b }
}

/// Multiplicities of the distinct roots via Yun's square-free decomposition:
/// returns `(factor, multiplicity)` pairs with pairwise coprime factors.
pub fn square_free_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().map_or(true, |d| d == 0) {
        return out;
    }
    let d = p.derivative();
    let a = p.gcd(&d);
    let mut b = p.div_rem(&a).unwrap().0;
    let c = d.div_rem(&a).unwrap().0;
    let mut e = &c - &b.derivative();
    let mut k = 1;
    while b.degree().map_or(false, |d| d > 0) {
        let f = b.gcd(&e);
        if f.degree().map_or(false, |d| d > 0) {
            out.push((f.clone(), k));
        }
        b = b.div_rem(&f).unwrap().0;
        let c = e.div_rem(&f).unwrap().0;
        e = &c - &b.derivative();
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn unit_root() {
        let p = RatPoly::from_i64(&[-1, 0, 1]);
        let roots = isolate_real_roots(&p, &r(0, 1), &r(2, 1)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains_f64(1.0));
    }

    #[test]
    fn roots_on_endpoints_and_midpoints() {
        // roots at 0, 1/2 and 1 on [0, 1]
        let p = &(&RatPoly::from_i64(&[0, 1]) * &RatPoly::from_i64(&[-1, 2])) * &RatPoly::from_i64(&[-1, 1]);
        let roots = isolate_real_roots(&p, &r(0, 1), &r(1, 1)).unwrap();
        assert_eq!(roots.len(), 3);
        for w in roots.windows(2) {
            assert!(w[0].hi < w[1].lo, "{roots:?}");
        }
        for (iv, x) in roots.iter().zip([0.0, 0.5, 1.0]) {
            assert!(iv.contains_f64(x));
        }
    }

    #[test]
    fn zero_polynomial_errors() {
        let z = RatPoly::zero();
        assert!(matches!(isolate_real_roots(&z, &r(0, 1), &r(1, 1)), Err(CertifyError::IdenticallyZeroOnInterval { .. })));
        assert!(matches!(isolate_real_roots(&z, &r(1, 1), &r(1, 1)), Err(CertifyError::DegenerateInput(_))));
    }

    #[test]
    fn yun_multiplicities() {
        let a = RatPoly::from_i64(&[-1, 1]);
        let b = RatPoly::from_i64(&[2, 1]);
        let p = &(&(&a * &a) * &a) * &b;
        let mut dec = square_free_decomposition(&p);
        dec.sort_by_key(|x| x.1);
        assert_eq!(dec, vec![(b, 1), (a, 3)]);
    }

    #[test]
    fn refinement_narrows() {
        let p = RatPoly::from_i64(&[-2, 0, 1]);
        let iv = isolate_real_roots(&p, &r(0, 1), &r(2, 1)).unwrap().remove(0);
        let fine = refine_root(&p, &iv, &r(1, 1_000_000_000));
        assert!((fine.mid_f64() - 2f64.sqrt()).abs() < 1e-9);
    }
}
