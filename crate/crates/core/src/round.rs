//! Outward-rounding helpers for `f64`.
//!
//! Every helper returns a value that bounds the exact real result in the
//! requested direction. Operations that are exact (a zero operand, an exact
//! sum detected by an error-free transform) are not widened, so exact inputs
//! keep zero radii.

/// Exact error of `a + b`: returns `(s, e)` with `s = fl(a + b)` and `a + b = s + e`.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Exact error of `a * b` via fused multiply-add.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

#[inline]
pub fn up(x: f64) -> f64 {
    x.next_up()
}

#[inline]
pub fn down(x: f64) -> f64 {
    x.next_down()
}

/// Upper bound on `a + b`.
#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return b;
    }
    if b == 0.0 {
        return a;
    }
    let (s, e) = two_sum(a, b);
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

/// Lower bound on `a + b`.
#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return b;
    }
    if b == 0.0 {
        return a;
    }
    let (s, e) = two_sum(a, b);
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

/// Upper bound on `a * b`.
#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let (p, e) = two_prod(a, b);
    if e > 0.0 || (p == 0.0 && (a > 0.0) == (b > 0.0)) {
        p.next_up()
    } else {
        p
    }
}

/// Lower bound on `a * b`.
#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let (p, e) = two_prod(a, b);
    if e < 0.0 || (p == 0.0 && (a > 0.0) != (b > 0.0)) {
        p.next_down()
    } else {
        p
    }
}

/// Upper bound on `a / b` for `b != 0`.
#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    // residual r = a - q*b has the sign of the rounding error times sign(b)
    let r = (-q).mul_add(b, a);
    if r != 0.0 && (r > 0.0) == (b > 0.0) {
        q.next_up()
    } else {
        q
    }
}

/// Lower bound on `a / b` for `b != 0`.
#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    -div_up(-a, b)
}

/// Upper bound on `sqrt(x)` for `x >= 0`.
#[inline]
pub fn sqrt_up(x: f64) -> f64 {
    let s = x.sqrt();
    if s.mul_add(s, -x) < 0.0 {
        s.next_up()
    } else {
        s
    }
}

/// Lower bound on `sqrt(x)` for `x >= 0`.
#[inline]
pub fn sqrt_down(x: f64) -> f64 {
    let s = x.sqrt();
    if s.mul_add(s, -x) > 0.0 {
        s.next_down().max(0.0)
    } else {
        s
    }
}

/// Upper bound on `sqrt(a^2 + b^2)`.
#[inline]
pub fn hypot_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return b.abs();
    }
    if b == 0.0 {
        return a.abs();
    }
    // libm hypot is within one ulp; two steps up covers it
    a.hypot(b).next_up().next_up()
}

/// Lower bound on `sqrt(a^2 + b^2)`.
#[inline]
pub fn hypot_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return b.abs();
    }
    if b == 0.0 {
        return a.abs();
    }
    a.hypot(b).next_down().next_down().max(0.0)
}

/// Sum of non-negative values rounded upward.
pub fn sum_up<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, add_up)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_operations_are_not_widened() {
        assert_eq!(add_up(1.0, 2.0), 3.0);
        assert_eq!(mul_up(3.0, 0.5), 1.5);
        assert_eq!(add_up(1.0, 0.0), 1.0);
        assert_eq!(sqrt_up(4.0), 2.0);
        assert_eq!(div_up(1.0, 4.0), 0.25);
    }

    #[test]
    fn inexact_operations_bracket() {
        let lo = add_down(0.1, 0.2);
        let hi = add_up(0.1, 0.2);
        assert!(lo < hi);
        let third_hi = div_up(1.0, 3.0);
        let third_lo = div_down(1.0, 3.0);
        assert!(third_lo < third_hi);
        assert!(3.0 * third_lo <= 1.0 || mul_down(3.0, third_lo) <= 1.0);
        assert!(mul_up(3.0, third_hi) >= 1.0);
        let s = sqrt_up(2.0);
        assert!(mul_up(s, s) >= 2.0);
        let s = sqrt_down(2.0);
        assert!(mul_down(s, s) <= 2.0);
    }
}
