//! Double-double arithmetic: an unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiply by `2^k`, exactly.
    fn ldexp(self, k: i32) -> Dd {
        let s = 2f64.powi(k);
        Dd { hi: self.hi * s, lo: self.lo * s }
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.7 {
            return Dd { hi: f64::INFINITY, lo: 0.0 };
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        // x = k ln 2 + r·2^9 with |r| ≤ ln 2 / 2^10.
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * k).ldexp(-9);
        // s = e^r − 1 by Taylor; then (1 + s)² − 1 = 2s + s², nine times.
        let mut term = r;
        let mut s = r;
        for n in 2..=16 {
            term = term * r / n as f64;
            s = s + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..9 {
            s = s * 2.0 + s * s;
        }
        (s + 1.0).ldexp(k as i32)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, o: f64) -> Dd {
        self + Dd::from(o)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + -o
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    fn sub(self, o: f64) -> Dd {
        self + Dd::from(-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, o: f64) -> Dd {
        let (p, e) = two_prod(self.hi, o);
        let (hi, lo) = quick_two_sum(p, e + self.lo * o);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * q1;
        let q2 = r.hi / o.hi;
        let r = r - o * q2;
        let q3 = r.hi / o.hi;
        Dd::new(q1, q2) + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, o: f64) -> Dd {
        self / Dd::from(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_reference_values() {
        // e to 32 digits, and e^10, e^-5 split into double-double pairs.
        let e = Dd::ONE.exp();
        assert_eq!(e.hi, std::f64::consts::E);
        assert!((e.lo - 1.445_646_891_729_250_2e-16).abs() < 1e-31);
        let e10 = Dd::from(10.0).exp();
        let want = Dd::new(22026.465794806718, -1.3780134700517372e-12);
        assert!((e10 - want).abs().hi < 1e-27 * 22026.0);
        let em5 = Dd::from(-5.0).exp();
        let want = Dd::new(0.006737946999085467, 9.579094181215286e-20);
        assert!((em5 - want).abs().hi < 1e-33);
    }

    #[test]
    fn arithmetic_is_consistent() {
        let third = Dd::ONE / Dd::from(3.0);
        assert!((third * 3.0 - Dd::ONE).abs().hi < 1e-32);
        let x = Dd::new(1.0, 1e-20);
        assert_eq!((x - Dd::ONE).hi, 1e-20);
        let a = Dd::from(0.3).exp();
        let b = Dd::from(-0.3).exp();
        assert!(((a * b) - Dd::ONE).abs().hi < 1e-31);
    }
}
