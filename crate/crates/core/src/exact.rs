//! Exact accumulation helpers shared by the scans.
//!
//! Every scan folds per-item values into accumulators whose `merge` is
//! associative and commutative, so results do not depend on how a range is
//! split across workers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    BigRational::new(num.into(), den.into())
}

pub fn from_int(n: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(n.into())
}

pub fn biguint_to_rational(n: &BigUint) -> Rational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// Lossy conversion used only for display and float comparisons.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a log-domain ratio when either side overflows f64.
        let n = r.numer();
        let d = r.denom();
        if n.is_zero() {
            return 0.0;
        }
        let sign = if (n < &BigInt::zero()) ^ (d < &BigInt::zero()) { -1.0 } else { 1.0 };
        sign * (log_abs(n) - log_abs(d)).exp()
    })
}

fn log_abs(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().map(|v| v.abs().ln()).unwrap_or(f64::INFINITY);
    }
    let shift = bits - 60;
    let top = (n.magnitude() >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// First two power sums of a non-negative integer statistic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Moments {
    pub count: u64,
    pub sum: u64,
    pub sum_sq: u128,
}

impl Moments {
    pub fn push(&mut self, x: u64) {
        self.count += 1;
        self.sum += x;
        self.sum_sq += (x as u128) * (x as u128);
    }

    pub fn merge(mut self, other: Moments) -> Moments {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self
    }

    /// Mean over an explicit population, which may include items that were
    /// never pushed (they contribute zero).
    pub fn mean_over(&self, population: u64) -> Rational {
        ratio(self.sum, population)
    }

    pub fn mean(&self) -> Rational {
        self.mean_over(self.count)
    }

    pub fn second_moment_over(&self, population: u64) -> Rational {
        ratio(BigInt::from(self.sum_sq), population)
    }

    /// Population variance `E[X²] − E[X]²` over `population` items.
    pub fn variance_over(&self, population: u64) -> Rational {
        let mean = self.mean_over(population);
        self.second_moment_over(population) - &mean * &mean
    }

    pub fn variance(&self) -> Rational {
        self.variance_over(self.count)
    }
}

/// Histogram of small non-negative integer values with exact merge.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram(pub Vec<u64>);

impl Histogram {
    pub fn push(&mut self, x: usize) {
        if self.0.len() <= x {
            self.0.resize(x + 1, 0);
        }
        self.0[x] += 1;
    }

    pub fn merge(mut self, other: Histogram) -> Histogram {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
        self
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Fixed-point accumulator for non-negative `f64` terms.
///
/// Each term is scaled by `2^FRAC_BITS` and truncated to an integer; integer
/// addition is associative, so partial sums reassemble bit-identically under
/// any partition. Terms of magnitude ≥ 2^-27 are captured exactly.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FixedSum(i128);

impl FixedSum {
    const FRAC_BITS: i32 = 80;

    pub fn add(&mut self, x: f64) {
        debug_assert!(x.is_finite() && x.abs() < 2f64.powi(40));
        let scaled = x * 2f64.powi(Self::FRAC_BITS);
        self.0 += scaled as i128;
    }

    pub fn merge(self, other: FixedSum) -> FixedSum {
        FixedSum(self.0 + other.0)
    }

    pub fn value(&self) -> f64 {
        // Split to keep the conversion exact for the high part.
        let hi = (self.0 >> 64) as f64 * 2f64.powi(64 - Self::FRAC_BITS);
        let lo = (self.0 & ((1i128 << 64) - 1)) as f64 * 2f64.powi(-Self::FRAC_BITS);
        hi + lo
    }
}

/// `Σ_{h=1}^{n} 1/h^power` as an exact rational.
pub fn harmonic_exact(n: u64, power: u32) -> Rational {
    let mut acc = Rational::zero();
    for h in 1..=n {
        acc += ratio(1, BigInt::from(h).pow(power));
    }
    acc
}

/// `Σ_{h=1}^{n} 1/h^power` in floating point, summed smallest terms first.
pub fn harmonic(n: u64, power: i32) -> f64 {
    (1..=n).rev().map(|h| (h as f64).powi(-power)).sum()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
