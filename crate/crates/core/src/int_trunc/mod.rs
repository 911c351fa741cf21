//! Left truncations of integers in base `b` and their statistics.

mod correlation;
mod predict;
mod scan;

pub use correlation::{CorrelationQuery, CorrelationValue, Weight};
pub use predict::{avg_identity, avg_predicted, var_predicted, MeanRegime, VarianceRegime};
pub use scan::{
    avg_bruteforce, int_stat_report, restricted_stats, var_bruteforce, IntStatReport, TruncTable,
};

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{is_prime, BigNat};

/// Little-endian base-`b` digits; the empty sequence represents 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitExpansion {
    pub base: u64,
    pub digits: Vec<u64>,
}

impl DigitExpansion {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn value(&self) -> BigNat {
        let b = BigUint::from(self.base);
        let v = self
            .digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &b + d);
        BigNat::from(v)
    }
}

pub(crate) fn check_base(b: u64) -> Result<()> {
    if b < 2 {
        return Err(Error::BaseTooSmall(b));
    }
    Ok(())
}

pub fn digits(n: &BigNat, b: u64) -> Result<DigitExpansion> {
    check_base(b)?;
    let base = BigUint::from(b);
    let mut rest = n.as_biguint().clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&base);
        out.push(r.try_into().expect("digit fits u64"));
        rest = q;
    }
    Ok(DigitExpansion { base: b, digits: out })
}

/// Suffixes of `n` whose leading digit is nonzero, ascending.
pub fn truncations(n: &BigNat, b: u64) -> Result<BTreeSet<BigNat>> {
    let expansion = digits(n, b)?;
    let base = BigUint::from(b);
    let mut out = BTreeSet::new();
    let mut suffix = BigUint::zero();
    let mut place = BigUint::from(1u32);
    for &a in &expansion.digits {
        suffix += &place * a;
        place *= &base;
        if a != 0 {
            out.insert(BigNat::from(suffix.clone()));
        }
    }
    Ok(out)
}

/// Number of prime truncations of `n`.
pub fn trunc_count(n: &BigNat, b: u64) -> Result<u64> {
    Ok(truncations(n, b)?
        .iter()
        .filter(|d| is_prime(d).is_prime())
        .count() as u64)
}

/// `b^ℓ` if it fits under `limit`, otherwise `CeilingExceeded`.
pub(crate) fn bounded_power(b: u64, l: u32, what: &'static str, limit: u64) -> Result<u64> {
    match b.checked_pow(l) {
        Some(v) if v <= limit => Ok(v),
        Some(v) => Err(Error::ceiling(what, v, limit)),
        None => Err(Error::ceiling(what, format!("{b}^{l}"), limit)),
    }
}
