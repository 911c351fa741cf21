use std::fmt;
use std::ops::{Add, Mul, Rem};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
///
/// Serialized as a decimal string so values above 2^53 survive JSON.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigNat(BigUint);

impl BigNat {
    pub fn zero() -> Self {
        BigNat(BigUint::zero())
    }

    pub fn one() -> Self {
        BigNat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn pow(&self, exp: u32) -> BigNat {
        BigNat(self.0.pow(exp))
    }

    pub fn mod_pow(&self, exp: &BigNat, modulus: &BigNat) -> BigNat {
        BigNat(self.0.modpow(&exp.0, &modulus.0))
    }

    /// Quotient and remainder. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &BigNat) -> (BigNat, BigNat) {
        let (q, r) = self.0.div_rem(&divisor.0);
        (BigNat(q), BigNat(r))
    }

    pub fn gcd(&self, other: &BigNat) -> BigNat {
        BigNat(self.0.gcd(&other.0))
    }
}

impl From<u64> for BigNat {
    fn from(n: u64) -> Self {
        BigNat(BigUint::from(n))
    }
}

impl From<u128> for BigNat {
    fn from(n: u128) -> Self {
        BigNat(BigUint::from(n))
    }
}

impl From<BigUint> for BigNat {
    fn from(n: BigUint) -> Self {
        BigNat(n)
    }
}

impl FromStr for BigNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('_', "");
        if let Some((base, exp)) = s.split_once('^') {
            let base: BigUint = base.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
            let exp: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
            return Ok(BigNat(base.pow(exp)));
        }
        s.parse::<BigUint>()
            .map(BigNat)
            .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Add for &BigNat {
    type Output = BigNat;
    fn add(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 + &rhs.0)
    }
}

impl Mul for &BigNat {
    type Output = BigNat;
    fn mul(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 * &rhs.0)
    }
}

impl Rem for &BigNat {
    type Output = BigNat;
    fn rem(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 % &rhs.0)
    }
}

impl Serialize for BigNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
