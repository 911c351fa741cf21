//! The exact average identity and the asymptotic predictions.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::config::Ceilings;
use crate::error::Result;
use crate::exact::{harmonic, Rational};
use crate::primes::{euler_phi, BigNat, PrimeCounter};

use super::{bounded_power, check_base};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeanRegime {
    LargeBase,
    LargeLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarianceRegime {
    /// Large-base asymptotic, conditional on GRH.
    LargeBaseGrh,
    /// Conjectured large-ℓ behavior.
    LargeLength,
}

/// Mean truncation count from prime counts alone:
/// `(1 − 1/b) Σ_{h<ℓ} π(b^h)/b^h + π(b^ℓ)/b^ℓ` with `π(x) = #{p < x}`.
pub fn avg_identity(b: u64, l: u32, ceilings: &Ceilings) -> Result<Rational> {
    check_base(b)?;
    bounded_power(b, l, "b^ℓ", ceilings.sieve.saturating_add(1))?;
    let powers: Vec<u64> = (1..=l).map(|h| b.pow(h)).collect();
    let pi = PrimeCounter::new(ceilings.sieve).count_below_many(&powers)?;
    let frac = |h: usize| Rational::new(BigInt::from(pi[h]), BigInt::from(powers[h]));
    let inner = (0..powers.len() - 1).fold(Rational::from_integer(0.into()), |acc, h| acc + frac(h));
    let scale = Rational::new(BigInt::from(b - 1), BigInt::from(b));
    Ok(scale * inner + frac(powers.len() - 1))
}

pub fn avg_predicted(b: u64, l: u32, regime: MeanRegime) -> f64 {
    let lb = (b as f64).ln();
    match regime {
        MeanRegime::LargeBase => harmonic(l as u64, 1) / lb + harmonic(l as u64, 2) / (lb * lb),
        MeanRegime::LargeLength => (1.0 - 1.0 / b as f64) * (l as f64).ln() / lb,
    }
}

/// `b/φ(b) − 1`.
fn totient_excess(b: u64) -> Result<f64> {
    let phi = euler_phi(&BigNat::from(b))?.to_u64().expect("φ(b) ≤ b");
    Ok(b as f64 / phi as f64 - 1.0)
}

pub fn var_predicted(b: u64, l: u32, regime: VarianceRegime) -> Result<f64> {
    check_base(b)?;
    let lb = (b as f64).ln();
    let excess = totient_excess(b)?;
    Ok(match regime {
        VarianceRegime::LargeBaseGrh => {
            let h1 = harmonic(l as u64, 1);
            let h2 = harmonic(l as u64, 2);
            h1 / lb + excess * (h1 * h1 - h2) / (lb * lb)
        }
        VarianceRegime::LargeLength => {
            let shrink = 1.0 - 1.0 / b as f64;
            let ll = (l as f64).ln();
            shrink * shrink * excess * ll * ll / (lb * lb)
        }
    })
}
