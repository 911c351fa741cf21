//! Exact and asymptotic predictions for polynomial truncation statistics.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::{harmonic, ratio, Rational};
use crate::ff::{count_irreducible, poly_phi_f64, FqPoly};

use super::base_degree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyMeanRegime {
    LargeQ,
    LargeM,
    LargeLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyVarianceRegime {
    LargeQ,
    LargeM,
    LargeLengthConjecture,
}

/// Exact average over `deg f < mℓ`, for any base of degree `m`.
pub fn poly_avg_exact(q: u64, m: u32, l: u32) -> Rational {
    poly_avg_exact_with(q, m, l, false)
}

/// As [`poly_avg_exact`]; `strict` drops the single-digit truncations.
pub fn poly_avg_exact_with(q: u64, m: u32, l: u32, strict: bool) -> Rational {
    let qm = BigInt::from(q).pow(m);
    let mut scale = Rational::one();
    let mut total = Rational::zero();
    for k in 1..=l {
        scale /= Rational::from_integer(qm.clone());
        if strict && k == 1 {
            continue;
        }
        let lo = (m * (k - 1)).max(1);
        let count: BigInt = (lo..m * k)
            .map(|h| BigInt::from(count_irreducible(q, h, true)))
            .sum::<BigInt>()
            * (q - 1);
        total += &scale * Rational::from_integer(count);
    }
    total
}

/// `(q−1) Σ_{t=1}^{m} q^{−t} Σ_{1≤h<mℓ, h≡−t (mod m)} 1/h`, exactly.
pub fn poly_avg_main_term_exact(q: u64, m: u32, l: u32) -> Rational {
    let mut total = Rational::zero();
    for h in 1..(m as u64 * l as u64) {
        // h ≡ −t (mod m) with 1 ≤ t ≤ m.
        let t = m as u64 - h % m as u64;
        total += ratio(1, BigInt::from(q).pow(t as u32) * BigInt::from(h));
    }
    total * Rational::from_integer((q - 1).into())
}

pub fn poly_avg_main_term(q: u64, m: u32, l: u32) -> f64 {
    if l == 0 {
        return 0.0;
    }
    let q = q as f64;
    let mut total = 0.0;
    for t in 1..=m {
        let mut inner = 0.0;
        // Largest h < mℓ with h ≡ m − t (mod m), summed small terms last.
        let first = (m - t) as u64;
        let mut h = m as u64 * l as u64 - t as u64;
        while h >= first.max(1) {
            inner += 1.0 / h as f64;
            if h < m as u64 {
                break;
            }
            h -= m as u64;
        }
        total += inner * q.powi(-(t as i32));
    }
    (q - 1.0) * total
}

/// `Σ_{1≤h<mℓ, h≡−1 (mod m)} w(h)`.
fn residue_sum(m: u32, l: u32, w: impl Fn(f64) -> f64) -> f64 {
    let m = m as u64;
    let mut h = m * l as u64 - 1;
    let mut s = 0.0;
    while h >= 1 {
        s += w(h as f64);
        if h < m {
            break;
        }
        h -= m;
    }
    s
}

pub fn poly_avg_asymptotic(q: u64, m: u32, l: u32, regime: PolyMeanRegime) -> f64 {
    let (qf, mf) = (q as f64, m as f64);
    match regime {
        PolyMeanRegime::LargeQ => {
            if l == 0 {
                return 0.0;
            }
            residue_sum(m, l, |h| 1.0 / h)
        }
        PolyMeanRegime::LargeM => {
            harmonic(l as u64, 1) / mf + qf * harmonic(l as u64, 2) / ((qf - 1.0) * mf * mf)
        }
        PolyMeanRegime::LargeLength => (1.0 - qf.powf(-mf)) * (l as f64).ln() / mf,
    }
}

/// Variance predictions from `q`, `m` and `Φ(b)`.
pub fn poly_var_predicted(q: u64, m: u32, phi: f64, l: u32, regime: PolyVarianceRegime) -> f64 {
    let (qf, mf) = (q as f64, m as f64);
    let ratio = qf.powf(mf) / phi;
    match regime {
        PolyVarianceRegime::LargeQ => {
            if l == 0 {
                return 0.0;
            }
            residue_sum(m, l, |h| 1.0 / h - 1.0 / (h * h))
        }
        PolyVarianceRegime::LargeM => {
            let h1 = harmonic(l as u64, 1);
            let h2 = harmonic(l as u64, 2);
            h1 / mf + (ratio - 1.0) * h1 * h1 / (mf * mf) - (ratio - qf / (qf - 1.0)) * h2 / (mf * mf)
        }
        PolyVarianceRegime::LargeLengthConjecture => {
            let c = 1.0 - qf.powf(-mf);
            c * c * (ratio - 1.0) * (l as f64).ln().powi(2) / (mf * mf)
        }
    }
}

/// As [`poly_var_predicted`], with `Φ(b)` computed from the base.
pub fn poly_var_predicted_for_base(b: &FqPoly, l: u32, regime: PolyVarianceRegime) -> Result<f64> {
    let m = base_degree(b)? as u32;
    let phi = poly_phi_f64(b)?;
    Ok(poly_var_predicted(b.field().order() as u64, m, phi, l, regime))
}
