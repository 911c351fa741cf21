//! Predicted maximal truncation counts and Borel–Cantelli sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::to_f64;
use crate::ff::prime_power;
use crate::report;

use super::dist::exact_distribution;
use super::lambert::lambert_w;
use super::{ModelKind, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxMethod {
    LambertW,
    Simplified,
}

/// Predicted order of the largest truncation count among `ℓ`-digit inputs.
///
/// With `S = ℓ ln b` (or `mℓ ln q`): `S / W(S/(e ω ln ℓ))`, or `S / ln ℓ`.
pub fn predict_max(kind: &ModelKind, method: MaxMethod) -> Result<f64> {
    let l = kind.digits();
    if l < 3 {
        return Err(Error::BadRange(format!("need ℓ ≥ 3, got {l}")));
    }
    kind.check()?;
    let s = l as f64 * kind.log_base();
    let ln_l = (l as f64).ln();
    Ok(match method {
        MaxMethod::Simplified => s / ln_l,
        MaxMethod::LambertW => s / lambert_w(s / (std::f64::consts::E * kind.omega() * ln_l))?,
    })
}

/// Which parameter the Borel–Cantelli series runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BcFamily {
    /// Bases `b = 2, 3, …`.
    Int,
    /// Prime powers `q = 2, 3, 4, 5, 7, …` with fixed base degree `m`.
    Poly { m: u32 },
}

/// One term of `Σ (1 − p(ℓ))^N` with `N` the number of `ℓ`-digit inputs.
///
/// The summand is `exp(N·ln(1 − p))`; its relative error is about
/// `|N ln(1 − p)|·2^-52`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BcTerm {
    pub parameter: u64,
    #[serde(with = "report::float")]
    pub p_all: f64,
    #[serde(with = "report::float")]
    pub population: f64,
    #[serde(with = "report::float")]
    pub summand: f64,
    #[serde(with = "report::float")]
    pub partial_sum: f64,
}

pub const BC_LIMIT: u64 = 10_000;

pub fn borel_cantelli_partial(family: BcFamily, l: u32, limit: u64) -> Result<Vec<BcTerm>> {
    if l < 2 {
        return Err(Error::BadRange(format!("need ℓ ≥ 2, got {l}")));
    }
    if limit > BC_LIMIT {
        return Err(Error::BadRange(format!("limit {limit} above {BC_LIMIT}")));
    }
    let params: Vec<u64> = match family {
        BcFamily::Int => (2..=limit).collect(),
        BcFamily::Poly { .. } => (2..=limit.min(u32::MAX as u64))
            .filter(|&q| prime_power(q as u32).is_ok())
            .collect(),
    };
    let mut partial = 0.0;
    let mut out = Vec::with_capacity(params.len());
    for x in params {
        let (kind, population) = match family {
            BcFamily::Int => {
                let b = x as f64;
                (ModelKind::Int { base: x, digits: l }, (b - 1.0) * b.powi(l as i32 - 1))
            }
            BcFamily::Poly { m } => {
                let qm = (x as f64).powi(m as i32);
                (ModelKind::Poly { q: x, m, digits: l }, (qm - 1.0) * qm.powi(l as i32 - 1))
            }
        };
        let params = ModelParams::new(kind)?;
        let p_all = to_f64(&exact_distribution(&params).tail(l));
        let summand = (population * (-p_all).ln_1p()).exp();
        partial += summand;
        out.push(BcTerm { parameter: x, p_all, population, summand, partial_sum: partial });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cramer::lambert_w;

    #[test]
    fn predictors() {
        let k = ModelKind::Int { base: 10, digits: 1000 };
        let s = 1000.0 * 10f64.ln();
        assert!((predict_max(&k, MaxMethod::Simplified).unwrap() - s / 1000f64.ln()).abs() < 1e-9);
        let w = 0.9 / 10f64.ln();
        let want = s / lambert_w(s / (std::f64::consts::E * w * 1000f64.ln())).unwrap();
        assert!((predict_max(&k, MaxMethod::LambertW).unwrap() - want).abs() < 1e-9);
        let k = ModelKind::Poly { q: 3, m: 2, digits: 50 };
        let s = 100.0 * 3f64.ln();
        assert!((predict_max(&k, MaxMethod::Simplified).unwrap() - s / 50f64.ln()).abs() < 1e-9);
        assert!(predict_max(&ModelKind::Int { base: 10, digits: 2 }, MaxMethod::LambertW).is_err());
    }

    #[test]
    fn lambert_to_simplified_ratio_moves_toward_one() {
        let ratio = |l| {
            let k = ModelKind::Int { base: 10, digits: l };
            predict_max(&k, MaxMethod::LambertW).unwrap() / predict_max(&k, MaxMethod::Simplified).unwrap()
        };
        let r: Vec<f64> = [1_000, 10_000, 100_000].into_iter().map(ratio).collect();
        assert!(r[0] > r[1] && r[1] > r[2] && r[2] > 1.0, "{r:?}");
    }

    #[test]
    fn borel_cantelli_int() {
        let terms = borel_cantelli_partial(BcFamily::Int, 3, 100).unwrap();
        assert_eq!(terms.len(), 99);
        assert!(terms.iter().all(|t| (0.0..=1.0).contains(&t.summand)));
        for w in terms[..49].windows(2) {
            assert!(w[1].summand < w[0].summand || w[1].summand == 0.0);
        }
        let at20 = terms.iter().find(|t| t.parameter == 20).unwrap().partial_sum;
        for t in terms.iter().filter(|t| t.parameter > 20) {
            assert!((t.partial_sum - at20).abs() < 1e-6);
        }
        assert!(borel_cantelli_partial(BcFamily::Int, 1, 10).is_err());
        assert!(borel_cantelli_partial(BcFamily::Int, 3, 10_001).is_err());
    }

    #[test]
    fn borel_cantelli_poly() {
        let terms = borel_cantelli_partial(BcFamily::Poly { m: 1 }, 3, 32).unwrap();
        let qs: Vec<u64> = terms.iter().map(|t| t.parameter).collect();
        assert_eq!(qs, [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]);
        assert!(terms.iter().all(|t| (0.0..=1.0).contains(&t.summand)));
    }
}
