//! Independent-Bernoulli model of the truncation count.
//!
//! An `ℓ`-digit input has one candidate truncation per digit count `d`.
//! Position `d < ℓ` succeeds with probability `ω/d`; the top position,
//! whose digit is never zero, with `1/(ℓ ln b)` for integers and `1/(mℓ)`
//! for polynomials. Here `ω = (1 − 1/b)/ln b` or `(1 − q^{−m})/m`.

mod dd;
mod dist;
mod lambert;
mod monte_carlo;
mod predict;

pub use dd::Dd;
pub use dist::{
    exact_distribution, p1_analytic, p1_analytic_exact, p_at_least, sym_sums, tail_approx,
    DistEntry, ProbMethod, ProbTable,
};
pub use lambert::{lambert_residual, lambert_w, lambert_w_dd};
pub use monte_carlo::{monte_carlo, MonteCarloReport};
pub use predict::{borel_cantelli_partial, predict_max, BcFamily, BcTerm, MaxMethod};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ratio, to_f64, Rational};
use crate::report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelKind {
    Int { base: u64, digits: u32 },
    Poly { q: u64, m: u32, digits: u32 },
}

impl ModelKind {
    pub fn digits(&self) -> u32 {
        match *self {
            ModelKind::Int { digits, .. } | ModelKind::Poly { digits, .. } => digits,
        }
    }

    pub fn omega(&self) -> f64 {
        match *self {
            ModelKind::Int { base, .. } => (1.0 - 1.0 / base as f64) / (base as f64).ln(),
            ModelKind::Poly { q, m, .. } => (1.0 - (q as f64).powi(-(m as i32))) / m as f64,
        }
    }

    /// `ln b`, or `m ln q`: the log of the size of one digit step.
    pub fn log_base(&self) -> f64 {
        match *self {
            ModelKind::Int { base, .. } => (base as f64).ln(),
            ModelKind::Poly { q, m, .. } => m as f64 * (q as f64).ln(),
        }
    }

    fn check(&self) -> Result<()> {
        match *self {
            ModelKind::Int { base, .. } if base < 2 => Err(Error::BaseTooSmall(base)),
            ModelKind::Poly { q, m, .. } if q < 2 || m == 0 => {
                Err(Error::BadRange(format!("need q ≥ 2 and m ≥ 1, got q={q}, m={m}")))
            }
            _ if self.digits() == 0 => Err(Error::BadRange("need ℓ ≥ 1".into())),
            _ => Ok(()),
        }
    }
}

/// Model parameters with exact per-position probabilities.
///
/// For integers `ln b` enters as the exact rational value of its `f64`
/// approximation, so every downstream identity holds exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub kind: ModelKind,
    #[serde(with = "report::rational")]
    pub omega: Rational,
    /// `probs[d − 1]` is the success probability of position `d`.
    #[serde(with = "report::rational_vec")]
    pub probs: Vec<Rational>,
}

impl ModelParams {
    pub fn new(kind: ModelKind) -> Result<Self> {
        kind.check()?;
        let l = kind.digits();
        let (omega, top) = match kind {
            ModelKind::Int { base, .. } => {
                let ln_b = Rational::from_float((base as f64).ln()).unwrap();
                let omega = ratio(base as i64 - 1, base as i64) / &ln_b;
                let top = Rational::one() / (ln_b * Rational::from_integer(l.into()));
                (omega, top)
            }
            ModelKind::Poly { q, m, .. } => {
                let qm = num_bigint::BigInt::from(q).pow(m);
                let omega = Rational::new(&qm - 1, qm * m);
                (omega, ratio(1, m as i64 * l as i64))
            }
        };
        let mut probs: Vec<Rational> =
            (1..l).map(|d| &omega / Rational::from_integer(d.into())).collect();
        probs.push(top);
        for (i, p) in probs.iter().enumerate() {
            if p <= &Rational::zero() || p >= &Rational::one() {
                return Err(Error::DegenerateProbability { index: i + 1, value: to_f64(p) });
            }
        }
        Ok(ModelParams { kind, omega, probs })
    }

    pub fn digits(&self) -> u32 {
        self.kind.digits()
    }

    pub fn probs_f64(&self) -> Vec<f64> {
        self.probs.iter().map(to_f64).collect()
    }

    /// `Σ p_d`, the model mean.
    pub fn mean(&self) -> Rational {
        self.probs.iter().fold(Rational::zero(), |a, p| a + p)
    }
}
