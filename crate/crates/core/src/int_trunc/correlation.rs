//! Correlation sums between truncation lengths `h1 < h2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Ceilings;
use crate::error::{Error, Result};
use crate::exact::FixedSum;
use crate::primes::{phi_u64, von_mangoldt_table, PrimeTable};
use crate::report;

use super::{bounded_power, check_base};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Weight {
    PrimeIndicator,
    VonMangoldt,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationValue {
    Count(u64),
    Weighted(#[serde(with = "report::float")] f64),
}

impl CorrelationValue {
    pub fn to_f64(self) -> f64 {
        match self {
            CorrelationValue::Count(c) => c as f64,
            CorrelationValue::Weighted(x) => x,
        }
    }
}

/// Pairs `b^{h1−1} ≤ d1 < y1`, `b^{h2−1} ≤ d2 < y2` with `d2 ≡ d1 (mod b^{h1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelationQuery {
    pub base: u64,
    pub h1: u32,
    pub h2: u32,
    pub weight: Weight,
    /// Upper end for `d1`; defaults to `b^{h1}`.
    pub y1: Option<u64>,
    /// Upper end for `d2`; defaults to `b^{h2}`.
    pub y2: Option<u64>,
}

#[derive(Default, Clone, Copy)]
struct Acc {
    count: u64,
    weighted: FixedSum,
}

impl Acc {
    fn merge(self, o: Acc) -> Acc {
        Acc {
            count: self.count + o.count,
            weighted: self.weighted.merge(o.weighted),
        }
    }
}

enum Tables {
    Primes(PrimeTable),
    Lambda(Vec<f64>),
}

struct Bounds {
    lo1: u64,
    y1: u64,
    lo2: u64,
    y2: u64,
    modulus: u64,
}

impl CorrelationQuery {
    pub fn new(base: u64, h1: u32, h2: u32, weight: Weight) -> Self {
        CorrelationQuery { base, h1, h2, weight, y1: None, y2: None }
    }

    pub fn with_limits(mut self, y1: u64, y2: u64) -> Self {
        self.y1 = Some(y1);
        self.y2 = Some(y2);
        self
    }

    fn bounds(&self, limit: u64) -> Result<Bounds> {
        check_base(self.base)?;
        if self.h1 == 0 || self.h1 >= self.h2 {
            return Err(Error::BadRange(format!(
                "need 0 < h1 < h2, got h1 = {}, h2 = {}",
                self.h1, self.h2
            )));
        }
        let b = self.base;
        let top = bounded_power(b, self.h2, "b^h2", limit)?;
        let modulus = b.pow(self.h1);
        let (lo1, lo2) = (modulus / b, top / b);
        let y1 = self.y1.unwrap_or(modulus);
        let y2 = self.y2.unwrap_or(top);
        if !(lo1..=modulus).contains(&y1) || !(lo2..=top).contains(&y2) {
            return Err(Error::BadRange("need b^(h-1) ≤ y ≤ b^h".into()));
        }
        Ok(Bounds { lo1, y1, lo2, y2, modulus })
    }

    fn tables(&self, bounds: &Bounds) -> Tables {
        match self.weight {
            Weight::PrimeIndicator => Tables::Primes(PrimeTable::new(bounds.y2.max(2))),
            Weight::VonMangoldt => Tables::Lambda(von_mangoldt_table(bounds.y2.max(2))),
        }
    }

    fn accumulate(&self, bounds: &Bounds, tables: &Tables, d1_range: std::ops::Range<u64>) -> Acc {
        let mut acc = Acc::default();
        for d1 in d1_range {
            let first = d1 + (bounds.lo2.saturating_sub(d1)).div_ceil(bounds.modulus) * bounds.modulus;
            let partners = (first..bounds.y2).step_by(bounds.modulus as usize);
            match tables {
                Tables::Primes(t) => {
                    if t.is_prime(d1) {
                        acc.count += partners.filter(|&d2| t.is_prime(d2)).count() as u64;
                    }
                }
                Tables::Lambda(t) => {
                    let w1 = t[d1 as usize];
                    if w1 > 0.0 {
                        for d2 in partners {
                            let w2 = t[d2 as usize];
                            if w2 > 0.0 {
                                acc.weighted.add(w1 * w2);
                            }
                        }
                    }
                }
            }
        }
        acc
    }

    fn finish(&self, acc: Acc) -> CorrelationValue {
        match self.weight {
            Weight::PrimeIndicator => CorrelationValue::Count(acc.count),
            Weight::VonMangoldt => CorrelationValue::Weighted(acc.weighted.value()),
        }
    }

    /// Exhaustive evaluation; requires `b^{h2}` under the scan ceiling.
    pub fn sum(&self, ceilings: &Ceilings) -> Result<CorrelationValue> {
        let bounds = self.bounds(ceilings.scan)?;
        let tables = self.tables(&bounds);
        let acc = (bounds.lo1..bounds.y1)
            .into_par_iter()
            .fold(Acc::default, |acc, d1| acc.merge(self.accumulate(&bounds, &tables, d1..d1 + 1)))
            .reduce(Acc::default, Acc::merge);
        Ok(self.finish(acc))
    }

    /// The predicted main term for the chosen weight.
    ///
    /// The prime-indicator main term covers full ranges only.
    pub fn main_term(&self) -> Result<f64> {
        let bounds = self.bounds(u64::MAX)?;
        let b = self.base as f64;
        let phi = phi_u64(self.base) as f64;
        match self.weight {
            Weight::PrimeIndicator => {
                if bounds.y1 != bounds.modulus || bounds.y2 != bounds.lo2 * self.base {
                    return Err(Error::BadRange(
                        "prime-indicator main term needs full ranges".into(),
                    ));
                }
                let lb = b.ln();
                Ok(b.powi(self.h2 as i32 + 1) / (phi * self.h1 as f64 * self.h2 as f64 * lb * lb))
            }
            Weight::VonMangoldt => {
                let span1 = (bounds.y1 - bounds.lo1) as f64;
                let span2 = (bounds.y2 - bounds.lo2) as f64;
                Ok(span1 * span2 / (phi * bounds.lo1 as f64))
            }
        }
    }
}
