//! Exhaustive scans over `0 ≤ n < b^ℓ`.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Ceilings;
use crate::error::Result;
use crate::exact::{Histogram, Moments, Rational};
use crate::primes::{phi_u64, PrimeTable};
use crate::report::{self, Prediction, Predictions};

use super::predict::{avg_identity, avg_predicted, var_predicted, MeanRegime, VarianceRegime};
use super::{bounded_power, check_base};

const CHUNK: usize = 1 << 14;

/// `Trun(n)` for every `n < b^ℓ`.
///
/// Built level by level from `Trun(n) = Trun(n mod b^{k−1}) + 𝟙_ℙ(n)` for
/// `n` with exactly `k` digits.
#[derive(Debug, Clone)]
pub struct TruncTable {
    base: u64,
    digits: u32,
    counts: Vec<u8>,
}

impl TruncTable {
    pub fn build(b: u64, l: u32, ceilings: &Ceilings) -> Result<Self> {
        check_base(b)?;
        let size = bounded_power(b, l, "b^ℓ", ceilings.scan)?;
        let primes = PrimeTable::new(size);
        let mut counts = vec![0u8; size as usize];
        let mut lo = 1u64;
        for _ in 0..l {
            let hi = lo * b;
            let (lower, upper) = counts.split_at_mut(lo as usize);
            upper[..(hi - lo) as usize]
                .par_chunks_mut(CHUNK)
                .enumerate()
                .for_each(|(c, chunk)| {
                    let start = lo + (c * CHUNK) as u64;
                    for (i, slot) in chunk.iter_mut().enumerate() {
                        let n = start + i as u64;
                        *slot = lower[(n % lo) as usize] + u8::from(primes.is_prime(n));
                    }
                });
            lo = hi;
        }
        Ok(TruncTable { base: b, digits: l, counts })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn population(&self) -> u64 {
        self.counts.len() as u64
    }

    pub fn count(&self, n: u64) -> u64 {
        self.counts[n as usize] as u64
    }

    fn fold<F>(&self, keep: F) -> (Moments, Histogram)
    where
        F: Fn(u64) -> bool + Sync,
    {
        self.counts
            .par_chunks(CHUNK)
            .enumerate()
            .map(|(c, chunk)| {
                let mut m = Moments::default();
                let mut h = Histogram::default();
                for (i, &x) in chunk.iter().enumerate() {
                    if keep((c * CHUNK + i) as u64) {
                        m.push(x as u64);
                        h.push(x as usize);
                    }
                }
                (m, h)
            })
            .reduce(
                || (Moments::default(), Histogram::default()),
                |(m1, h1), (m2, h2)| (m1.merge(m2), h1.merge(h2)),
            )
    }

    pub fn moments(&self) -> (Moments, Histogram) {
        self.fold(|_| true)
    }

    /// Moments over `n` with `gcd(n, b) = 1`.
    pub fn restricted_moments(&self) -> (Moments, Histogram) {
        let b = self.base;
        let coprime: Vec<bool> = (0..b).map(|r| r.gcd(&b) == 1).collect();
        self.fold(move |n| coprime[(n % b) as usize])
    }

    /// Largest count and the first `cap` values attaining it, ascending.
    pub fn max_with_witnesses(&self, cap: usize) -> (u64, Vec<u64>) {
        let max = self.counts.par_iter().copied().max().unwrap_or(0);
        let witnesses = self
            .counts
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == max)
            .map(|(n, _)| n as u64)
            .take(cap)
            .collect();
        (max as u64, witnesses)
    }
}

/// Exact mean and variance of the truncation count over a scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntStatReport {
    pub base: u64,
    pub digits: u32,
    pub population: u64,
    #[serde(with = "report::rational")]
    pub mean: Rational,
    #[serde(with = "report::rational")]
    pub second_moment: Rational,
    #[serde(with = "report::rational")]
    pub variance: Rational,
    pub max: u64,
    /// `histogram[k]` = number of scanned `n` with exactly `k` prime truncations.
    pub histogram: Vec<u64>,
    pub predicted_mean: Predictions,
    pub predicted_variance: Predictions,
    pub restricted: Option<Box<IntStatReport>>,
}

impl IntStatReport {
    fn from_moments(b: u64, l: u32, population: u64, m: &Moments, h: Histogram) -> Self {
        IntStatReport {
            base: b,
            digits: l,
            population,
            mean: m.mean_over(population),
            second_moment: m.second_moment_over(population),
            variance: m.variance_over(population),
            max: h.0.len().saturating_sub(1) as u64,
            histogram: h.0,
            predicted_mean: Predictions::new(),
            predicted_variance: Predictions::new(),
            restricted: None,
        }
    }

    /// Check the report's internal invariants.
    pub fn validate(&self) -> std::result::Result<(), String> {
        use num_traits::Signed;
        if self.variance.is_negative() {
            return Err("negative variance".into());
        }
        if self.variance != &self.second_moment - &self.mean * &self.mean {
            return Err("variance differs from second moment minus squared mean".into());
        }
        if self.histogram.iter().sum::<u64>() != self.population {
            return Err("histogram does not sum to the population".into());
        }
        let sum: u64 = self.histogram.iter().enumerate().map(|(k, &c)| k as u64 * c).sum();
        if self.mean != Rational::new(sum.into(), self.population.into()) {
            return Err("mean disagrees with the histogram".into());
        }
        if let Some(r) = &self.restricted {
            let expected = phi_u64(self.base) * self.base.pow(self.digits.saturating_sub(1));
            if r.population != expected {
                return Err("restricted population is not φ(b)·b^(ℓ−1)".into());
            }
            r.validate()?;
        }
        Ok(())
    }
}

pub fn avg_bruteforce(b: u64, l: u32, ceilings: &Ceilings) -> Result<Rational> {
    let t = TruncTable::build(b, l, ceilings)?;
    Ok(t.moments().0.mean_over(t.population()))
}

pub fn var_bruteforce(b: u64, l: u32, ceilings: &Ceilings) -> Result<Rational> {
    let t = TruncTable::build(b, l, ceilings)?;
    Ok(t.moments().0.variance_over(t.population()))
}

/// Statistics over `n < b^ℓ` with `gcd(n, b) = 1`.
pub fn restricted_stats(b: u64, l: u32, ceilings: &Ceilings) -> Result<IntStatReport> {
    let t = TruncTable::build(b, l, ceilings)?;
    Ok(restricted_from_table(&t))
}

fn restricted_from_table(t: &TruncTable) -> IntStatReport {
    let (m, h) = t.restricted_moments();
    IntStatReport::from_moments(t.base(), t.digits(), m.count, &m, h)
}

/// Full report: scan statistics, restricted sub-report and predictions.
pub fn int_stat_report(b: u64, l: u32, ceilings: &Ceilings) -> Result<IntStatReport> {
    let t = TruncTable::build(b, l, ceilings)?;
    let (m, h) = t.moments();
    let mut r = IntStatReport::from_moments(b, l, t.population(), &m, h);
    r.restricted = Some(Box::new(restricted_from_table(&t)));

    r.predicted_mean
        .insert("exact_identity".into(), Prediction::Exact(avg_identity(b, l, ceilings)?));
    for (label, regime) in [
        ("large_base", MeanRegime::LargeBase),
        ("large_length", MeanRegime::LargeLength),
    ] {
        r.predicted_mean
            .insert(label.into(), Prediction::Approx(avg_predicted(b, l, regime)));
    }
    for (label, regime) in [
        ("large_base_grh", VarianceRegime::LargeBaseGrh),
        ("large_length_conjecture", VarianceRegime::LargeLength),
    ] {
        r.predicted_variance
            .insert(label.into(), Prediction::Approx(var_predicted(b, l, regime)?));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{from_int, ratio};
    use crate::int_trunc::trunc_count;
    use crate::primes::BigNat;

    fn ceil() -> Ceilings {
        Ceilings::default()
    }

    /// Independent per-n counts through the big-integer truncation path.
    fn oracle_counts(b: u64, l: u32) -> Vec<u64> {
        (0..b.pow(l))
            .map(|n| if n == 0 { 0 } else { trunc_count(&BigNat::from(n), b).unwrap() })
            .collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(avg_bruteforce(10, 1, &ceil()).unwrap(), ratio(4, 10));
        assert_eq!(avg_bruteforce(10, 2, &ceil()).unwrap(), ratio(61, 100));
        assert_eq!(avg_bruteforce(2, 1, &ceil()).unwrap(), from_int(0));
        assert_eq!(var_bruteforce(10, 1, &ceil()).unwrap(), ratio(6, 25));
        assert_eq!(var_bruteforce(2, 1, &ceil()).unwrap(), from_int(0));
        let r = restricted_stats(10, 1, &ceil()).unwrap();
        assert_eq!((r.population, r.mean.clone()), (4, ratio(1, 2)));
        let r = restricted_stats(2, 1, &ceil()).unwrap();
        assert_eq!((r.population, r.mean.clone()), (1, from_int(0)));
    }

    #[test]
    fn table_matches_oracle() {
        for (b, l) in [(10, 4), (2, 12), (3, 7), (7, 4), (16, 3)] {
            let t = TruncTable::build(b, l, &ceil()).unwrap();
            let oracle = oracle_counts(b, l);
            for (n, &c) in oracle.iter().enumerate() {
                assert_eq!(t.count(n as u64), c, "b={b} n={n}");
            }
        }
    }

    #[test]
    fn variance_two_pass_oracle() {
        for (b, l) in [(10, 2), (10, 3), (6, 4), (3, 6)] {
            let xs = oracle_counts(b, l);
            let n = xs.len() as i64;
            let mean = ratio(xs.iter().sum::<u64>() as i64, n);
            let var = xs
                .iter()
                .map(|&x| {
                    let d = from_int(x as i64) - &mean;
                    &d * &d
                })
                .fold(from_int(0), |a, x| a + x)
                / from_int(n);
            assert_eq!(var_bruteforce(b, l, &ceil()).unwrap(), var);
        }
    }

    #[test]
    fn restricted_oracle() {
        let (b, l) = (10u64, 2u32);
        let xs: Vec<u64> = oracle_counts(b, l)
            .into_iter()
            .enumerate()
            .filter(|&(n, _)| (n as u64).gcd(&b) == 1)
            .map(|(_, x)| x)
            .collect();
        assert_eq!(xs.len(), 40);
        let r = restricted_stats(b, l, &ceil()).unwrap();
        assert_eq!(r.population, 40);
        assert_eq!(r.mean, ratio(xs.iter().sum::<u64>() as i64, 40));
        let sq: u64 = xs.iter().map(|x| x * x).sum();
        assert_eq!(r.second_moment, ratio(sq as i64, 40));
    }

    #[test]
    fn report_validates_and_round_trips() {
        let r = int_stat_report(10, 3, &ceil()).unwrap();
        r.validate().unwrap();
        assert_eq!(r.predicted_mean["exact_identity"], Prediction::Exact(r.mean.clone()));
        let json = serde_json::to_string(&r).unwrap();
        let back: IntStatReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        back.validate().unwrap();
    }

    #[test]
    fn ceiling_enforced() {
        let small = Ceilings::default().with_scan(999);
        assert!(matches!(
            avg_bruteforce(10, 3, &small),
            Err(crate::error::Error::CeilingExceeded { .. })
        ));
        assert!(avg_bruteforce(10, 3, &Ceilings::default().with_scan(1000)).is_ok());
        assert!(avg_bruteforce(u64::MAX, 3, &ceil()).is_err());
    }

    #[test]
    fn max_and_witnesses() {
        let t = TruncTable::build(10, 2, &ceil()).unwrap();
        let (max, w) = t.max_with_witnesses(100);
        assert_eq!(max, 2);
        assert!(w.contains(&13));
        assert!(w.windows(2).all(|p| p[0] < p[1]));
    }
}
