//! Exact Poisson-binomial distribution and the identities built on it.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, Rational};
use crate::report::Prediction;

use super::ModelParams;

/// Coefficients of `Π (c0_i + c1_i x) / den_i`, over one common denominator.
fn product(factors: impl Iterator<Item = (BigInt, BigInt, BigInt)>) -> Vec<Rational> {
    let mut coeffs = vec![BigInt::one()];
    let mut den = BigInt::one();
    for (c0, c1, d) in factors {
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c * &c0;
            next[i + 1] += c * &c1;
        }
        coeffs = next;
        den *= d;
    }
    coeffs.into_iter().map(|c| Rational::new(c, den.clone())).collect()
}

/// Distribution of the model count and its binomial moments.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbTable {
    /// `distribution[k] = P(count = k)`.
    pub distribution: Vec<Rational>,
    /// `binomial_moments[h] = E[C(count, h)]`, the `h`-th elementary
    /// symmetric polynomial of the position probabilities.
    pub binomial_moments: Vec<Rational>,
}

/// One exact distribution entry, in the report layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistEntry {
    pub k: u32,
    pub p_num: String,
    pub p_den: String,
}

/// Both tables, each from its own product over the positions.
pub fn exact_distribution(params: &ModelParams) -> ProbTable {
    let distribution = product(params.probs.iter().map(|p| {
        let (n, d) = (p.numer().clone(), p.denom().clone());
        (&d - &n, n, d)
    }));
    let binomial_moments = product(params.probs.iter().map(|p| {
        let (n, d) = (p.numer().clone(), p.denom().clone());
        (d.clone(), n, d)
    }));
    ProbTable { distribution, binomial_moments }
}

impl ProbTable {
    pub fn digits(&self) -> u32 {
        self.distribution.len() as u32 - 1
    }

    /// `P(count ≥ k)` from the distribution.
    pub fn tail(&self, k: u32) -> Rational {
        self.distribution.iter().skip(k as usize).fold(Rational::zero(), |a, p| a + p)
    }

    /// `P(count ≥ k)` from the binomial moments by inclusion–exclusion.
    pub fn tail_inclusion_exclusion(&self, k: u32) -> Rational {
        if k == 0 {
            return Rational::one();
        }
        let mut total = Rational::zero();
        for h in k..=self.digits() {
            let c = Rational::from_integer(binomial(h as u64 - 1, k as u64 - 1).into());
            let term = c * &self.binomial_moments[h as usize];
            if (h - k) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    pub fn entries(&self) -> Vec<DistEntry> {
        self.distribution
            .iter()
            .enumerate()
            .map(|(k, p)| DistEntry {
                k: k as u32,
                p_num: p.numer().to_string(),
                p_den: p.denom().to_string(),
            })
            .collect()
    }
}

/// Elementary symmetric sums `e_0..e_{ℓ−1}` of `{1/d : 1 ≤ d < ℓ}`,
/// the coefficients of `Π (1 + x/d)`.
pub fn sym_sums(l: u32) -> Vec<Rational> {
    product((1..l).map(|d| (BigInt::from(d), BigInt::one(), BigInt::from(d))))
}

/// `ω^h e_h + p_ℓ ω^{h−1} e_{h−1}`, split on whether the top position is used.
pub fn p1_analytic_exact(params: &ModelParams, h: u32) -> Result<Rational> {
    let l = params.digits();
    if h == 0 || h > l {
        return Err(Error::BadRange(format!("need 1 ≤ h ≤ ℓ = {l}, got {h}")));
    }
    let e = sym_sums(l);
    let w = &params.omega;
    let pow = |k: u32| (0..k).fold(Rational::one(), |a, _| a * w);
    let first = e.get(h as usize).map_or(Rational::zero(), |x| pow(h) * x);
    let top = params.probs.last().unwrap();
    Ok(first + top * pow(h - 1) * &e[h as usize - 1])
}

pub fn p1_analytic(params: &ModelParams, h: u32) -> Result<f64> {
    Ok(crate::exact::to_f64(&p1_analytic_exact(params, h)?))
}

/// `ℓ^{−ω}(ω ln ℓ)^k / k!`, in the log domain.
pub fn tail_approx(params: &ModelParams, k: u32) -> f64 {
    let w = params.kind.omega();
    let ln_l = (params.digits() as f64).ln();
    let ln_fact: f64 = (2..=k).map(|i| (i as f64).ln()).sum();
    if k == 0 {
        return (-w * ln_l).exp();
    }
    (-w * ln_l + k as f64 * (w * ln_l).ln() - ln_fact).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbMethod {
    ExactDp,
    InclusionExclusion,
    TailApprox,
}

/// `P(count ≥ k)`.
pub fn p_at_least(params: &ModelParams, k: u32, method: ProbMethod) -> Result<Prediction> {
    let l = params.digits();
    if k > l {
        return Err(Error::BadRange(format!("need 0 ≤ k ≤ ℓ = {l}, got {k}")));
    }
    Ok(match method {
        ProbMethod::ExactDp => Prediction::Exact(exact_distribution(params).tail(k)),
        ProbMethod::InclusionExclusion => {
            Prediction::Exact(exact_distribution(params).tail_inclusion_exclusion(k))
        }
        ProbMethod::TailApprox => Prediction::Approx(tail_approx(params, k)),
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cramer::ModelKind;
    use crate::exact::{ratio, to_f64};
    use proptest::prelude::*;

    fn int(b: u64, l: u32) -> ModelParams {
        ModelParams::new(ModelKind::Int { base: b, digits: l }).unwrap()
    }

    #[test]
    fn examples() {
        let p = int(10, 1);
        let t = exact_distribution(&p);
        assert_eq!(t.distribution[1], p.probs[0]);
        assert_eq!(t.distribution[0], Rational::one() - &p.probs[0]);
        let p = int(10, 2);
        let t = exact_distribution(&p);
        assert_eq!(t.distribution[2], &p.probs[0] * &p.probs[1]);
        let ln10 = 10f64.ln();
        assert!((to_f64(&t.distribution[2]) - 0.9 / ln10 / (2.0 * ln10)).abs() < 1e-15);
        for k in 0..=2 {
            assert_eq!(
                p_at_least(&p, k, ProbMethod::ExactDp).unwrap(),
                p_at_least(&p, k, ProbMethod::InclusionExclusion).unwrap()
            );
        }
        assert_eq!(p_at_least(&p, 0, ProbMethod::ExactDp).unwrap(), Prediction::Exact(Rational::one()));
        assert!(p_at_least(&p, 3, ProbMethod::ExactDp).is_err());
    }

    #[test]
    fn sym_sum_examples() {
        let e = sym_sums(3);
        assert_eq!(e, vec![Rational::one(), ratio(3, 2), ratio(1, 2)]);
        assert_eq!(sym_sums(1), vec![Rational::one()]);
    }

    #[test]
    fn sym_sums_match_subsets() {
        for l in 1..=10u32 {
            let n = (l - 1) as usize;
            let mut want = vec![Rational::zero(); n + 1];
            for mask in 0u32..(1 << n) {
                let prod = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(Rational::one(), |a, i| a * ratio(1, i as i64 + 1));
                want[mask.count_ones() as usize] += prod;
            }
            assert_eq!(sym_sums(l), want);
        }
    }

    #[test]
    fn sym_sums_are_gamma_ratio_coefficients() {
        // Γ(ℓ+x)/(Γ(ℓ)Γ(1+x)) = Π_{d<ℓ} (d + x)/d; compare with a float
        // evaluation at several points.
        for l in [5u32, 12, 30] {
            let e = sym_sums(l);
            for x in [0.25f64, -0.4, 0.9] {
                let poly: f64 = e.iter().rev().fold(0.0, |a, c| a * x + to_f64(c));
                let gamma: f64 = (1..l).map(|d| (d as f64 + x) / d as f64).product();
                assert!((poly - gamma).abs() < 1e-12 * gamma.abs());
            }
        }
    }

    #[test]
    fn p1_matches_moments() {
        for (b, l) in [(10u64, 2u32), (10, 7), (3, 5), (50, 12)] {
            let p = int(b, l);
            let t = exact_distribution(&p);
            for h in 1..=l {
                assert_eq!(p1_analytic_exact(&p, h).unwrap(), t.binomial_moments[h as usize]);
            }
        }
        let p = ModelParams::new(ModelKind::Poly { q: 4, m: 2, digits: 6 }).unwrap();
        let t = exact_distribution(&p);
        for h in 1..=6 {
            assert_eq!(p1_analytic_exact(&p, h).unwrap(), t.binomial_moments[h as usize]);
        }
        // h = 2 at (10, 2): only the top-position term survives.
        let p = int(10, 2);
        let want = p.probs[1].clone() * &p.omega;
        assert_eq!(p1_analytic_exact(&p, 2).unwrap(), want);
        assert!(p1_analytic(&p, 0).is_err());
    }

    #[test]
    fn tail_approx_formula() {
        let p = int(10, 100);
        let w = 0.9 / 10f64.ln();
        let fact: f64 = (1..=10).map(|i| i as f64).product();
        let want = 100f64.powf(-w) * (w * 100f64.ln()).powi(10) / fact;
        assert!((tail_approx(&p, 10) - want).abs() < 1e-13 * want);
        assert!((w - 0.3909).abs() < 1e-4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn identities(b in 3u64..60, l in 1u32..40) {
            let p = int(b, l);
            let t = exact_distribution(&p);
            let total = t.distribution.iter().fold(Rational::zero(), |a, x| a + x);
            prop_assert_eq!(total, Rational::one());
            for h in 0..=l {
                let m = t.distribution.iter().enumerate().fold(Rational::zero(), |a, (k, x)| {
                    a + Rational::from_integer(binomial(k as u64, h as u64).into()) * x
                });
                prop_assert_eq!(&m, &t.binomial_moments[h as usize]);
            }
            for k in 0..=l {
                prop_assert_eq!(t.tail(k), t.tail_inclusion_exclusion(k));
            }
        }
    }
}
