//! Sampling the model count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report;

use super::ModelParams;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub samples: u64,
    pub seed: u64,
    /// `counts[k]` = samples with count `k`.
    pub counts: Vec<u64>,
    #[serde(with = "report::float_vec")]
    pub frequencies: Vec<f64>,
    /// `sqrt(f(1 − f)/n)` for each frequency.
    #[serde(with = "report::float_vec")]
    pub standard_errors: Vec<f64>,
    #[serde(with = "report::float")]
    pub mean: f64,
    #[serde(with = "report::float")]
    pub mean_standard_error: f64,
}

/// Draw `samples` model counts.
///
/// Sample `i` uses ChaCha8 stream `i` of `seed`, so the output depends only
/// on `(params, samples, seed)`.
pub fn monte_carlo(params: &ModelParams, samples: u64, seed: u64) -> MonteCarloReport {
    let probs = params.probs_f64();
    let l = probs.len();
    let base = ChaCha8Rng::seed_from_u64(seed);
    let counts = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut counts = vec![0u64; l + 1];
            for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let mut rng = base.clone();
                rng.set_stream(i);
                let k = probs.iter().filter(|&&p| rng.random::<f64>() < p).count();
                counts[k] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; l + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let n = samples.max(1) as f64;
    let frequencies: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    let standard_errors = frequencies.iter().map(|&f| (f * (1.0 - f) / n).sqrt()).collect();
    let mean = counts.iter().enumerate().map(|(k, &c)| k as f64 * c as f64).sum::<f64>() / n;
    let second = counts.iter().enumerate().map(|(k, &c)| (k * k) as f64 * c as f64).sum::<f64>() / n;
    MonteCarloReport {
        samples,
        seed,
        counts,
        frequencies,
        standard_errors,
        mean,
        mean_standard_error: ((second - mean * mean).max(0.0) / n).sqrt(),
    }
}
