//! Segmented sieve of Eratosthenes over odd numbers.
//!
//! Segments hold 2^20 odd candidates. Base primes up to 2^16 are built once
//! and shared; larger sieving ranges extend them on demand.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const SEGMENT_ODDS: usize = 1 << 20;
const SHARED_BASE_LIMIT: u64 = 1 << 16;

fn simple_sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn base_primes(hi: u64) -> std::borrow::Cow<'static, [u64]> {
    static SHARED: OnceLock<Vec<u64>> = OnceLock::new();
    let need = hi.isqrt() + 1;
    if need <= SHARED_BASE_LIMIT {
        std::borrow::Cow::Borrowed(SHARED.get_or_init(|| simple_sieve(SHARED_BASE_LIMIT)).as_slice())
    } else {
        std::borrow::Cow::Owned(simple_sieve(need))
    }
}

/// Visit every odd number in `[1, hi)` segment by segment. The callback gets
/// the first odd value of the segment and a primality flag per odd value.
fn for_each_segment(hi: u64, mut visit: impl FnMut(u64, &[bool])) {
    if hi <= 1 {
        return;
    }
    let odd_primes: Vec<u64> = base_primes(hi).iter().copied().filter(|&p| p > 2).collect();
    let mut flags = vec![true; SEGMENT_ODDS];
    let mut lo = 1u64;
    while lo < hi {
        let len = (((hi - lo) + 1) / 2).min(SEGMENT_ODDS as u64) as usize;
        let seg = &mut flags[..len];
        seg.fill(true);
        let seg_hi = lo + 2 * len as u64;
        for &p in &odd_primes {
            if p * p >= seg_hi {
                break;
            }
            // First odd multiple of p that is ≥ max(p², lo).
            let mut start = (p * p).max(lo.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut i = ((start - lo) / 2) as usize;
            while i < len {
                seg[i] = false;
                i += p as usize;
            }
        }
        if lo == 1 {
            seg[0] = false;
        }
        visit(lo, seg);
        lo = seg_hi;
    }
}

/// Exact prime counting up to a configured ceiling.
#[derive(Debug, Clone, Copy)]
pub struct PrimeCounter {
    ceiling: u64,
}

impl PrimeCounter {
    pub fn new(ceiling: u64) -> Self {
        PrimeCounter { ceiling }
    }

    fn check(&self, x: u64) -> Result<()> {
        if x > self.ceiling {
            return Err(Error::ceiling("prime-count argument", x, self.ceiling));
        }
        Ok(())
    }

    /// π(x): the number of primes `p ≤ x`.
    pub fn count(&self, x: u64) -> Result<u64> {
        self.check(x)?;
        Ok(self.count_below_many(&[x.saturating_add(1)])?[0])
    }

    /// Number of primes `p < x`.
    pub fn count_below(&self, x: u64) -> Result<u64> {
        Ok(self.count_below_many(&[x])?[0])
    }

    /// `#{p < x}` for every threshold, from a single sieving pass.
    pub fn count_below_many(&self, thresholds: &[u64]) -> Result<Vec<u64>> {
        let hi = thresholds.iter().copied().max().unwrap_or(0);
        self.check(hi.saturating_sub(1))?;
        let mut order: Vec<usize> = (0..thresholds.len()).collect();
        order.sort_by_key(|&i| thresholds[i]);
        let mut out = vec![0u64; thresholds.len()];
        let mut next = 0usize;
        let mut running = 0u64; // odd primes seen so far
        let with_two = |x: u64, odd: u64| odd + u64::from(x > 2);

        while next < order.len() && thresholds[order[next]] <= 1 {
            next += 1;
        }
        for_each_segment(hi, |lo, seg| {
            let seg_hi = lo + 2 * seg.len() as u64;
            while next < order.len() && thresholds[order[next]] <= seg_hi {
                let x = thresholds[order[next]];
                let upto = ((x - lo).div_ceil(2)) as usize;
                let partial = seg[..upto.min(seg.len())].iter().filter(|&&f| f).count() as u64;
                out[order[next]] = with_two(x, running + partial);
                next += 1;
            }
            running += seg.iter().filter(|&&f| f).count() as u64;
        });
        Ok(out)
    }
}

impl Default for PrimeCounter {
    fn default() -> Self {
        PrimeCounter::new(crate::config::Ceilings::default().sieve)
    }
}

/// Primality lookup table for every `n < limit`, one bit per integer.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    bits: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        let mut bits = vec![0u64; (limit as usize).div_ceil(64)];
        if limit > 2 {
            bits[0] |= 1 << 2;
        }
        for_each_segment(limit, |lo, seg| {
            for (i, &prime) in seg.iter().enumerate() {
                if prime {
                    let n = lo + 2 * i as u64;
                    if n < limit {
                        bits[(n / 64) as usize] |= 1 << (n % 64);
                    }
                }
            }
        });
        PrimeTable { limit, bits }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Panics when `n` is outside the table.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n < self.limit, "{n} outside prime table of size {}", self.limit);
        self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.limit).filter(|&n| self.is_prime(n))
    }
}
