//! Primality testing.
//!
//! Below 3 317 044 064 679 887 385 961 981 the strong-pseudoprime test to the
//! thirteen prime bases 2..41 has no false positives, so verdicts there are
//! proven. Above that bound the test is Baillie–PSW (strong base 2 plus strong
//! Lucas with Selfridge parameters), which has no known counterexample but is
//! reported as `ProbablePrime`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use super::bignat::BigNat;

pub const STRONG_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Proven bound for the thirteen-base strong test.
pub const DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

const TRIAL_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Prime,
    Composite,
    ProbablePrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    TrialDivision,
    DeterministicStrongTest,
    ProbabilisticTest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityResult {
    pub verdict: Verdict,
    pub method: Method,
}

impl PrimalityResult {
    /// True for `Prime` and `ProbablePrime`.
    pub fn is_prime(&self) -> bool {
        !matches!(self.verdict, Verdict::Composite)
    }
}

fn small_primes() -> &'static [u64] {
    static SMALL: OnceLock<Vec<u64>> = OnceLock::new();
    SMALL.get_or_init(|| {
        let limit = 1024usize;
        let mut composite = vec![false; limit];
        let mut out = Vec::new();
        for i in 2..limit {
            if !composite[i] {
                out.push(i as u64);
                (i * i..limit).step_by(i).for_each(|j| composite[j] = true);
            }
        }
        out
    })
}

fn trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn strong_probable_prime_big(n: &BigUint, a: u64) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = BigUint::from(a).modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Fast verdict for machine-word inputs; exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in small_primes().iter().take(54) {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 254 * 254 {
        return true;
    }
    STRONG_BASES.iter().all(|&a| strong_probable_prime_u64(n, a))
}

/// Jacobi symbol (a / n) for odd positive n.
fn jacobi(a: i64, n: &BigUint) -> i32 {
    let mut a = if a >= 0 {
        BigUint::from(a as u64) % n
    } else {
        let r = BigUint::from(a.unsigned_abs()) % n;
        if r.is_zero() { r } else { n - r }
    };
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n_mod_8 = (&n % 8u32).to_u32().unwrap();
        if tz % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() { result } else { 0 }
}

fn half_mod(x: BigUint, n: &BigUint) -> BigUint {
    if x.is_odd() { (x + n) >> 1 } else { x >> 1 }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
fn strong_lucas(n: &BigUint) -> bool {
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    let mut d: i64 = 5;
    loop {
        match jacobi(d, n) {
            -1 => break,
            0 => {
                if BigUint::from(d.unsigned_abs()) != *n {
                    return false;
                }
            }
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let to_mod = |v: i64| -> BigUint {
        let r = BigUint::from(v.unsigned_abs()) % n;
        if v < 0 && !r.is_zero() { n - r } else { r }
    };
    let p = BigUint::one();
    let q = to_mod((1 - d) / 4);
    let dm = to_mod(d);
    let two = BigUint::from(2u32);

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k = &n_plus_1 >> s;

    let mut u = BigUint::one();
    let mut v = p.clone();
    let mut qk = q.clone();
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = &u * &v % n;
        v = (&v * &v + n * &two - (&qk * &two) % n) % n;
        qk = &qk * &qk % n;
        if k.bit(i) {
            let nu = half_mod((&p * &u + &v) % n, n);
            let nv = half_mod((&dm * &u + &p * &v) % n, n);
            u = nu;
            v = nv;
            qk = &qk * &q % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v + n * &two - (&qk * &two) % n) % n;
        if v.is_zero() {
            return true;
        }
        qk = &qk * &qk % n;
    }
    false
}

/// Primality verdict for an arbitrary-precision input.
pub fn is_prime(n: &BigNat) -> PrimalityResult {
    let trial = |verdict: bool| PrimalityResult {
        verdict: if verdict { Verdict::Prime } else { Verdict::Composite },
        method: Method::TrialDivision,
    };
    if let Some(small) = n.to_u64() {
        if small < TRIAL_LIMIT {
            return trial(trial_division(small));
        }
        if small_primes().iter().any(|&p| small % p == 0) {
            return trial(false);
        }
        return PrimalityResult {
            verdict: if is_prime_u64(small) { Verdict::Prime } else { Verdict::Composite },
            method: Method::DeterministicStrongTest,
        };
    }
    let big = n.as_biguint();
    if small_primes().iter().any(|&p| (big % p).is_zero()) {
        return trial(false);
    }
    let below_bound = n.to_u128().is_some_and(|v| v < DETERMINISTIC_LIMIT);
    if below_bound {
        let prime = STRONG_BASES.iter().all(|&a| strong_probable_prime_big(big, a));
        PrimalityResult {
            verdict: if prime { Verdict::Prime } else { Verdict::Composite },
            method: Method::DeterministicStrongTest,
        }
    } else {
        let prime = strong_probable_prime_big(big, 2) && strong_lucas(big);
        PrimalityResult {
            verdict: if prime { Verdict::ProbablePrime } else { Verdict::Composite },
            method: Method::ProbabilisticTest,
        }
    }
}
