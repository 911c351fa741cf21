//! Trial-division factorization and the multiplicative functions built on it.

use crate::config::Ceilings;
use crate::error::{Error, Result};

use super::bignat::BigNat;

/// Prime factorization `[(p, e)]` of `n ≥ 1`, primes ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn checked_u64(n: &BigNat, limit: u64) -> Result<u64> {
    match n.to_u64() {
        Some(v) if v <= limit => Ok(v),
        _ => Err(Error::FactorTooLarge(n.to_string())),
    }
}

/// Euler's totient of a machine-word integer; `phi(0) = 0`.
pub fn phi_u64(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Euler's totient within the default factoring range.
pub fn euler_phi(b: &BigNat) -> Result<BigNat> {
    euler_phi_with(b, Ceilings::default().factor)
}

pub fn euler_phi_with(b: &BigNat, factor_limit: u64) -> Result<BigNat> {
    if b.is_zero() {
        return Err(Error::BadRange("totient of 0".into()));
    }
    Ok(BigNat::from(phi_u64(checked_u64(b, factor_limit)?)))
}

/// `Λ(n)` for a machine-word integer: `ln p` on prime powers, else 0.
pub fn von_mangoldt_u64(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    match factor_u64(n).as_slice() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    }
}

/// Von Mangoldt function within the default factoring range.
pub fn von_mangoldt(n: &BigNat) -> Result<f64> {
    von_mangoldt_with(n, Ceilings::default().factor)
}

pub fn von_mangoldt_with(n: &BigNat, factor_limit: u64) -> Result<f64> {
    if n.is_zero() {
        return Err(Error::BadRange("von Mangoldt of 0".into()));
    }
    Ok(von_mangoldt_u64(checked_u64(n, factor_limit)?))
}

/// Table of `Λ(n)` for `n < limit`, built by marking prime powers.
pub fn von_mangoldt_table(limit: u64) -> Vec<f64> {
    let table = super::sieve::PrimeTable::new(limit);
    let mut out = vec![0.0; limit as usize];
    for p in table.primes() {
        let lp = (p as f64).ln();
        let mut pk = p;
        loop {
            out[pk as usize] = lp;
            match pk.checked_mul(p) {
                Some(next) if next < limit => pk = next,
                _ => break,
            }
        }
    }
    out
}
