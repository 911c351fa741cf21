//! Integer substrate: big naturals, primality, prime counting, φ and Λ.

pub mod arith;
pub mod bignat;
pub mod primality;
pub mod sieve;

pub use arith::{euler_phi, factor_u64, phi_u64, von_mangoldt, von_mangoldt_table, von_mangoldt_u64};
pub use bignat::BigNat;
pub use primality::{is_prime, is_prime_u64, Method, PrimalityResult, Verdict};
pub use sieve::{PrimeCounter, PrimeTable};

/// π(x) = #{p ≤ x} under the default sieve ceiling.
pub fn prime_count(x: &BigNat) -> crate::error::Result<u64> {
    let counter = PrimeCounter::default();
    match x.to_u64() {
        Some(v) => counter.count(v),
        None => Err(crate::error::Error::ceiling(
            "prime-count argument",
            x,
            crate::config::Ceilings::default().sieve,
        )),
    }
}
