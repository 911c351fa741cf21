//! Exact statistics of prime and irreducible truncations.

pub mod config;
pub mod cramer;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod ff;
pub mod int_trunc;
pub mod poly_trunc;
pub mod primes;
pub mod report;

pub use config::Ceilings;
pub use error::{Error, Result};
