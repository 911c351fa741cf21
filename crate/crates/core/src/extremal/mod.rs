//! Left-truncatable primes and irreducibles, maximal truncation counts, and
//! the Angell–Godwin length estimate.

mod chains;

pub use chains::{enumerate_chains_int, enumerate_chains_poly, ChainReport, IntChains, PolyChains};

use serde::{Deserialize, Serialize};

use crate::config::Ceilings;
use crate::error::Result;
use crate::ff::{parse, FqPoly};
use crate::int_trunc::TruncTable;
use crate::poly_trunc::PolyTruncTable;
use crate::primes::phi_u64;

/// Witness lists are cut at this length.
pub const WITNESS_CAP: usize = 100;

/// Largest truncation count over a full range and the inputs attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxScanReport {
    pub base: String,
    pub digits: u32,
    pub max: u64,
    /// Attaining inputs in increasing order, at most [`WITNESS_CAP`].
    pub witnesses: Vec<String>,
    pub witnesses_truncated: bool,
}

pub fn max_trunc_scan_int(b: u64, l: u32, ceilings: &Ceilings) -> Result<MaxScanReport> {
    let t = TruncTable::build(b, l, ceilings)?;
    let (max, w) = t.max_with_witnesses(WITNESS_CAP + 1);
    Ok(MaxScanReport {
        base: b.to_string(),
        digits: l,
        max,
        witnesses_truncated: w.len() > WITNESS_CAP,
        witnesses: w.iter().take(WITNESS_CAP).map(u64::to_string).collect(),
    })
}

pub fn max_trunc_scan_poly(
    b: &FqPoly,
    l: u32,
    strict: bool,
    ceilings: &Ceilings,
) -> Result<MaxScanReport> {
    let t = PolyTruncTable::build(b, l, strict, ceilings)?;
    let (max, w) = t.max_with_witnesses(WITNESS_CAP + 1);
    Ok(MaxScanReport {
        base: parse::spec_string(b),
        digits: l,
        max,
        witnesses_truncated: w.len() > WITNESS_CAP,
        witnesses: w.iter().take(WITNESS_CAP).map(parse::coeff_list).collect(),
    })
}

/// `b² e / (φ(b) ln b)`.
pub fn angell_godwin(b: u64) -> Result<f64> {
    crate::int_trunc::check_base(b)?;
    let bf = b as f64;
    Ok(bf * bf * std::f64::consts::E / (phi_u64(b) as f64 * bf.ln()))
}
