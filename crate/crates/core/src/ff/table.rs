//! Index encoding, exhaustive enumeration and sieved lookup tables.
//!
//! A polynomial `Σ c_i T^i` is identified with the integer `Σ enc(c_i) q^i`,
//! so the polynomials of degree `< D` are exactly the indices `0..q^D` and
//! the monic ones of degree `d` are `q^d..2q^d`.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::field::{FieldSpec, FqElem};
use super::poly::FqPoly;

/// Exact degree, or all degrees below a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyRange {
    Exact(usize),
    Below(usize),
}

pub fn encode(field: &FieldSpec, coeffs: &[FqElem]) -> u64 {
    let q = field.order() as u64;
    coeffs.iter().rev().fold(0, |acc, c| acc * q + c.0 as u64)
}

/// Exactly `len` coefficients of the polynomial with index `idx`.
pub fn decode(field: &FieldSpec, mut idx: u64, len: usize) -> Vec<FqElem> {
    let q = field.order() as u64;
    (0..len)
        .map(|_| {
            let c = FqElem((idx % q) as u32);
            idx /= q;
            c
        })
        .collect()
}

pub fn from_index(field: &FieldSpec, idx: u64) -> FqPoly {
    let q = field.order() as u64;
    let mut len = 0;
    let mut v = idx;
    while v > 0 {
        v /= q;
        len += 1;
    }
    FqPoly::new(field, decode(field, idx, len))
}

/// Index of `f`, which must fit in a `u64`.
pub fn index_of(f: &FqPoly) -> u64 {
    encode(f.field(), f.coeffs())
}

/// `q^e` if it is at most `limit`.
pub(crate) fn bounded_order_power(q: u64, e: usize, what: &'static str, limit: u64) -> Result<u64> {
    match q.checked_pow(e as u32) {
        Some(v) if v <= limit => Ok(v),
        Some(v) => Err(Error::ceiling(what, v, limit)),
        None => Err(Error::ceiling(what, format!("{q}^{e}"), limit)),
    }
}

/// Every polynomial in the range exactly once, in index order.
pub fn enumerate_polys(
    field: &FieldSpec,
    range: PolyRange,
    limit: u64,
) -> Result<impl Iterator<Item = FqPoly> + '_> {
    let q = field.order() as u64;
    let (lo, hi) = match range {
        PolyRange::Exact(d) => (q.pow(d as u32), bounded_order_power(q, d + 1, "q^(d+1)", limit)?),
        PolyRange::Below(d) => (0, bounded_order_power(q, d, "q^D", limit)?),
    };
    Ok((lo..hi).map(move |i| from_index(field, i)))
}

struct AtomicBits(Vec<AtomicU64>);

impl AtomicBits {
    fn new(bits: u64) -> Self {
        AtomicBits((0..bits.div_ceil(64)).map(|_| AtomicU64::new(0)).collect())
    }

    #[inline]
    fn set(&self, i: u64) {
        self.0[(i / 64) as usize].fetch_or(1 << (i % 64), Ordering::Relaxed);
    }

    #[inline]
    fn get(&self, i: u64) -> bool {
        self.0[(i / 64) as usize].load(Ordering::Relaxed) >> (i % 64) & 1 == 1
    }

    fn into_words(self) -> Vec<u64> {
        self.0.into_iter().map(AtomicU64::into_inner).collect()
    }
}

/// Mark the index of `P·g` for every monic `g` of degree `j`.
///
/// The lower coefficients of `g` run through an odometer; each step changes
/// a few coefficients of `g`, and the product is patched by the matching
/// multiple of `P` instead of being recomputed.
fn mark_multiples(field: &FieldSpec, p: &[FqElem], j: usize, pows: &[u64], marks: &AtomicBits) {
    let d = p.len() - 1;
    let q = field.order();
    let mut g = vec![0u32; j];
    let mut prod = vec![FqElem::ZERO; d + j + 1];
    prod[j..].copy_from_slice(p);
    let mut idx = encode(field, &prod);
    marks.set(idx);
    loop {
        let mut i = 0;
        loop {
            if i == j {
                return;
            }
            let old = g[i];
            let new = if old + 1 == q { 0 } else { old + 1 };
            g[i] = new;
            let delta = field.sub(FqElem(new), FqElem(old));
            for (t, &c) in p.iter().enumerate() {
                let pos = i + t;
                let before = prod[pos];
                let after = field.add(before, field.mul(delta, c));
                prod[pos] = after;
                idx = idx
                    .wrapping_add(after.0 as u64 * pows[pos])
                    .wrapping_sub(before.0 as u64 * pows[pos]);
            }
            if new != 0 {
                break;
            }
            i += 1;
        }
        marks.set(idx);
    }
}

/// Irreducibility of every polynomial of degree `< D`, by a product sieve.
#[derive(Debug, Clone)]
pub struct IrreducibleTable {
    field: FieldSpec,
    bound: usize,
    bits: Vec<u64>,
    /// Indices of the monic irreducibles, by degree.
    monic: Vec<Vec<u64>>,
}

impl IrreducibleTable {
    pub fn build(field: &FieldSpec, bound: usize, limit: u64) -> Result<Self> {
        let q = field.order() as u64;
        let size = bounded_order_power(q, bound, "q^D", limit)?;
        let pows: Vec<u64> = (0..=bound).map(|e| q.saturating_pow(e as u32)).collect();
        let composite = AtomicBits::new(size);
        let mut monic: Vec<Vec<u64>> = vec![Vec::new(); bound.max(1)];
        for d in 1..bound {
            let start = pows[d];
            monic[d] = (start..2 * start).filter(|&i| !composite.get(i)).collect();
            if 2 * d < bound {
                monic[d].par_iter().for_each(|&pi| {
                    let p = decode(field, pi, d + 1);
                    for j in d..bound - d {
                        mark_multiples(field, &p, j, &pows, &composite);
                    }
                });
            }
        }
        let bits = AtomicBits::new(size);
        monic.par_iter().flatten().for_each(|&pi| {
            let d = monic_degree(pi, &pows);
            let p = decode(field, pi, d + 1);
            for c in field.nonzero() {
                let scaled: Vec<FqElem> = p.iter().map(|&x| field.mul(x, c)).collect();
                bits.set(encode(field, &scaled));
            }
        });
        Ok(IrreducibleTable { field: field.clone(), bound, bits: bits.into_words(), monic })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Polynomials of degree below this bound are covered.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> u64 {
        (self.field.order() as u64).pow(self.bound as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn is_irreducible_index(&self, idx: u64) -> bool {
        self.bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }

    pub fn monic_irreducibles(&self, d: usize) -> &[u64] {
        self.monic.get(d).map_or(&[], |v| v.as_slice())
    }
}

fn monic_degree(idx: u64, pows: &[u64]) -> usize {
    pows.iter().rposition(|&p| p <= idx).unwrap()
}

/// `Λ(f)` for every polynomial of degree `< D`.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    values: Vec<u8>,
}

impl LambdaTable {
    pub fn build(irr: &IrreducibleTable) -> Self {
        let field = irr.field();
        let q = field.order() as u64;
        let mut values = vec![0u8; irr.len() as usize];
        for d in 1..irr.bound() {
            for &pi in irr.monic_irreducibles(d) {
                let p = decode(field, pi, d + 1);
                let mut power = FqPoly::new(field, p.clone());
                let base = power.clone();
                while power.degree().unwrap() < irr.bound() {
                    for c in field.nonzero() {
                        let idx = encode(field, power.scale(c).coeffs());
                        values[idx as usize] = d as u8;
                    }
                    power = power.mul(&base).unwrap();
                }
            }
        }
        debug_assert!(values.len() as u64 <= q.pow(irr.bound() as u32));
        LambdaTable { values }
    }

    #[inline]
    pub fn get(&self, idx: u64) -> u8 {
        self.values[idx as usize]
    }
}
