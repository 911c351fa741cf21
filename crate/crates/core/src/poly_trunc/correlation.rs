//! Correlation sums over pairs of polynomials sharing low digits.

use rayon::prelude::*;

use crate::config::Ceilings;
use crate::error::{Error, Result};
use crate::ff::{
    bounded_order_power, decode, poly_phi_f64, FqPoly, IrreducibleTable, LambdaTable,
};

use super::base_degree;
use super::scan::ShiftedIndexer;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyWeight {
    IrreducibleIndicator,
    VonMangoldt,
}

/// `Σ w(g₁)w(g₂)` over `deg g_i = h_i` with `g₂ ≡ g₁ (mod b^K)`,
/// `K = ⌊h₁/m⌋ + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCorrelationQuery {
    pub base: FqPoly,
    pub h1: u32,
    pub h2: u32,
    pub weight: PolyWeight,
}

impl PolyCorrelationQuery {
    pub fn new(base: FqPoly, h1: u32, h2: u32, weight: PolyWeight) -> Self {
        PolyCorrelationQuery { base, h1, h2, weight }
    }

    fn check(&self) -> Result<u32> {
        let m = base_degree(&self.base)? as u32;
        if self.h1 == 0 || self.h1 / m >= self.h2 / m {
            return Err(Error::BadRange(format!(
                "need 0 < h1 and ⌊h1/m⌋ < ⌊h2/m⌋ (h1={}, h2={}, m={m})",
                self.h1, self.h2
            )));
        }
        Ok(m)
    }

    pub fn sum(&self, ceilings: &Ceilings) -> Result<u64> {
        let m = self.check()?;
        let field = self.base.field();
        let q = field.order() as u64;
        let (h1, h2) = (self.h1 as usize, self.h2 as usize);
        bounded_order_power(q, h2 + 1, "q^(h2+1)", ceilings.scan)?;
        let irr = IrreducibleTable::build(field, h2 + 1, ceilings.scan)?;
        let lambda = match self.weight {
            PolyWeight::VonMangoldt => Some(LambdaTable::build(&irr)),
            PolyWeight::IrreducibleIndicator => None,
        };
        let w = |idx: u64| -> u64 {
            match &lambda {
                Some(t) => t.get(idx) as u64,
                None => u64::from(irr.is_irreducible_index(idx)),
            }
        };

        let k = self.h1 / m + 1;
        let shift = self.base.pow(k);
        let e = h2 - (m * k) as usize;
        let g1_lo = q.pow(self.h1);
        let g1_hi = g1_lo * q;
        let w1: Vec<u64> = (g1_lo..g1_hi).map(w).collect();
        let total = (q.pow(e as u32)..q.pow(e as u32 + 1))
            .into_par_iter()
            .map(|ci| {
                let c = FqPoly::new(field, decode(field, ci, e + 1));
                let cb = c.mul(&shift).unwrap().into_coeffs();
                let mut it = ShiftedIndexer::new(field, cb, h1 + 1, g1_lo);
                let mut acc = 0u64;
                for &x in &w1 {
                    if x != 0 {
                        acc += x * w(it.index());
                    }
                    it.advance();
                }
                acc
            })
            .sum();
        Ok(total)
    }

    /// Main term of the sum.
    pub fn main_term(&self) -> Result<f64> {
        let m = self.check()?;
        let q = self.base.field().order() as f64;
        let phi = poly_phi_f64(&self.base)?;
        let exponent = self.h2 + self.h1 % m;
        let core = (q - 1.0).powi(2) * q.powi(exponent as i32) / phi;
        Ok(match self.weight {
            PolyWeight::IrreducibleIndicator => core / (self.h1 as f64 * self.h2 as f64),
            PolyWeight::VonMangoldt => core,
        })
    }
}
