//! GF(p^n) with elements packed as integers.
//!
//! An element with coordinates `c_0 + c_1 x + … + c_{n−1} x^{n−1}` over GF(p)
//! is stored as `Σ c_i p^i`. Prime fields use direct modular arithmetic;
//! extension fields use logarithm, antilogarithm and Zech tables built from
//! the smallest primitive element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::{factor_u64, is_prime_u64};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[repr(transparent)]
pub struct FqElem(pub u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    tables: Option<Tables>,
}

/// A finite field of order `q = p^n ≤ 2^16`.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}", self.0.q)?;
        if let Some(m) = &self.0.modulus {
            write!(f, "; mod={m:?}")?;
        }
        write!(f, ")")
    }
}

/// Dense polynomial helpers over GF(p) used only while building tables.
mod prime_poly {
    pub fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let n = modulus.len() - 1;
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        // The modulus is monic: x^n = −Σ m_i x^i.
        for top in (n..prod.len()).rev() {
            let c = prod[top];
            if c != 0 {
                prod[top] = 0;
                for (i, &m) in modulus[..n].iter().enumerate() {
                    let idx = top - n + i;
                    prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
                }
            }
        }
        prod.truncate(n);
        prod.resize(n, 0);
        prod.into_iter().map(|x| x as u32).collect()
    }

    pub fn pow_mod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
        let n = modulus.len() - 1;
        let mut acc = vec![0u32; n];
        acc[0] = 1;
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, modulus, p);
            }
            b = mul_mod(&b, &b, modulus, p);
            e >>= 1;
        }
        acc
    }
}

impl FieldSpec {
    /// GF(p) for a prime `p < 2^16`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// GF(q) for a prime power `q ≤ 2^16`, with the default modulus.
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, n) = prime_power(q)?;
        Self::new(p, n, None)
    }

    /// GF(p^n). Without a modulus the smallest monic irreducible of degree
    /// `n` (ordered by `Σ c_i p^i` over its lower coefficients) is used.
    pub fn new(p: u32, n: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime_u64(p as u64) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(n).filter(|&q| q <= MAX_ORDER as u64).ok_or_else(|| {
            Error::InvalidField(format!("order {p}^{n} exceeds {MAX_ORDER}"))
        })? as u32;
        if n == 1 {
            if modulus.is_some() {
                return Err(Error::InvalidField("prime fields take no modulus".into()));
            }
            return Ok(FieldSpec(Arc::new(Inner { p, n, q, modulus: None, tables: None })));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 || m[n as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {n} with coefficients below {p}"
                    )));
                }
                if !prime_irreducible(&m, p) {
                    return Err(Error::InvalidField(format!("modulus {m:?} is reducible")));
                }
                m
            }
            None => default_modulus(p, n),
        };
        let tables = build_tables(p, n, q, &modulus);
        Ok(FieldSpec(Arc::new(Inner { p, n, q, modulus: Some(modulus), tables: Some(tables) })))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.n
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.0.q).map(FqElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqElem> {
        (1..self.0.q).map(FqElem)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> FqElem {
        FqElem(k.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn coords(&self, a: FqElem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.0.n)
            .map(|_| {
                let c = v % self.0.p;
                v /= self.0.p;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FqElem> {
        if coords.len() > self.0.n as usize || coords.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!(
                "{coords:?} is not an element of GF({})",
                self.0.q
            )));
        }
        Ok(FqElem(coords.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)))
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        match &self.0.tables {
            None => {
                let s = a.0 + b.0;
                FqElem(if s >= self.0.p { s - self.0.p } else { s })
            }
            Some(t) => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let m = self.0.q - 1;
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let d = if lb >= la { lb - la } else { lb + m - la };
                let z = t.zech[d as usize];
                if z == NO_LOG {
                    FqElem::ZERO
                } else {
                    FqElem(t.exp[(la + z) as usize])
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        if a.0 == 0 || self.0.p == 2 {
            return a;
        }
        match &self.0.tables {
            None => FqElem(self.0.p - a.0),
            Some(t) => {
                // −1 = g^{(q−1)/2} for odd q.
                let la = t.log[a.0 as usize];
                FqElem(t.exp[(la + (self.0.q - 1) / 2) as usize])
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        match &self.0.tables {
            None => FqElem(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32),
            Some(t) => FqElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
        }
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.0 == 0 {
            return FqElem::ZERO;
        }
        let m = (self.0.q - 1) as u64;
        match &self.0.tables {
            None => {
                let p = self.0.p as u64;
                let (mut acc, mut b, mut e) = (1u64, a.0 as u64, e % m);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * b % p;
                    }
                    b = b * b % p;
                    e >>= 1;
                }
                FqElem(acc as u32)
            }
            Some(t) => {
                let l = (t.log[a.0 as usize] as u64 * (e % m)) % m;
                FqElem(t.exp[l as usize])
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        Some(self.pow(a, (self.0.q - 2) as u64))
    }
}

/// Split `q = p^n`.
pub fn prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::InvalidField(format!("{q} is not a prime power")));
    }
    match factor_u64(q as u64).as_slice() {
        [(p, e)] => Ok((*p as u32, *e)),
        _ => Err(Error::InvalidField(format!("{q} is not a prime power"))),
    }
}

/// Irreducibility over GF(p) by Rabin-style gcd checks on dense coefficient lists.
fn prime_irreducible(f: &[u32], p: u32) -> bool {
    let field = FieldSpec::prime(p).expect("prime");
    let poly: Vec<FqElem> = f.iter().map(|&c| FqElem(c)).collect();
    super::irreducible::is_irreducible_raw(&field, &poly)
}

fn default_modulus(p: u32, n: u32) -> Vec<u32> {
    let lower = (p as u64).pow(n);
    (0..lower)
        .map(|code| {
            let mut v = code;
            let mut m: Vec<u32> = (0..n)
                .map(|_| {
                    let c = (v % p as u64) as u32;
                    v /= p as u64;
                    c
                })
                .collect();
            m.push(1);
            m
        })
        .find(|m| prime_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

fn build_tables(p: u32, n: u32, q: u32, modulus: &[u32]) -> Tables {
    let m = (q - 1) as u64;
    let prime_factors: Vec<u64> = factor_u64(m).into_iter().map(|(r, _)| r).collect();
    let coords = |mut v: u32| -> Vec<u32> {
        (0..n)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    };
    let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &x| acc * p + x);
    let one = coords(1);
    let generator = (2..q)
        .map(coords)
        .find(|g| {
            prime_factors
                .iter()
                .all(|&r| prime_poly::pow_mod(g, m / r, modulus, p) != one)
        })
        .unwrap_or_else(|| coords(1));

    let mut exp = vec![0u32; 2 * (q as usize - 1)];
    let mut log = vec![NO_LOG; q as usize];
    let mut cur = one.clone();
    for i in 0..(q - 1) as usize {
        let e = encode(&cur);
        exp[i] = e;
        exp[i + (q - 1) as usize] = e;
        log[e as usize] = i as u32;
        cur = prime_poly::mul_mod(&cur, &generator, modulus, p);
    }
    // zech[i] = log(1 + g^i), adding 1 to the constant coordinate.
    let zech = (0..(q - 1) as usize)
        .map(|i| {
            let mut c = coords(exp[i]);
            c[0] = (c[0] + 1) % p;
            log[encode(&c) as usize]
        })
        .collect();
    Tables { exp, log, zech }
}
