//! Polynomials over a `FieldSpec`.
//!
//! The `raw` functions work on little-endian coefficient slices without
//! trailing zeros and are what the scans call; `FqPoly` wraps them with the
//! field attached.

use std::fmt;

use crate::error::{Error, Result};

use super::field::{FieldSpec, FqElem};

pub mod raw {
    use super::*;

    pub type Coeffs = Vec<FqElem>;

    pub fn trim(v: &mut Coeffs) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(a: &[FqElem]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn add(f: &FieldSpec, a: &[FqElem], b: &[FqElem]) -> Coeffs {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, &s) in out.iter_mut().zip(short) {
            *o = f.add(*o, s);
        }
        trim(&mut out);
        out
    }

    pub fn neg(f: &FieldSpec, a: &[FqElem]) -> Coeffs {
        a.iter().map(|&c| f.neg(c)).collect()
    }

    pub fn sub(f: &FieldSpec, a: &[FqElem], b: &[FqElem]) -> Coeffs {
        add(f, a, &neg(f, b))
    }

    pub fn scale(f: &FieldSpec, a: &[FqElem], c: FqElem) -> Coeffs {
        if c.is_zero() {
            return Vec::new();
        }
        a.iter().map(|&x| f.mul(x, c)).collect()
    }

    pub fn mul(f: &FieldSpec, a: &[FqElem], b: &[FqElem]) -> Coeffs {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![FqElem::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    /// `(quotient, remainder)`; panics on a zero divisor.
    pub fn divrem(f: &FieldSpec, a: &[FqElem], b: &[FqElem]) -> (Coeffs, Coeffs) {
        let db = degree(b).expect("division by zero polynomial");
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
        let mut quot = vec![FqElem::ZERO; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = r[top];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[top - db] = factor;
            let shift = top - db;
            for (j, &y) in b.iter().enumerate() {
                r[shift + j] = f.sub(r[shift + j], f.mul(factor, y));
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut quot);
        (quot, r)
    }

    pub fn rem(f: &FieldSpec, a: &[FqElem], b: &[FqElem]) -> Coeffs {
        divrem(f, a, b).1
    }

    /// Monic multiple of `a` and the leading coefficient removed.
    pub fn monic(f: &FieldSpec, a: &[FqElem]) -> (FqElem, Coeffs) {
        match a.last() {
            None => (FqElem::ZERO, Vec::new()),
            Some(&lead) => (lead, scale(f, a, f.inv(lead).unwrap())),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(f: &FieldSpec, a: &[FqElem], b: &[FqElem]) -> Coeffs {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        while !y.is_empty() {
            let r = rem(f, &x, &y);
            x = y;
            y = r;
        }
        monic(f, &x).1
    }

    pub fn mulmod(f: &FieldSpec, a: &[FqElem], b: &[FqElem], m: &[FqElem]) -> Coeffs {
        rem(f, &mul(f, a, b), m)
    }

    /// `base^e mod m`.
    pub fn powmod(f: &FieldSpec, base: &[FqElem], mut e: u64, m: &[FqElem]) -> Coeffs {
        let mut acc = rem(f, &[FqElem::ONE], m);
        let mut b = rem(f, base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(f, &acc, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = mulmod(f, &b, &b, m);
            }
        }
        acc
    }

    pub fn pow(f: &FieldSpec, base: &[FqElem], e: u32) -> Coeffs {
        let mut acc = vec![FqElem::ONE];
        for _ in 0..e {
            acc = mul(f, &acc, base);
        }
        acc
    }

    pub fn is_one(a: &[FqElem]) -> bool {
        a.len() == 1 && a[0] == FqElem::ONE
    }

    pub fn x() -> Coeffs {
        vec![FqElem::ZERO, FqElem::ONE]
    }
}

/// A polynomial with coefficients in a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPoly {
    field: FieldSpec,
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FqElem>) -> Self {
        raw::trim(&mut coeffs);
        FqPoly { field: field.clone(), coeffs }
    }

    /// Build from prime-subfield integers, little-endian.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::new(field, vec![FqElem::ONE])
    }

    /// The indeterminate `T`.
    pub fn t(field: &FieldSpec) -> Self {
        Self::new(field, raw::x())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FqElem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` standing for −∞ on the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        raw::degree(&self.coeffs)
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    fn same_field(&self, other: &FqPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn wrap(&self, coeffs: Vec<FqElem>) -> FqPoly {
        FqPoly { field: self.field.clone(), coeffs }
    }

    pub fn add(&self, other: &FqPoly) -> Result<FqPoly> {
        self.same_field(other)?;
        Ok(self.wrap(raw::add(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &FqPoly) -> Result<FqPoly> {
        self.same_field(other)?;
        Ok(self.wrap(raw::sub(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn mul(&self, other: &FqPoly) -> Result<FqPoly> {
        self.same_field(other)?;
        Ok(self.wrap(raw::mul(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: FqElem) -> FqPoly {
        self.wrap(raw::scale(&self.field, &self.coeffs, c))
    }

    pub fn divrem(&self, other: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = raw::divrem(&self.field, &self.coeffs, &other.coeffs);
        Ok((self.wrap(q), self.wrap(r)))
    }

    pub fn rem(&self, other: &FqPoly) -> Result<FqPoly> {
        Ok(self.divrem(other)?.1)
    }

    pub fn gcd(&self, other: &FqPoly) -> Result<FqPoly> {
        self.same_field(other)?;
        Ok(self.wrap(raw::gcd(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn powmod(&self, e: u64, modulus: &FqPoly) -> Result<FqPoly> {
        self.same_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(raw::powmod(&self.field, &self.coeffs, e, &modulus.coeffs)))
    }

    pub fn pow(&self, e: u32) -> FqPoly {
        self.wrap(raw::pow(&self.field, &self.coeffs, e))
    }

    /// Leading coefficient and monic normalization.
    pub fn monic(&self) -> (FqElem, FqPoly) {
        let (lead, m) = raw::monic(&self.field, &self.coeffs);
        (lead, self.wrap(m))
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(out, "0");
        }
        let prime = self.field.is_prime_field();
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let coeff = if prime {
                c.0.to_string()
            } else {
                format!("{:?}", self.field.coords(c))
            };
            match (i, c == FqElem::ONE) {
                (0, _) => write!(out, "{coeff}")?,
                (_, true) => {}
                (_, false) => write!(out, "{coeff}*")?,
            }
            match i {
                0 => {}
                1 => write!(out, "T")?,
                _ => write!(out, "T^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self} over {:?}", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    #[test]
    fn spec_examples() {
        let f = gf(2);
        let t1 = FqPoly::from_ints(&f, &[1, 1]);
        assert_eq!(t1.mul(&t1).unwrap(), FqPoly::from_ints(&f, &[1, 0, 1]));
        let (q, r) = FqPoly::from_ints(&f, &[1, 0, 0, 1]).divrem(&t1).unwrap();
        assert_eq!(q, FqPoly::from_ints(&f, &[1, 1, 1]));
        assert!(r.is_zero());
        let g = FqPoly::from_ints(&gf(5), &[3, 0, 2]);
        assert_eq!(g.gcd(&FqPoly::zero(&gf(5))).unwrap(), g.monic().1);
    }

    #[test]
    fn errors() {
        let a = FqPoly::one(&gf(2));
        let b = FqPoly::one(&gf(3));
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.divrem(&FqPoly::zero(&gf(2))), Err(Error::DivisionByZero));
    }

    #[test]
    fn display() {
        let f = gf(3);
        assert_eq!(FqPoly::from_ints(&f, &[1, 0, 2, 1]).to_string(), "T^3 + 2*T^2 + 1");
        assert_eq!(FqPoly::zero(&f).to_string(), "0");
        assert_eq!(FqPoly::t(&f).to_string(), "T");
    }

    fn arb_poly(q: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..q, 0..max_len)
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(qi in 0usize..5, a in arb_poly(65536, 12), b in arb_poly(65536, 7)) {
            let q = [2u32, 3, 4, 9, 25][qi];
            let f = gf(q);
            let a = FqPoly::new(&f, a.iter().map(|&c| FqElem(c % q)).collect());
            let b = FqPoly::new(&f, b.iter().map(|&c| FqElem(c % q)).collect());
            prop_assume!(!b.is_zero());
            let (s, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(s.mul(&b).unwrap().add(&r).unwrap(), a.clone());
            prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(a.rem(&g).unwrap().is_zero() && b.rem(&g).unwrap().is_zero());
        }

        #[test]
        fn powmod_matches_repeated_multiplication(a in arb_poly(3, 5), m in arb_poly(3, 6), e in 0u64..20) {
            let f = gf(3);
            let a = FqPoly::new(&f, a.iter().map(|&c| FqElem(c)).collect());
            let m = FqPoly::new(&f, m.iter().map(|&c| FqElem(c)).collect());
            prop_assume!(!m.is_zero());
            prop_assert_eq!(a.powmod(e, &m).unwrap(), a.pow(e as u32).rem(&m).unwrap());
        }
    }
}
