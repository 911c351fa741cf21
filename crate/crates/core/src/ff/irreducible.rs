//! Irreducibility, irreducible counts, factorization, Φ and Λ over F_q[T].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::config::Ceilings;
use crate::error::{Error, Result};
use crate::primes::factor_u64;

use super::field::{FieldSpec, FqElem};
use super::poly::{raw, FqPoly};
use super::table::decode;

/// Rabin/Ben-Or test: `f` of degree `d` is irreducible iff
/// `gcd(x^{q^i} − x, f) = 1` for every `1 ≤ i ≤ d/2`.
pub(crate) fn is_irreducible_raw(field: &FieldSpec, f: &[FqElem]) -> bool {
    let d = match raw::degree(f) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(d) => d,
    };
    let (_, m) = raw::monic(field, f);
    let q = field.order() as u64;
    let x = raw::x();
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = raw::powmod(field, &h, q, &m);
        let g = raw::gcd(field, &raw::sub(field, &h, &x), &m);
        if !raw::is_one(&g) {
            return false;
        }
    }
    true
}

/// True iff `deg f ≥ 1` and `f` has no nonunit factor of smaller degree.
pub fn is_irreducible(f: &FqPoly) -> bool {
    is_irreducible_raw(f.field(), f.coeffs())
}

fn mobius(n: u64) -> i32 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of irreducible polynomials of degree `d` over F_q, monic or all.
pub fn count_irreducible(q: u64, d: u32, monic_only: bool) -> BigUint {
    assert!(d >= 1, "degree must be positive");
    let qb = BigInt::from(q);
    let sum: BigInt = (1..=d as u64)
        .filter(|e| d as u64 % e == 0)
        .map(|e| BigInt::from(mobius(e)) * qb.pow((d as u64 / e) as u32))
        .sum();
    let monic = (sum / BigInt::from(d)).abs().to_biguint().unwrap();
    if monic_only {
        monic
    } else {
        monic * (q - 1)
    }
}

/// `unit · Π P_i^{e_i}` with distinct monic irreducible `P_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    pub fn product(&self, field: &FieldSpec) -> FqPoly {
        let mut acc = FqPoly::new(field, vec![self.unit]);
        for (p, e) in &self.factors {
            acc = acc.mul(&p.pow(*e)).expect("same field");
        }
        acc
    }
}

#[derive(Serialize)]
struct FactorRepr {
    factor: String,
    multiplicity: u32,
}

impl Serialize for Factorization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<FactorRepr> = self
            .factors
            .iter()
            .map(|(p, e)| FactorRepr { factor: p.to_string(), multiplicity: *e })
            .collect();
        v.serialize(s)
    }
}

/// Factor within the default degree ceiling.
pub fn factor(f: &FqPoly) -> Result<Factorization> {
    factor_with(f, Ceilings::default().poly_degree)
}

/// Trial division degree by degree. For each `d`, `gcd(x^{q^d} − x, h)` is the
/// product of the distinct degree-`d` factors of the remaining cofactor `h`;
/// candidates of degree `d` are tried only when that product holds two or more.
pub fn factor_with(f: &FqPoly, degree_limit: usize) -> Result<Factorization> {
    let field = f.field();
    let deg = f.degree().ok_or(Error::ZeroInput)?;
    if deg > degree_limit {
        return Err(Error::DegreeTooLarge { degree: deg, limit: degree_limit });
    }
    let (unit, mut h) = raw::monic(field, f.coeffs());
    let q = field.order() as u64;
    let x = raw::x();
    let mut found: Vec<(Vec<FqElem>, u32)> = Vec::new();
    let mut xq = raw::rem(field, &x, &h);
    let mut d = 1usize;
    while h.len() > 2 * d {
        xq = raw::powmod(field, &xq, q, &h);
        let mut g = raw::gcd(field, &raw::sub(field, &xq, &x), &h);
        if g.len() > 1 {
            let mut batch = Vec::new();
            let mut idx = 0u64;
            while g.len() - 1 > d {
                let mut cand = decode(field, idx, d);
                cand.push(FqElem::ONE);
                idx += 1;
                let (quot, r) = raw::divrem(field, &g, &cand);
                if r.is_empty() {
                    batch.push(cand);
                    g = quot;
                }
            }
            batch.push(g);
            for p in batch {
                let mut e = 0;
                loop {
                    let (quot, r) = raw::divrem(field, &h, &p);
                    if !r.is_empty() {
                        break;
                    }
                    h = quot;
                    e += 1;
                }
                found.push((p, e));
            }
            xq = raw::rem(field, &xq, &h);
        }
        d += 1;
    }
    if h.len() > 1 {
        found.push((h, 1));
    }
    found.sort_by(|a, b| (a.0.len(), a.0.iter().rev().collect::<Vec<_>>()).cmp(&(b.0.len(), b.0.iter().rev().collect())));
    Ok(Factorization {
        unit,
        factors: found.into_iter().map(|(p, e)| (FqPoly::new(field, p), e)).collect(),
    })
}

/// Order of the unit group of `F_q[T]/(b^k)`.
pub fn poly_phi(b: &FqPoly, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::BadRange("exponent k must be at least 1".into()));
    }
    let fac = factor(b)?;
    let q = BigUint::from(b.field().order());
    let mut phi = BigUint::one();
    for (p, e) in &fac.factors {
        let norm = q.pow(p.degree().unwrap() as u32);
        phi *= (&norm - 1u32) * norm.pow(e - 1);
    }
    let m = b.degree().unwrap() as u32;
    Ok(phi * q.pow(m * (k - 1)))
}

/// `Φ(b)` as a float, for predictions.
pub fn poly_phi_f64(b: &FqPoly) -> Result<f64> {
    Ok(poly_phi(b, 1)?.to_f64().unwrap_or(f64::INFINITY))
}

/// `deg P` if `f` is a unit times a positive power of an irreducible `P`, else 0.
pub fn poly_von_mangoldt(f: &FqPoly) -> Result<u32> {
    let fac = factor(f)?;
    Ok(match fac.factors.as_slice() {
        [(p, _)] => p.degree().unwrap() as u32,
        _ => 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::table::enumerate_polys;
    use crate::ff::PolyRange;
    use proptest::prelude::*;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn p(f: &FieldSpec, c: &[i64]) -> FqPoly {
        FqPoly::from_ints(f, c)
    }

    /// Irreducible iff no monic divisor of degree 1..=d/2, by exhaustive division.
    fn brute_irreducible(f: &FqPoly) -> bool {
        let field = f.field();
        let Some(d) = f.degree() else { return false };
        if d == 0 {
            return false;
        }
        (1..=d / 2).all(|k| {
            enumerate_polys(field, PolyRange::Exact(k), u64::MAX)
                .unwrap()
                .filter(|c| c.is_monic())
                .all(|c| !f.rem(&c).unwrap().is_zero())
        })
    }

    #[test]
    fn spec_examples() {
        let f = gf(2);
        assert!(is_irreducible(&FqPoly::t(&f)));
        assert!(!is_irreducible(&p(&f, &[1, 0, 1])));
        assert!(!is_irreducible(&p(&f, &[1, 1, 1, 1])));
        assert!(is_irreducible(&p(&f, &[1, 1, 1])));
        assert!(!is_irreducible(&FqPoly::one(&f)));
        assert!(!is_irreducible(&FqPoly::zero(&f)));
        assert_eq!(count_irreducible(2, 3, true), BigUint::from(2u32));
        assert_eq!(count_irreducible(3, 2, true), BigUint::from(3u32));
        for q in [2u64, 7, 9, 101] {
            assert_eq!(count_irreducible(q, 1, true), BigUint::from(q));
            assert_eq!(count_irreducible(q, 1, false), BigUint::from(q * (q - 1)));
        }
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for q in [2u32, 3, 4] {
            let f = gf(q);
            for g in enumerate_polys(&f, PolyRange::Below(6), u64::MAX).unwrap() {
                assert_eq!(is_irreducible(&g), brute_irreducible(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn counts_match_enumeration() {
        for q in [2u32, 3, 4, 5] {
            let f = gf(q);
            for d in 1..=6usize {
                let found = enumerate_polys(&f, PolyRange::Exact(d), u64::MAX)
                    .unwrap()
                    .filter(|g| g.is_monic() && is_irreducible(g))
                    .count();
                assert_eq!(BigUint::from(found), count_irreducible(q as u64, d as u32, true));
            }
        }
    }

    #[test]
    fn gauss_identity() {
        for q in [2u64, 3, 5] {
            for d in 1..=10u32 {
                let s: BigUint = (1..=d)
                    .filter(|e| d % e == 0)
                    .map(|e| count_irreducible(q, e, true) * e)
                    .sum();
                assert_eq!(s, BigUint::from(q).pow(d));
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f = gf(2);
        let fac = factor(&p(&f, &[1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&f, &[1, 1]), 2)]);
        let fac = factor(&p(&f, &[0, 1, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&f, &[0, 1]), 1), (p(&f, &[1, 1]), 1)]);
        let g = gf(5);
        let irr = p(&g, &[2, 0, 3]);
        let fac = factor(&irr).unwrap();
        assert_eq!(fac.unit, FqElem(3));
        assert_eq!(fac.product(&g), irr);
        let big = FqPoly::new(&f, vec![FqElem::ONE; 26]);
        assert!(matches!(factor(&big), Err(Error::DegreeTooLarge { .. })));
        assert_eq!(factor(&FqPoly::zero(&f)), Err(Error::ZeroInput));
    }

    #[test]
    fn irreducible_factors_itself() {
        let g = gf(9);
        for f in enumerate_polys(&g, PolyRange::Exact(3), u64::MAX).unwrap().step_by(37) {
            if is_irreducible(&f) {
                let fac = factor(&f).unwrap();
                assert_eq!(fac.factors, vec![(f.monic().1, 1)]);
                assert_eq!(fac.unit, f.leading());
            }
        }
    }

    #[test]
    fn factorization_reconstructs_exhaustively() {
        for q in [2u32, 3] {
            let f = gf(q);
            for g in enumerate_polys(&f, PolyRange::Below(9), u64::MAX).unwrap().skip(1) {
                let fac = factor(&g).unwrap();
                assert_eq!(fac.product(&f), g);
                for (p, e) in &fac.factors {
                    assert!(*e >= 1 && p.is_monic() && is_irreducible(p), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn repeated_equal_degree_factors() {
        // Two distinct quadratics and a repeated one over GF(3).
        let f = gf(3);
        let a = p(&f, &[1, 0, 1]);
        let b = p(&f, &[2, 1, 1]);
        let c = p(&f, &[2, 2, 1]);
        let g = a.mul(&b).unwrap().mul(&c).unwrap().mul(&c).unwrap().scale(FqElem(2));
        let fac = factor(&g).unwrap();
        assert_eq!(fac.unit, FqElem(2));
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.product(&f), g);
    }

    fn brute_phi(b: &FqPoly) -> u64 {
        let d = b.degree().unwrap();
        enumerate_polys(b.field(), PolyRange::Below(d), u64::MAX)
            .unwrap()
            .filter(|r| raw::is_one(r.gcd(b).unwrap().coeffs()))
            .count() as u64
    }

    #[test]
    fn phi_examples_and_brute_force() {
        assert_eq!(poly_phi(&FqPoly::t(&gf(3)), 1).unwrap(), BigUint::from(2u32));
        assert_eq!(poly_phi(&p(&gf(2), &[0, 1, 1]), 1).unwrap(), BigUint::one());
        for q in [2u32, 3] {
            let f = gf(q);
            for b in enumerate_polys(&f, PolyRange::Below(5), u64::MAX).unwrap() {
                if b.degree().is_some_and(|d| d >= 1) {
                    assert_eq!(poly_phi(&b, 1).unwrap(), BigUint::from(brute_phi(&b)), "{b:?}");
                }
            }
        }
        assert!(poly_phi(&FqPoly::t(&gf(3)), 0).is_err());
    }

    #[test]
    fn von_mangoldt_examples() {
        let f = gf(2);
        assert_eq!(poly_von_mangoldt(&p(&f, &[0, 0, 1])).unwrap(), 1);
        assert_eq!(poly_von_mangoldt(&p(&f, &[0, 1, 1])).unwrap(), 0);
        assert_eq!(poly_von_mangoldt(&p(&f, &[1, 1, 0, 1])).unwrap(), 3);
        assert_eq!(poly_von_mangoldt(&FqPoly::one(&f)).unwrap(), 0);
    }

    proptest! {
        #[test]
        fn phi_power_rule(qi in 0usize..4, coeffs in proptest::collection::vec(0u32..65536, 2..5), k in 1u32..=3) {
            let q = [2u32, 3, 4, 5][qi];
            let f = gf(q);
            let b = FqPoly::new(&f, coeffs.iter().map(|&c| FqElem(c % q)).collect());
            prop_assume!(b.degree().is_some_and(|d| d >= 1));
            let m = b.degree().unwrap() as u32;
            let direct = poly_phi(&b.pow(k), 1).unwrap();
            prop_assert_eq!(&direct, &poly_phi(&b, k).unwrap());
            prop_assert_eq!(direct, poly_phi(&b, 1).unwrap() * BigUint::from(q).pow(m * (k - 1)));
        }
    }
}
