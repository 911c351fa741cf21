//! Truncations of polynomials over F_q written in base `b(T)`.
//!
//! The residue of `f` modulo `b^k` counts as a truncation when its base-`b`
//! expansion has exactly `k` digits. This includes the lowest digit `a_0`
//! (`k = 1`); the strict variant drops `k = 1`.

mod correlation;
mod predict;
mod scan;

pub use correlation::{PolyCorrelationQuery, PolyWeight};
pub use predict::{
    poly_avg_asymptotic, poly_avg_exact, poly_avg_exact_with, poly_avg_main_term,
    poly_avg_main_term_exact, poly_var_predicted, poly_var_predicted_for_base, PolyMeanRegime,
    PolyVarianceRegime,
};
pub use scan::{
    poly_avg_bruteforce, poly_restricted_stats, poly_stat_report, poly_var_bruteforce,
    PolyStatReport, PolyTruncTable,
};

use crate::error::{Error, Result};
use crate::ff::{is_irreducible, FqPoly};

/// Digits `a_j` of `f = Σ a_j b^j` with `deg a_j < deg b`, little-endian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyDigitExpansion {
    pub base: FqPoly,
    pub digits: Vec<FqPoly>,
}

impl PolyDigitExpansion {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn value(&self) -> FqPoly {
        let field = self.base.field();
        self.digits.iter().rev().fold(FqPoly::zero(field), |acc, d| {
            acc.mul(&self.base).unwrap().add(d).unwrap()
        })
    }
}

pub fn base_degree(b: &FqPoly) -> Result<usize> {
    match b.degree() {
        Some(m) if m >= 1 => Ok(m),
        _ => Err(Error::BaseDegreeZero),
    }
}

pub fn base_expansion(f: &FqPoly, b: &FqPoly) -> Result<PolyDigitExpansion> {
    base_degree(b)?;
    let mut rest = f.clone();
    let mut digits = Vec::new();
    while !rest.is_zero() {
        let (q, r) = rest.divrem(b)?;
        digits.push(r);
        rest = q;
    }
    Ok(PolyDigitExpansion { base: b.clone(), digits })
}

/// Truncations of `f` in increasing digit count.
pub fn poly_truncations(f: &FqPoly, b: &FqPoly, strict: bool) -> Result<Vec<FqPoly>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let exp = base_expansion(f, b)?;
    let mut out = Vec::new();
    let mut power = FqPoly::one(f.field());
    let mut residue = FqPoly::zero(f.field());
    for (k, digit) in exp.digits.iter().enumerate() {
        residue = residue.add(&digit.mul(&power)?)?;
        power = power.mul(b)?;
        if !digit.is_zero() && !(strict && k == 0) {
            out.push(residue.clone());
        }
    }
    Ok(out)
}

/// Number of irreducible truncations of `f`.
pub fn poly_trunc_count(f: &FqPoly, b: &FqPoly, strict: bool) -> Result<u64> {
    Ok(poly_truncations(f, b, strict)?.iter().filter(|g| is_irreducible(g)).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{enumerate_polys, FieldSpec, PolyRange};
    use proptest::prelude::*;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn p(f: &FieldSpec, c: &[i64]) -> FqPoly {
        FqPoly::from_ints(f, c)
    }

    #[test]
    fn expansion_examples() {
        let f = gf(2);
        let b = p(&f, &[0, 0, 1]);
        let e = base_expansion(&p(&f, &[1, 1, 0, 1]), &b).unwrap();
        assert_eq!(e.digits, vec![p(&f, &[1, 1]), p(&f, &[0, 1])]);
        let e = base_expansion(&b, &b).unwrap();
        assert_eq!(e.digits, vec![FqPoly::zero(&f), FqPoly::one(&f)]);
        let e = base_expansion(&p(&f, &[1, 1]), &b).unwrap();
        assert_eq!(e.digits, vec![p(&f, &[1, 1])]);
        assert_eq!(base_expansion(&b, &FqPoly::one(&f)), Err(Error::BaseDegreeZero));
    }

    #[test]
    fn truncation_examples() {
        let f = gf(2);
        let t2 = p(&f, &[0, 0, 1]);
        let t = FqPoly::t(&f);
        let g = p(&f, &[1, 1, 0, 1]);
        assert_eq!(poly_truncations(&g, &t2, false).unwrap(), vec![p(&f, &[1, 1]), g.clone()]);
        assert_eq!(poly_truncations(&t2, &t2, false).unwrap(), vec![t2.clone()]);
        let h = p(&f, &[1, 0, 1]);
        assert_eq!(poly_truncations(&h, &t, false).unwrap(), vec![FqPoly::one(&f), h.clone()]);
        assert_eq!(poly_truncations(&h, &t, true).unwrap(), vec![h.clone()]);
        assert_eq!(poly_truncations(&FqPoly::zero(&f), &t, false), Err(Error::ZeroInput));

        assert_eq!(poly_trunc_count(&p(&f, &[1, 1, 1]), &t, false).unwrap(), 2);
        assert_eq!(poly_trunc_count(&h, &t, false).unwrap(), 0);
        assert_eq!(poly_trunc_count(&g, &t2, false).unwrap(), 2);
        assert_eq!(poly_trunc_count(&g, &t2, true).unwrap(), 1);
    }

    #[test]
    fn count_bounded_by_nonzero_digits() {
        for (q, b) in [(2u32, vec![1i64, 0, 1]), (3, vec![2, 1]), (4, vec![0, 1, 1])] {
            let f = gf(q);
            let b = p(&f, &b);
            for g in enumerate_polys(&f, PolyRange::Below(6), u64::MAX).unwrap().skip(1) {
                let exp = base_expansion(&g, &b).unwrap();
                let nonzero = exp.digits.iter().filter(|d| !d.is_zero()).count();
                let truncs = poly_truncations(&g, &b, false).unwrap();
                assert_eq!(truncs.len(), nonzero);
                assert!(poly_trunc_count(&g, &b, false).unwrap() <= nonzero as u64);
                // Each truncation agrees with g modulo b^k for its digit count k.
                for t in truncs {
                    let k = base_expansion(&t, &b).unwrap().len() as u32;
                    let bk = b.pow(k);
                    assert_eq!(t.rem(&bk).unwrap(), g.rem(&bk).unwrap());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn expansion_round_trips(coeffs in proptest::collection::vec(0u32..9, 0..14),
                                 base in proptest::collection::vec(0u32..9, 2..5)) {
            let f = gf(9);
            let g = FqPoly::new(&f, coeffs.into_iter().map(crate::ff::FqElem).collect());
            let b = FqPoly::new(&f, base.into_iter().map(crate::ff::FqElem).collect());
            prop_assume!(b.degree().is_some_and(|d| d >= 1));
            let e = base_expansion(&g, &b).unwrap();
            prop_assert_eq!(e.value(), g);
            prop_assert!(e.digits.iter().all(|d| d.degree().map_or(true, |x| x < b.degree().unwrap())));
            prop_assert!(e.digits.last().map_or(true, |d| !d.is_zero()));
        }
    }
}
