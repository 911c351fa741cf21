//! Exhaustive scans over all `f` with `deg f < mℓ`.

use std::sync::atomic::{AtomicU8, Ordering};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Ceilings;
use crate::error::{Error, Result};
use crate::exact::{Histogram, Moments, Rational};
use crate::ff::{
    bounded_order_power, decode, encode, from_index, parse, poly_phi, raw, FieldSpec, FqElem,
    FqPoly, IrreducibleTable,
};
use crate::report::{self, Prediction, Predictions};

use super::base_degree;
use super::predict::{
    poly_avg_asymptotic, poly_avg_exact_with, poly_avg_main_term, poly_var_predicted,
    PolyMeanRegime, PolyVarianceRegime,
};

const CHUNK: u64 = 1 << 14;
const COPRIME: u8 = 0x80;
const COUNT: u8 = 0x7f;

/// Index of `shift + r` as `r` runs through consecutive indices of its own.
///
/// `r` has `n` coefficients; `shift` may be longer. Each step touches the
/// coefficients that the odometer on `r` changes, so the amortised cost is
/// constant.
pub(crate) struct ShiftedIndexer<'a> {
    field: &'a FieldSpec,
    shift: Vec<FqElem>,
    digits: Vec<u32>,
    pows: Vec<u64>,
    idx: u64,
}

impl<'a> ShiftedIndexer<'a> {
    pub(crate) fn new(field: &'a FieldSpec, mut shift: Vec<FqElem>, n: usize, start: u64) -> Self {
        if shift.len() < n {
            shift.resize(n, FqElem::ZERO);
        }
        let q = field.order() as u64;
        let pows = (0..n).map(|i| q.pow(i as u32)).collect();
        let digits: Vec<u32> = decode(field, start, n).iter().map(|c| c.0).collect();
        let mut sum = shift.clone();
        for (s, &d) in sum.iter_mut().zip(&digits) {
            *s = field.add(*s, FqElem(d));
        }
        let idx = encode(field, &sum);
        ShiftedIndexer { field, shift, digits, pows, idx }
    }

    #[inline]
    pub(crate) fn index(&self) -> u64 {
        self.idx
    }

    pub(crate) fn advance(&mut self) {
        let q = self.field.order();
        for i in 0..self.digits.len() {
            let s = self.shift[i];
            let before = self.field.add(s, FqElem(self.digits[i])).0 as u64;
            let next = if self.digits[i] + 1 == q { 0 } else { self.digits[i] + 1 };
            self.digits[i] = next;
            let after = self.field.add(s, FqElem(next)).0 as u64;
            self.idx = self.idx.wrapping_add(after * self.pows[i]).wrapping_sub(before * self.pows[i]);
            if next != 0 {
                return;
            }
        }
    }
}

/// `Trun(f)` and the coprimality of `f` with `b`, for every `deg f < mℓ`.
///
/// Built level by level: `f` with exactly `k` digits is `a·b^{k−1} + r`
/// with `a ≠ 0`, and `Trun(f) = Trun(r) + 𝟙(f irreducible)`.
#[derive(Debug, Clone)]
pub struct PolyTruncTable {
    base: FqPoly,
    digits: u32,
    strict: bool,
    cells: Vec<u8>,
}

impl PolyTruncTable {
    pub fn build(b: &FqPoly, l: u32, strict: bool, ceilings: &Ceilings) -> Result<Self> {
        let m = base_degree(b)?;
        let field = b.field().clone();
        let q = field.order() as u64;
        let size = bounded_order_power(q, m * l as usize, "q^(mℓ)", ceilings.scan)?;
        if l as usize > COUNT as usize {
            return Err(Error::ceiling("digit count ℓ", l, COUNT));
        }
        let irr = IrreducibleTable::build(&field, m * l as usize, ceilings.scan)?;
        let cells: Vec<AtomicU8> = (0..size).map(|_| AtomicU8::new(0)).collect();
        let qm = q.pow(m as u32);
        if l >= 1 {
            (1..qm).into_par_iter().for_each(|a| {
                let mut coeffs = decode(&field, a, m);
                raw::trim(&mut coeffs);
                let g = raw::gcd(&field, &coeffs, b.coeffs());
                let mut cell = if raw::is_one(&g) { COPRIME } else { 0 };
                if !strict && irr.is_irreducible_index(a) {
                    cell += 1;
                }
                cells[a as usize].store(cell, Ordering::Relaxed);
            });
        }
        let mut power = b.clone();
        for k in 2..=l as usize {
            let lower = qm.pow(k as u32 - 1);
            let shifts: Vec<Vec<FqElem>> = (1..qm)
                .map(|a| {
                    let a = FqPoly::new(&field, decode(&field, a, m));
                    a.mul(&power).unwrap().into_coeffs()
                })
                .collect();
            let tasks: Vec<(usize, u64)> = (0..shifts.len())
                .flat_map(|a| (0..lower.div_ceil(CHUNK)).map(move |c| (a, c * CHUNK)))
                .collect();
            let n = m * (k - 1);
            tasks.into_par_iter().for_each(|(a, start)| {
                let mut it = ShiftedIndexer::new(&field, shifts[a].clone(), n, start);
                for r in start..(start + CHUNK).min(lower) {
                    let f = it.index();
                    let below = cells[r as usize].load(Ordering::Relaxed);
                    let cell = below + u8::from(irr.is_irreducible_index(f));
                    cells[f as usize].store(cell, Ordering::Relaxed);
                    it.advance();
                }
            });
            power = power.mul(b)?;
        }
        let cells = cells.into_iter().map(AtomicU8::into_inner).collect();
        Ok(PolyTruncTable { base: b.clone(), digits: l, strict, cells })
    }

    pub fn base(&self) -> &FqPoly {
        &self.base
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn strict(&self) -> bool {
        self.strict
    }

    pub fn population(&self) -> u64 {
        self.cells.len() as u64
    }

    pub fn count(&self, idx: u64) -> u64 {
        (self.cells[idx as usize] & COUNT) as u64
    }

    pub fn is_coprime(&self, idx: u64) -> bool {
        self.cells[idx as usize] & COPRIME != 0
    }

    fn fold(&self, mask: u8) -> (Moments, Histogram) {
        self.cells
            .par_chunks(CHUNK as usize)
            .map(|chunk| {
                let mut m = Moments::default();
                let mut h = Histogram::default();
                for &c in chunk.iter().filter(|&&c| c & mask == mask) {
                    m.push((c & COUNT) as u64);
                    h.push((c & COUNT) as usize);
                }
                (m, h)
            })
            .reduce(
                || (Moments::default(), Histogram::default()),
                |(m1, h1), (m2, h2)| (m1.merge(m2), h1.merge(h2)),
            )
    }

    pub fn moments(&self) -> (Moments, Histogram) {
        self.fold(0)
    }

    /// Moments over `f` with `gcd(f, b) = 1`.
    pub fn restricted_moments(&self) -> (Moments, Histogram) {
        self.fold(COPRIME)
    }

    /// Largest count and the first `cap` polynomials attaining it, by index.
    pub fn max_with_witnesses(&self, cap: usize) -> (u64, Vec<FqPoly>) {
        let max = self.cells.par_iter().map(|&c| c & COUNT).max().unwrap_or(0);
        let field = self.base.field();
        let witnesses = self
            .cells
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c & COUNT == max)
            .map(|(i, _)| from_index(field, i as u64))
            .take(cap)
            .collect();
        (max as u64, witnesses)
    }
}

/// Exact mean and variance of the irreducible truncation count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyStatReport {
    /// Field in the shared text grammar, e.g. `q=9;mod=[1,0,1]`.
    pub field: String,
    /// Base as a coefficient list.
    pub base: String,
    pub base_degree: u32,
    pub digits: u32,
    pub strict_def: bool,
    pub population: u64,
    #[serde(with = "report::rational")]
    pub mean: Rational,
    #[serde(with = "report::rational")]
    pub second_moment: Rational,
    #[serde(with = "report::rational")]
    pub variance: Rational,
    pub max: u64,
    pub histogram: Vec<u64>,
    pub predicted_mean: Predictions,
    pub predicted_variance: Predictions,
    pub restricted: Option<Box<PolyStatReport>>,
}

impl PolyStatReport {
    fn from_moments(t: &PolyTruncTable, population: u64, m: &Moments, h: Histogram) -> Self {
        PolyStatReport {
            field: parse::field_string(t.base.field()),
            base: parse::coeff_list(&t.base),
            base_degree: t.base.degree().unwrap_or(0) as u32,
            digits: t.digits,
            strict_def: t.strict,
            population,
            mean: m.mean_over(population),
            second_moment: m.second_moment_over(population),
            variance: m.variance_over(population),
            max: h.0.len().saturating_sub(1) as u64,
            histogram: h.0,
            predicted_mean: Predictions::new(),
            predicted_variance: Predictions::new(),
            restricted: None,
        }
    }

    /// Check the report's internal invariants.
    ///
    /// The restricted population is checked against `q^{m(ℓ−1)}Φ(b)`, which
    /// needs the base; pass it when available.
    pub fn validate(&self, base: Option<&FqPoly>) -> std::result::Result<(), String> {
        use num_traits::Signed;
        if self.variance.is_negative() {
            return Err("negative variance".into());
        }
        if self.variance != &self.second_moment - &self.mean * &self.mean {
            return Err("variance differs from second moment minus squared mean".into());
        }
        if self.histogram.iter().sum::<u64>() != self.population {
            return Err("histogram does not sum to the population".into());
        }
        let sum: u64 = self.histogram.iter().enumerate().map(|(k, &c)| k as u64 * c).sum();
        if self.mean != Rational::new(sum.into(), self.population.into()) {
            return Err("mean disagrees with the histogram".into());
        }
        if let Some(r) = &self.restricted {
            if let Some(b) = base {
                let k = self.digits.max(1);
                let expected = poly_phi(b, k).map_err(|e| e.to_string())?;
                let expected = if self.digits == 0 { 0 } else { expected.to_u64().unwrap_or(0) };
                if r.population != expected {
                    return Err("restricted population is not q^(m(ℓ−1))·Φ(b)".into());
                }
            }
            r.validate(None)?;
        }
        Ok(())
    }
}

pub fn poly_avg_bruteforce(b: &FqPoly, l: u32, strict: bool, ceilings: &Ceilings) -> Result<Rational> {
    let t = PolyTruncTable::build(b, l, strict, ceilings)?;
    Ok(t.moments().0.mean_over(t.population()))
}

pub fn poly_var_bruteforce(b: &FqPoly, l: u32, strict: bool, ceilings: &Ceilings) -> Result<Rational> {
    let t = PolyTruncTable::build(b, l, strict, ceilings)?;
    Ok(t.moments().0.variance_over(t.population()))
}

/// Statistics over `deg f < mℓ` with `gcd(f, b) = 1`.
pub fn poly_restricted_stats(
    b: &FqPoly,
    l: u32,
    strict: bool,
    ceilings: &Ceilings,
) -> Result<PolyStatReport> {
    let t = PolyTruncTable::build(b, l, strict, ceilings)?;
    Ok(restricted_from_table(&t))
}

fn restricted_from_table(t: &PolyTruncTable) -> PolyStatReport {
    let (m, h) = t.restricted_moments();
    PolyStatReport::from_moments(t, m.count, &m, h)
}

/// Full report: scan statistics, restricted sub-report and predictions.
pub fn poly_stat_report(
    b: &FqPoly,
    l: u32,
    strict: bool,
    ceilings: &Ceilings,
) -> Result<PolyStatReport> {
    let t = PolyTruncTable::build(b, l, strict, ceilings)?;
    let (mo, h) = t.moments();
    let mut r = PolyStatReport::from_moments(&t, t.population(), &mo, h);
    r.restricted = Some(Box::new(restricted_from_table(&t)));

    let q = b.field().order() as u64;
    let m = base_degree(b)? as u32;
    let phi = crate::ff::poly_phi_f64(b)?;
    r.predicted_mean
        .insert("exact_identity".into(), Prediction::Exact(poly_avg_exact_with(q, m, l, strict)));
    r.predicted_mean
        .insert("main_term".into(), Prediction::Approx(poly_avg_main_term(q, m, l)));
    for (label, regime) in [
        ("large_q", PolyMeanRegime::LargeQ),
        ("large_m", PolyMeanRegime::LargeM),
        ("large_length", PolyMeanRegime::LargeLength),
    ] {
        r.predicted_mean
            .insert(label.into(), Prediction::Approx(poly_avg_asymptotic(q, m, l, regime)));
    }
    for (label, regime) in [
        ("large_q", PolyVarianceRegime::LargeQ),
        ("large_m", PolyVarianceRegime::LargeM),
        ("large_length_conjecture", PolyVarianceRegime::LargeLengthConjecture),
    ] {
        r.predicted_variance
            .insert(label.into(), Prediction::Approx(poly_var_predicted(q, m, phi, l, regime)));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{from_int, ratio};
    use crate::ff::{enumerate_polys, PolyRange};
    use crate::poly_trunc::{poly_avg_exact, poly_trunc_count};

    fn ceil() -> Ceilings {
        Ceilings::default()
    }

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    /// Counts via explicit expansion and Ben-Or tests, one polynomial at a time.
    fn oracle(b: &FqPoly, l: u32, strict: bool) -> Vec<u64> {
        let d = b.degree().unwrap() * l as usize;
        enumerate_polys(b.field(), PolyRange::Below(d), u64::MAX)
            .unwrap()
            .map(|f| if f.is_zero() { 0 } else { poly_trunc_count(&f, b, strict).unwrap() })
            .collect()
    }

    fn all_bases(field: &FieldSpec, m: usize) -> Vec<FqPoly> {
        enumerate_polys(field, PolyRange::Exact(m), u64::MAX).unwrap().collect()
    }

    #[test]
    fn spec_examples() {
        let f2 = gf(2);
        let t = FqPoly::t(&f2);
        assert_eq!(poly_avg_bruteforce(&t, 2, false, &ceil()).unwrap(), ratio(1, 2));
        assert_eq!(poly_avg_bruteforce(&t, 1, false, &ceil()).unwrap(), from_int(0));
        let t3 = FqPoly::t(&gf(3));
        assert_eq!(poly_avg_bruteforce(&t3, 3, false, &ceil()).unwrap(), ratio(8, 9));
        assert_eq!(poly_var_bruteforce(&t, 2, false, &ceil()).unwrap(), ratio(1, 4));
        assert_eq!(poly_var_bruteforce(&t, 1, false, &ceil()).unwrap(), from_int(0));

        let r = poly_restricted_stats(&t, 2, false, &ceil()).unwrap();
        assert_eq!((r.population, r.mean.clone()), (2, ratio(1, 2)));
        let r = poly_restricted_stats(&t, 1, false, &ceil()).unwrap();
        assert_eq!((r.population, r.mean.clone()), (1, from_int(0)));
    }

    #[test]
    fn table_matches_oracle() {
        for (q, m, l) in [(2u32, 1usize, 6u32), (2, 2, 3), (3, 1, 4), (3, 2, 2), (4, 2, 2), (5, 1, 3), (2, 3, 2)] {
            let field = gf(q);
            for b in all_bases(&field, m) {
                for strict in [false, true] {
                    let t = PolyTruncTable::build(&b, l, strict, &ceil()).unwrap();
                    let want = oracle(&b, l, strict);
                    for (i, &w) in want.iter().enumerate() {
                        assert_eq!(t.count(i as u64), w, "q={q} b={b} f#{i} strict={strict}");
                        let f = from_index(&field, i as u64);
                        let coprime = !f.is_zero() && f.gcd(&b).unwrap().degree() == Some(0);
                        assert_eq!(t.is_coprime(i as u64), coprime);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_identity_for_every_base() {
        for (q, m, l) in [(2u32, 1u32, 8u32), (2, 2, 4), (3, 1, 5), (3, 2, 3), (5, 1, 4), (5, 2, 2)] {
            let field = gf(q);
            let want = poly_avg_exact(q as u64, m, l);
            for b in all_bases(&field, m as usize) {
                assert_eq!(poly_avg_bruteforce(&b, l, false, &ceil()).unwrap(), want, "b={b}");
                assert_eq!(
                    poly_avg_bruteforce(&b, l, true, &ceil()).unwrap(),
                    poly_avg_exact_with(q as u64, m, l, true)
                );
            }
        }
    }

    #[test]
    fn variance_two_pass_and_restricted_population() {
        let field = gf(3);
        for b in all_bases(&field, 2) {
            let counts = oracle(&b, 3, false);
            let n = counts.len() as i64;
            let mean = Rational::new(counts.iter().sum::<u64>().into(), n.into());
            let var = counts
                .iter()
                .map(|&c| {
                    let d = from_int(c) - &mean;
                    &d * &d
                })
                .fold(from_int(0), |a, x| a + x)
                / from_int(n);
            let r = poly_stat_report(&b, 3, false, &ceil()).unwrap();
            assert_eq!(r.variance, var);
            r.validate(Some(&b)).unwrap();
        }
        // Restricted counts against a direct gcd filter.
        let b = FqPoly::from_ints(&field, &[1, 0, 1]);
        let want: Vec<u64> = enumerate_polys(&field, PolyRange::Below(4), u64::MAX)
            .unwrap()
            .filter(|f| !f.is_zero() && f.gcd(&b).unwrap().degree() == Some(0))
            .map(|f| poly_trunc_count(&f, &b, false).unwrap())
            .collect();
        let r = poly_restricted_stats(&b, 2, false, &ceil()).unwrap();
        assert_eq!(r.population, want.len() as u64);
        assert_eq!(r.mean, Rational::new(want.iter().sum::<u64>().into(), (want.len() as u64).into()));
    }

    #[test]
    fn witnesses_attain_max() {
        let field = gf(2);
        let t = PolyTruncTable::build(&FqPoly::t(&field), 8, false, &ceil()).unwrap();
        let (max, w) = t.max_with_witnesses(5);
        assert!(!w.is_empty());
        for f in w {
            assert_eq!(poly_trunc_count(&f, t.base(), false).unwrap(), max);
        }
    }

    #[test]
    fn ceiling_enforced() {
        let t = FqPoly::t(&gf(2));
        let c = Ceilings::default().with_scan(1 << 10);
        assert!(PolyTruncTable::build(&t, 11, false, &c).unwrap_err().is_resource_limit());
        assert!(PolyTruncTable::build(&t, 10, false, &c).is_ok());
        assert_eq!(
            PolyTruncTable::build(&FqPoly::one(&gf(2)), 3, false, &c).unwrap_err(),
            Error::BaseDegreeZero
        );
    }
}
