//! Breadth-first enumeration of truncation chains.
//!
//! Level `k` holds the chains with exactly `k` digits. Each level is expanded
//! in parallel and sorted before the next one starts, so results do not
//! depend on the number of worker threads.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ff::{decode, is_irreducible, parse, FqPoly};
use crate::int_trunc::{check_base, digits, trunc_count};
use crate::poly_trunc::{base_degree, base_expansion, poly_trunc_count};
use crate::primes::{is_prime, BigNat};

/// Summary of a chain enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub base: String,
    pub total_count: u64,
    pub longest_length: u32,
    pub longest_elements: Vec<String>,
    /// Number of chains of each digit count.
    pub histogram: BTreeMap<u32, u64>,
    pub search_exhausted: bool,
    /// Candidates tested, counted against the node budget.
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_def: Option<bool>,
}

impl ChainReport {
    fn new<T>(base: String, levels: &[Vec<T>], exhausted: bool, nodes: u64, show: impl Fn(&T) -> String) -> Self {
        let histogram: BTreeMap<u32, u64> = levels
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_empty())
            .map(|(k, l)| (k as u32 + 1, l.len() as u64))
            .collect();
        let longest = levels.iter().rposition(|l| !l.is_empty());
        ChainReport {
            base,
            total_count: histogram.values().sum(),
            longest_length: longest.map_or(0, |k| k as u32 + 1),
            longest_elements: longest.map_or(Vec::new(), |k| levels[k].iter().map(show).collect()),
            histogram,
            search_exhausted: exhausted,
            nodes,
            strict_def: None,
        }
    }
}

/// Runs the level loop; `expand` maps a chain to its chain children.
fn bfs<T, F>(seeds: Vec<T>, fanout: u64, budget: u64, expand: F) -> (Vec<Vec<T>>, bool, u64)
where
    T: Send + Sync,
    F: Fn(usize, &T) -> Vec<T> + Sync,
{
    let mut levels = vec![seeds];
    let mut nodes = fanout;
    loop {
        let frontier = levels.last().unwrap();
        if frontier.is_empty() {
            levels.pop();
            return (levels, true, nodes);
        }
        let cost = frontier.len() as u64 * fanout;
        if nodes + cost > budget {
            return (levels, false, nodes);
        }
        nodes += cost;
        let k = levels.len();
        let next: Vec<T> = frontier.par_iter().flat_map_iter(|x| expand(k, x)).collect();
        levels.push(next);
    }
}

/// Left-truncatable primes in base `b`: every suffix is prime and no digit is 0.
#[derive(Debug, Clone)]
pub struct IntChains {
    pub base: u64,
    pub levels: Vec<Vec<BigNat>>,
    pub exhausted: bool,
    pub nodes: u64,
}

pub fn enumerate_chains_int(b: u64, node_budget: u64) -> Result<IntChains> {
    check_base(b)?;
    let seeds: Vec<BigNat> = (1..b)
        .filter(|&d| is_prime(&BigNat::from(d)).is_prime())
        .map(BigNat::from)
        .collect();
    let base = BigUint::from(b);
    let (levels, exhausted, nodes) = bfs(seeds, b - 1, node_budget, |k, x| {
        let shift = base.pow(k as u32);
        let mut kids: Vec<BigNat> = (1..b)
            .map(|a| BigNat::from(&shift * a + x.as_biguint()))
            .filter(|n| is_prime(n).is_prime())
            .collect();
        kids.sort();
        kids
    });
    let mut levels = levels;
    for l in &mut levels {
        l.sort();
    }
    Ok(IntChains { base: b, levels, exhausted, nodes })
}

impl IntChains {
    pub fn report(&self) -> ChainReport {
        ChainReport::new(self.base.to_string(), &self.levels, self.exhausted, self.nodes, |n| {
            n.to_string()
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = &BigNat> {
        self.levels.iter().flatten()
    }

    /// Recheck every chain through the digit and truncation machinery.
    pub fn verify(&self) -> std::result::Result<(), String> {
        self.levels.par_iter().enumerate().try_for_each(|(k, level)| {
            level.par_iter().try_for_each(|n| {
                let d = digits(n, self.base).map_err(|e| e.to_string())?;
                if d.len() != k + 1 || d.digits.contains(&0) {
                    return Err(format!("{n} does not have {} nonzero digits", k + 1));
                }
                if trunc_count(n, self.base).map_err(|e| e.to_string())? != d.len() as u64 {
                    return Err(format!("{n} has a composite truncation"));
                }
                Ok(())
            })
        })
    }
}

/// Left-truncatable irreducibles in base `b(T)`.
///
/// With `m = deg b`, a chain with `ℓ` nonzero digits has every truncation
/// with at least `min_k` digits irreducible, where `min_k = 1` for `m ≥ 2`
/// and `min_k = 2` for `m = 1` (constants are never irreducible) or under
/// the strict definition. One-digit chains below `min_k` hold vacuously.
#[derive(Debug, Clone)]
pub struct PolyChains {
    pub base: FqPoly,
    pub strict: bool,
    pub levels: Vec<Vec<FqPoly>>,
    pub exhausted: bool,
    pub nodes: u64,
}

fn sort_key(f: &FqPoly) -> Vec<u32> {
    let mut key: Vec<u32> = f.coeffs().iter().rev().map(|c| c.0).collect();
    key.insert(0, f.coeffs().len() as u32);
    key
}

pub(crate) fn min_digits(m: usize, strict: bool) -> usize {
    if m == 1 || strict {
        2
    } else {
        1
    }
}

pub fn enumerate_chains_poly(b: &FqPoly, strict: bool, node_budget: u64) -> Result<PolyChains> {
    let m = base_degree(b)?;
    let field = b.field();
    let q = field.order() as u64;
    let qm = q.pow(m as u32);
    let digit_set: Vec<FqPoly> = (1..qm).map(|a| FqPoly::new(field, decode(field, a, m))).collect();
    let min_k = min_digits(m, strict);
    let seeds: Vec<FqPoly> = digit_set
        .iter()
        .filter(|a| min_k > 1 || is_irreducible(a))
        .cloned()
        .collect();
    let (levels, exhausted, nodes) = bfs(seeds, qm - 1, node_budget, |k, f| {
        let shift = b.pow(k as u32);
        let mut kids: Vec<FqPoly> = digit_set
            .iter()
            .map(|a| a.mul(&shift).unwrap().add(f).unwrap())
            .filter(is_irreducible)
            .collect();
        kids.sort_by_key(sort_key);
        kids
    });
    let mut levels = levels;
    for l in &mut levels {
        l.sort_by_key(sort_key);
    }
    Ok(PolyChains { base: b.clone(), strict, levels, exhausted, nodes })
}

impl PolyChains {
    pub fn report(&self) -> ChainReport {
        let mut r = ChainReport::new(
            parse::spec_string(&self.base),
            &self.levels,
            self.exhausted,
            self.nodes,
            parse::coeff_list,
        );
        r.strict_def = Some(self.strict);
        r
    }

    pub fn elements(&self) -> impl Iterator<Item = &FqPoly> {
        self.levels.iter().flatten()
    }

    /// Recheck every chain by explicit expansion and truncation counting.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let m = self.base.degree().unwrap_or(0);
        let min_k = min_digits(m, self.strict);
        // Skipping k = 1 in the count is exactly the strict definition.
        let skip_first = min_k == 2;
        self.levels.par_iter().enumerate().try_for_each(|(k, level)| {
            level.par_iter().try_for_each(|f| {
                let e = base_expansion(f, &self.base).map_err(|e| e.to_string())?;
                if e.len() != k + 1 || e.digits.iter().any(FqPoly::is_zero) {
                    return Err(format!("{f} does not have {} nonzero digits", k + 1));
                }
                let want = (k + 1 + 1).saturating_sub(min_k) as u64;
                let got = poly_trunc_count(f, &self.base, skip_first).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(format!("{f} has {got} irreducible truncations, expected {want}"));
                }
                Ok(())
            })
        })
    }
}
