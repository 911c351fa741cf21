//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed in order; the
//! process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use trunclab::cramer::{
    exact_distribution, lambert_residual, monte_carlo, predict_max, sym_sums, MaxMethod, ModelKind,
    ModelParams,
};
use trunclab::exact::{harmonic_exact, ratio, to_f64, Rational};
use trunclab::extremal::enumerate_chains_int;
use trunclab::ff::{enumerate_polys, FieldSpec, FqPoly, PolyRange};
use trunclab::int_trunc::{avg_bruteforce, avg_identity, avg_predicted, CorrelationQuery, MeanRegime, Weight};
use trunclab::poly_trunc::{
    poly_avg_bruteforce, poly_avg_exact, poly_avg_main_term, poly_avg_main_term_exact,
    poly_var_bruteforce, poly_var_predicted_for_base, PolyCorrelationQuery, PolyVarianceRegime,
    PolyWeight,
};
use trunclab::Ceilings;

type Check = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1() -> Check {
    let c = Ceilings::default();
    let mut cases = 0;
    for b in 2..=16u64 {
        let mut l = 1;
        while b.checked_pow(l).is_some_and(|n| n <= 1_000_000) {
            let brute = avg_bruteforce(b, l, &c).map_err(|e| e.to_string())?;
            let identity = avg_identity(b, l, &c).map_err(|e| e.to_string())?;
            if brute != identity {
                return Err(format!("b={b} ℓ={l}: {brute} vs {identity}"));
            }
            cases += 1;
            l += 1;
        }
    }
    Ok(format!("{cases} (b, ℓ) pairs equal"))
}

fn c2() -> Check {
    let c = Ceilings::default();
    let mut cases = 0;
    for q in [2u32, 3, 5] {
        let field = FieldSpec::of_order(q).map_err(|e| e.to_string())?;
        for m in [1u32, 2] {
            let bases: Vec<FqPoly> = enumerate_polys(&field, PolyRange::Exact(m as usize), u64::MAX)
                .map_err(|e| e.to_string())?
                .collect();
            let mut l = 1;
            while (q as u64).pow(m * l) <= 1_000_000 {
                let exact = poly_avg_exact(q as u64, m, l);
                for b in &bases {
                    let brute = poly_avg_bruteforce(b, l, false, &c).map_err(|e| e.to_string())?;
                    if brute != exact {
                        return Err(format!("q={q} m={m} ℓ={l} b={b:?}: {brute} vs {exact}"));
                    }
                    cases += 1;
                }
                l += 1;
            }
        }
    }
    Ok(format!("{cases} (q, b, ℓ) cases equal, identical across bases"))
}

fn c3() -> Check {
    let mut worst = 0.0f64;
    for q in 2..=31u64 {
        if trunclab::ff::prime_power(q as u32).is_err() {
            continue;
        }
        for m in 1..=3 {
            for l in 1..=5 {
                let exact = poly_avg_exact(q, m, l);
                let main = poly_avg_main_term_exact(q, m, l);
                let err = (exact - main).abs();
                let bound = ratio(1, q as i64 - 1);
                if err > bound {
                    return Err(format!("q={q} m={m} ℓ={l}: error {err} > {bound}"));
                }
                worst = worst.max(to_f64(&(err * Rational::from_integer((q - 1).into()))));
                let float = (to_f64(&poly_avg_exact(q, m, l)) - poly_avg_main_term(q, m, l)).abs();
                if float > 1.0 / (q - 1) as f64 {
                    return Err(format!("q={q} m={m} ℓ={l}: float error {float}"));
                }
            }
        }
    }
    Ok(format!("largest error is {worst:.4} of the bound"))
}

fn c4() -> Check {
    for q in 2..=31u64 {
        if trunclab::ff::prime_power(q as u32).is_err() {
            continue;
        }
        for l in 1..=50u32 {
            let want = ratio(q as i64 - 1, q as i64) * harmonic_exact(l as u64 - 1, 1);
            if poly_avg_main_term_exact(q, 1, l) != want {
                return Err(format!("q={q} ℓ={l}"));
            }
        }
    }
    Ok("exact for every prime power q ≤ 31 and ℓ ≤ 50".into())
}

fn c5() -> Check {
    let chains = enumerate_chains_int(10, Ceilings::default().node_budget).map_err(|e| e.to_string())?;
    let r = chains.report();
    let longest_ok = r.longest_length == 24 && r.longest_elements == ["357686312646216567629137"];
    let b3 = enumerate_chains_int(3, u64::MAX).map_err(|e| e.to_string())?;
    let b3: Vec<String> = b3.elements().map(|n| n.to_string()).collect();
    let b2 = enumerate_chains_int(2, u64::MAX).map_err(|e| e.to_string())?.report().total_count;
    ensure(
        r.search_exhausted && longest_ok && b3 == ["2", "5", "23"] && b2 == 0,
        format!(
            "base 10: exhausted={} longest {}-digit {:?}, {} chains; base 3: {b3:?}; base 2: {b2}",
            r.search_exhausted, r.longest_length, r.longest_elements, r.total_count
        ),
    )
}

fn c6() -> Check {
    let c = Ceilings::default();
    let mut prev = f64::INFINITY;
    let mut parts = Vec::new();
    let mut ok = true;
    for b in [100u64, 1_000, 10_000] {
        let exact = to_f64(&avg_identity(b, 2, &c).map_err(|e| e.to_string())?);
        let diff = (exact - avg_predicted(b, 2, MeanRegime::LargeBase)).abs();
        let scaled = diff * (b as f64).ln().powi(3);
        ok &= scaled <= 5.0 && diff < prev;
        prev = diff;
        parts.push(format!("b={b}: |Δ|={diff:.3e}, |Δ|·ln³b={scaled:.3}"));
    }
    ensure(ok, parts.join("; "))
}

fn c7() -> Check {
    let c = Ceilings::default();
    let ratio_at = |b: u64| -> Result<(f64, f64), String> {
        let q = CorrelationQuery::new(b, 1, 2, Weight::PrimeIndicator);
        let sum = q.sum(&c).map_err(|e| e.to_string())?.to_f64();
        Ok((sum, sum / q.main_term().map_err(|e| e.to_string())?))
    };
    let (s10, r10) = ratio_at(10)?;
    let (_, r1000) = ratio_at(1000)?;
    ensure(
        s10 == 11.0 && (0.75..=1.25).contains(&r1000) && (r1000 - 1.0).abs() < (r10 - 1.0).abs(),
        format!("b=10: sum {s10}, ratio {r10:.4}; b=1000: ratio {r1000:.4}"),
    )
}

fn c8() -> Check {
    let c = Ceilings::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for q in [9u32, 16, 25, 27] {
        let field = FieldSpec::of_order(q).map_err(|e| e.to_string())?;
        let query = PolyCorrelationQuery::new(FqPoly::t(&field), 2, 3, PolyWeight::IrreducibleIndicator);
        let sum = query.sum(&c).map_err(|e| e.to_string())?;
        let r = sum as f64 / query.main_term().map_err(|e| e.to_string())?;
        let tol = 3.0 / (q as f64).sqrt();
        ok &= (r - 1.0).abs() <= tol;
        parts.push(format!("q={q}: {r:.4} (±{tol:.3})"));
    }
    ensure(ok, parts.join("; "))
}

fn c9() -> Check {
    let field = FieldSpec::of_order(101).map_err(|e| e.to_string())?;
    let b = FqPoly::t(&field);
    let var = to_f64(&poly_var_bruteforce(&b, 3, false, &Ceilings::default()).map_err(|e| e.to_string())?);
    let pred = poly_var_predicted_for_base(&b, 3, PolyVarianceRegime::LargeQ).map_err(|e| e.to_string())?;
    let r = var / pred;
    ensure((0.6..=1.6).contains(&r), format!("variance {var:.6}, predicted {pred:.6}, ratio {r:.4}"))
}

fn c10() -> Check {
    for b in [5u64, 10, 50] {
        for l in [5u32, 20, 100] {
            let params = ModelParams::new(ModelKind::Int { base: b, digits: l }).map_err(|e| e.to_string())?;
            let table = exact_distribution(&params);
            let total: Rational = table.distribution.iter().sum();
            if !total.is_one() {
                return Err(format!("b={b} ℓ={l}: Σ P(k) = {total}"));
            }
            for k in 0..=l {
                if table.tail(k) != table.tail_inclusion_exclusion(k) {
                    return Err(format!("b={b} ℓ={l} k={k}: tails differ"));
                }
            }
        }
    }
    for l in 1..=10u32 {
        let n = (l - 1) as usize;
        let mut e = vec![Rational::zero(); n + 1];
        for mask in 0u32..1 << n {
            let term: Rational = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ratio(1, i as i64 + 1))
                .product();
            e[mask.count_ones() as usize] += term;
        }
        if sym_sums(l) != e {
            return Err(format!("sym_sums({l}) differs from subset enumeration"));
        }
    }
    Ok("tails equal for all k over 9 models; Σ P(k) = 1; sym_sums match for ℓ ≤ 10".into())
}

fn c11() -> Check {
    let params = ModelParams::new(ModelKind::Int { base: 10, digits: 5 }).map_err(|e| e.to_string())?;
    let table = exact_distribution(&params);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| monte_carlo(&params, 100_000, 20_240_601))
    };
    let mc = run(1);
    let mut worst = 0.0f64;
    for (k, p) in table.distribution.iter().enumerate() {
        let p = to_f64(p);
        let se = (p * (1.0 - p) / 100_000.0).sqrt();
        let z = (mc.frequencies[k] - p).abs() / se;
        worst = worst.max(z);
    }
    let identical = [2, 3, 8].iter().all(|&t| run(t) == mc);
    ensure(
        worst <= 4.0 && identical,
        format!("largest deviation {worst:.2} standard errors; identical across 1/2/3/8 threads: {identical}"),
    )
}

fn c12() -> Check {
    let mut worst = 0.0f64;
    for i in 0..100 {
        let x = 10f64.powf(-3.0 + 9.0 * i as f64 / 99.0);
        worst = worst.max(lambert_residual(x).map_err(|e| e.to_string())?);
    }
    let kind = ModelKind::Int { base: 10, digits: 100_000 };
    let lw = predict_max(&kind, MaxMethod::LambertW).map_err(|e| e.to_string())?;
    let simple = predict_max(&kind, MaxMethod::Simplified).map_err(|e| e.to_string())?;
    let r = lw / simple;
    ensure(
        worst <= 1e-12 && (0.8..=1.25).contains(&r),
        format!("largest residual {worst:.2e}; LambertW {lw:.1} / Simplified {simple:.1} = {r:.4}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("exact integer average identity", c1),
        ("exact polynomial average identity", c2),
        ("main-term error bound", c3),
        ("m = 1 harmonic specialization", c4),
        ("base-10 truncatable prime enumeration", c5),
        ("large-base mean prediction", c6),
        ("integer correlation convergence", c7),
        ("polynomial correlation convergence", c8),
        ("variance prediction at q = 101", c9),
        ("random-model algebra", c10),
        ("Monte Carlo consistency", c11),
        ("Lambert W and maximum predictors", c12),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (verdict, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {:>2} {verdict}: {name} [{secs:.1}s] {detail}", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
