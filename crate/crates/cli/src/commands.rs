//! One function per subcommand, each producing a JSON result and a table.

use std::fs;

use serde::Serialize;
use serde_json::{json, Value};
use trunclab::cramer::{
    borel_cantelli_partial, exact_distribution, monte_carlo, predict_max, tail_approx, BcFamily,
    MaxMethod, ModelKind, ModelParams,
};
use trunclab::exact::{to_f64, Rational};
use trunclab::extremal::{
    angell_godwin, enumerate_chains_int, enumerate_chains_poly, max_trunc_scan_int,
    max_trunc_scan_poly, ChainReport,
};
use trunclab::ff::parse::{parse_field, parse_poly, parse_spec};
use trunclab::ff::FqPoly;
use trunclab::int_trunc::{int_stat_report, CorrelationQuery, IntStatReport, Weight};
use trunclab::poly_trunc::{poly_stat_report, PolyCorrelationQuery, PolyStatReport, PolyWeight};
use trunclab::report::{float_string, Predictions};
use trunclab::{Ceilings, Error};

use crate::args::*;

/// Longest model accepted by `model`; the exact DP is quadratic in ℓ.
pub const MODEL_DIGITS_LIMIT: u32 = 2_000;

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Invalid(s) => f.write_str(s),
        }
    }
}

pub type Outcome = Result<Output, Failure>;

/// A command's result: JSON payload plus fixed-column rows for table and CSV.
pub struct Output {
    pub result: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// False when a budget stopped the work early.
    pub complete: bool,
}

impl Output {
    fn new(result: impl Serialize, columns: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Output { result: serde_json::to_value(result).unwrap(), columns, rows, complete: true }
    }
}

pub struct Context {
    pub ceilings: Ceilings,
    pub seed: u64,
    pub strict: bool,
}

fn f(x: f64) -> String {
    float_string(x)
}

fn kv(k: impl Into<String>, v: impl ToString) -> Vec<String> {
    vec![k.into(), v.to_string()]
}

fn prediction_rows(prefix: &str, p: &Predictions) -> Vec<Vec<String>> {
    p.iter()
        .map(|(label, v)| kv(format!("{prefix}.{label}"), f(v.to_f64())))
        .collect()
}

fn stat_rows(
    population: u64,
    mean: &Rational,
    second: &Rational,
    variance: &Rational,
    max: u64,
) -> Vec<Vec<String>> {
    vec![
        kv("population", population),
        kv("mean", mean),
        kv("mean_decimal", f(to_f64(mean))),
        kv("second_moment", second),
        kv("variance", variance),
        kv("variance_decimal", f(to_f64(variance))),
        kv("max", max),
    ]
}

fn int_rows(r: &IntStatReport) -> Vec<Vec<String>> {
    let mut rows = stat_rows(r.population, &r.mean, &r.second_moment, &r.variance, r.max);
    rows.extend(prediction_rows("predicted_mean", &r.predicted_mean));
    rows.extend(prediction_rows("predicted_variance", &r.predicted_variance));
    if let Some(s) = &r.restricted {
        rows.push(kv("restricted.population", s.population));
        rows.push(kv("restricted.mean", &s.mean));
        rows.push(kv("restricted.variance", &s.variance));
    }
    rows
}

fn poly_rows(r: &PolyStatReport) -> Vec<Vec<String>> {
    let mut rows = stat_rows(r.population, &r.mean, &r.second_moment, &r.variance, r.max);
    rows.extend(prediction_rows("predicted_mean", &r.predicted_mean));
    rows.extend(prediction_rows("predicted_variance", &r.predicted_variance));
    if let Some(s) = &r.restricted {
        rows.push(kv("restricted.population", s.population));
        rows.push(kv("restricted.mean", &s.mean));
        rows.push(kv("restricted.variance", &s.variance));
    }
    rows
}

const KV: [&str; 2] = ["quantity", "value"];

pub fn field_spec(field: &FieldArgs) -> String {
    match &field.modulus {
        Some(m) => format!("q={};mod={m}", field.q),
        None => format!("q={}", field.q),
    }
}

fn poly_base(field: &FieldArgs, base: &str) -> Result<FqPoly, Failure> {
    let field = parse_field(&field_spec(field))?;
    Ok(parse_poly(&field, base)?)
}

enum Target {
    Int(u64),
    Poly(FqPoly),
}

fn target(t: &TargetArgs) -> Result<Target, Failure> {
    if t.base.trim_start().starts_with("q=") {
        return Ok(Target::Poly(parse_spec(&t.base)?));
    }
    match t.q {
        Some(q) => {
            let field = FieldArgs { q, modulus: t.modulus.clone() };
            Ok(Target::Poly(poly_base(&field, &t.base)?))
        }
        None => t
            .base
            .trim()
            .parse()
            .map(Target::Int)
            .map_err(|_| Failure::Invalid(format!("integer base expected, got {:?}", t.base))),
    }
}

pub fn int_stats(a: &IntArgs, cx: &Context) -> Outcome {
    let r = int_stat_report(a.base, a.digits, &cx.ceilings)?;
    let rows = int_rows(&r);
    Ok(Output::new(r, KV.to_vec(), rows))
}

pub fn poly_stats(a: &PolyArgs, cx: &Context) -> Outcome {
    let b = poly_base(&a.field, &a.base)?;
    let r = poly_stat_report(&b, a.digits, cx.strict, &cx.ceilings)?;
    let rows = poly_rows(&r);
    Ok(Output::new(r, KV.to_vec(), rows))
}

pub fn int_corr(a: &IntCorrArgs, cx: &Context) -> Outcome {
    let weight = match a.weight {
        IntWeight::Prime => Weight::PrimeIndicator,
        IntWeight::VonMangoldt => Weight::VonMangoldt,
    };
    let mut q = CorrelationQuery::new(a.base, a.h1, a.h2, weight);
    q.y1 = a.y1;
    q.y2 = a.y2;
    let sum = q.sum(&cx.ceilings)?.to_f64();
    let main = q.main_term()?;
    let rows = vec![kv("sum", f(sum)), kv("main_term", f(main)), kv("ratio", f(sum / main))];
    let result = json!({
        "query": q,
        "sum": f(sum),
        "main_term": f(main),
        "ratio": f(sum / main),
    });
    Ok(Output::new(result, KV.to_vec(), rows))
}

pub fn poly_corr(a: &PolyCorrArgs, cx: &Context) -> Outcome {
    let b = poly_base(&a.field, &a.base)?;
    let weight = match a.weight {
        PolyWeightArg::Irreducible => PolyWeight::IrreducibleIndicator,
        PolyWeightArg::VonMangoldt => PolyWeight::VonMangoldt,
    };
    let q = PolyCorrelationQuery::new(b, a.h1, a.h2, weight);
    let sum = q.sum(&cx.ceilings)?;
    let main = q.main_term()?;
    let ratio = sum as f64 / main;
    let rows = vec![kv("sum", sum), kv("main_term", f(main)), kv("ratio", f(ratio))];
    let result = json!({ "sum": sum.to_string(), "main_term": f(main), "ratio": f(ratio) });
    Ok(Output::new(result, KV.to_vec(), rows))
}

fn chain_rows(r: &ChainReport) -> Vec<Vec<String>> {
    let mut rows: Vec<Vec<String>> =
        r.histogram.iter().map(|(len, n)| vec![len.to_string(), n.to_string(), String::new()]).collect();
    for e in &r.longest_elements {
        rows.push(vec![r.longest_length.to_string(), String::new(), e.clone()]);
    }
    rows
}

pub fn chains(a: &TargetArgs, cx: &Context) -> Outcome {
    let budget = cx.ceilings.node_budget;
    let report = match target(a)? {
        Target::Int(b) => {
            let c = enumerate_chains_int(b, budget)?;
            c.verify().map_err(Failure::Invalid)?;
            c.report()
        }
        Target::Poly(b) => {
            let c = enumerate_chains_poly(&b, cx.strict, budget)?;
            c.verify().map_err(Failure::Invalid)?;
            c.report()
        }
    };
    let rows = chain_rows(&report);
    let complete = report.search_exhausted;
    let mut out = Output::new(report, vec!["length", "count", "longest_element"], rows);
    out.complete = complete;
    Ok(out)
}

pub fn max_scan(a: &ScanArgs, cx: &Context) -> Outcome {
    let r = match target(&a.target)? {
        Target::Int(b) => max_trunc_scan_int(b, a.digits, &cx.ceilings)?,
        Target::Poly(b) => max_trunc_scan_poly(&b, a.digits, cx.strict, &cx.ceilings)?,
    };
    let rows = r.witnesses.iter().map(|w| vec![r.max.to_string(), w.clone()]).collect();
    Ok(Output::new(r, vec!["max", "witness"], rows))
}

fn model_kind(t: &ModelTarget) -> Result<ModelKind, Failure> {
    match (t.base, t.q, t.m) {
        (Some(base), None, None) => Ok(ModelKind::Int { base, digits: t.digits }),
        (None, Some(q), Some(m)) => Ok(ModelKind::Poly { q, m, digits: t.digits }),
        _ => Err(Failure::Invalid("give --base, or both --q and --m".into())),
    }
}

pub fn model(a: &ModelArgs, cx: &Context) -> Outcome {
    let kind = model_kind(&a.target)?;
    if kind.digits() > MODEL_DIGITS_LIMIT {
        return Err(Error::CeilingExceeded {
            what: "model digits ℓ",
            value: kind.digits().to_string(),
            limit: MODEL_DIGITS_LIMIT.to_string(),
        }
        .into());
    }
    let params = ModelParams::new(kind)?;
    let table = exact_distribution(&params);
    let mc = (a.samples > 0).then(|| monte_carlo(&params, a.samples, cx.seed));
    let l = params.digits();
    let mut tails = Vec::new();
    let mut rows = Vec::new();
    for k in 0..=l {
        let p = &table.distribution[k as usize];
        let tail = table.tail(k);
        let ie = table.tail_inclusion_exclusion(k);
        if tail != ie {
            return Err(Failure::Invalid(format!("inclusion–exclusion disagrees with the DP at k={k}")));
        }
        let approx = tail_approx(&params, k);
        tails.push(json!({
            "k": k,
            "exact": { "num": tail.numer().to_string(), "den": tail.denom().to_string() },
            "exact_decimal": f(to_f64(&tail)),
            "tail_approx": f(approx),
        }));
        let mut row = vec![
            k.to_string(),
            p.numer().to_string(),
            p.denom().to_string(),
            f(to_f64(p)),
            f(to_f64(&tail)),
            f(approx),
        ];
        if let Some(mc) = &mc {
            row.push(f(mc.frequencies[k as usize]));
            row.push(f(mc.standard_errors[k as usize]));
        }
        rows.push(row);
    }
    let mut columns = vec!["k", "p_num", "p_den", "p", "tail", "tail_approx"];
    if mc.is_some() {
        columns.extend(["mc_frequency", "mc_standard_error"]);
    }
    let moments: Vec<Value> = table
        .binomial_moments
        .iter()
        .map(|m| json!({ "num": m.numer().to_string(), "den": m.denom().to_string() }))
        .collect();
    let result = json!({
        "params": params,
        "mean": f(to_f64(&params.mean())),
        "distribution": table.entries(),
        "binomial_moments": moments,
        "tails": tails,
        "monte_carlo": mc,
    });
    Ok(Output::new(result, columns, rows))
}

pub fn predict(a: &ModelTarget) -> Outcome {
    let kind = model_kind(a)?;
    let lw = predict_max(&kind, MaxMethod::LambertW)?;
    let simple = predict_max(&kind, MaxMethod::Simplified)?;
    let mut rows = vec![kv("lambert_w", f(lw)), kv("simplified", f(simple)), kv("ratio", f(lw / simple))];
    let mut result = json!({
        "kind": kind,
        "lambert_w": f(lw),
        "simplified": f(simple),
        "ratio": f(lw / simple),
    });
    if let ModelKind::Int { base, .. } = kind {
        let ag = angell_godwin(base)?;
        rows.push(kv("angell_godwin", f(ag)));
        result["angell_godwin"] = json!(f(ag));
    }
    Ok(Output::new(result, KV.to_vec(), rows))
}

pub fn bc_sum(a: &BcArgs) -> Outcome {
    let family = match a.m {
        Some(m) => BcFamily::Poly { m },
        None => BcFamily::Int,
    };
    let terms = borel_cantelli_partial(family, a.digits, a.limit)?;
    let rows = terms
        .iter()
        .map(|t| {
            vec![t.parameter.to_string(), f(t.p_all), f(t.population), f(t.summand), f(t.partial_sum)]
        })
        .collect();
    let result = json!({ "family": family, "digits": a.digits, "limit": a.limit, "terms": terms });
    Ok(Output::new(result, vec!["parameter", "p_all", "population", "summand", "partial_sum"], rows))
}

fn deviation_rows(label: &str, empirical: &Rational, p: &Predictions) -> Vec<Vec<String>> {
    let e = to_f64(empirical);
    p.iter()
        .map(|(name, v)| {
            let v = v.to_f64();
            vec![label.into(), f(e), name.clone(), f(v), f((e - v).abs()), f((e - v).abs() / v.abs())]
        })
        .collect()
}

pub fn compare(a: &ScanArgs, cx: &Context) -> Outcome {
    let (report, rows) = match target(&a.target)? {
        Target::Int(b) => {
            let r = int_stat_report(b, a.digits, &cx.ceilings)?;
            let mut rows = deviation_rows("mean", &r.mean, &r.predicted_mean);
            rows.extend(deviation_rows("variance", &r.variance, &r.predicted_variance));
            (serde_json::to_value(r).unwrap(), rows)
        }
        Target::Poly(b) => {
            let r = poly_stat_report(&b, a.digits, cx.strict, &cx.ceilings)?;
            let mut rows = deviation_rows("mean", &r.mean, &r.predicted_mean);
            rows.extend(deviation_rows("variance", &r.variance, &r.predicted_variance));
            (serde_json::to_value(r).unwrap(), rows)
        }
    };
    let columns = vec!["statistic", "empirical", "prediction", "predicted", "abs_dev", "rel_dev"];
    let table: Vec<Value> = rows
        .iter()
        .map(|r| columns.iter().zip(r).map(|(c, v)| (c.to_string(), json!(v))).collect())
        .collect();
    Ok(Output::new(json!({ "report": report, "comparison": table }), columns, rows))
}

/// Re-parse a report and check the invariants its subcommand guarantees.
pub fn validate(a: &ValidateArgs) -> Outcome {
    let text = fs::read_to_string(&a.input)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", a.input.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Failure::Invalid(e.to_string()))?;
    let version = doc["config"]["schema_version"].as_u64();
    if version != Some(crate::SCHEMA_VERSION as u64) {
        return Err(Failure::Invalid(format!("unsupported schema version {version:?}")));
    }
    let sub = doc["config"]["subcommand"].as_str().unwrap_or_default().to_string();
    let result = doc["result"].clone();
    let bad = |e: String| Failure::Invalid(format!("{sub} report invalid: {e}"));
    match sub.as_str() {
        "int-avg" | "int-var" => {
            let r: IntStatReport = serde_json::from_value(result).map_err(|e| bad(e.to_string()))?;
            r.validate().map_err(bad)?;
        }
        "poly-avg" | "poly-var" => {
            let r: PolyStatReport = serde_json::from_value(result).map_err(|e| bad(e.to_string()))?;
            let field = parse_field(&r.field)?;
            let b = parse_poly(&field, &r.base)?;
            r.validate(Some(&b)).map_err(bad)?;
        }
        "compare" => {
            let report = result["report"].clone();
            if report.get("field").is_some() {
                let r: PolyStatReport = serde_json::from_value(report).map_err(|e| bad(e.to_string()))?;
                let b = parse_poly(&parse_field(&r.field)?, &r.base)?;
                r.validate(Some(&b)).map_err(bad)?;
            } else {
                let r: IntStatReport = serde_json::from_value(report).map_err(|e| bad(e.to_string()))?;
                r.validate().map_err(bad)?;
            }
        }
        "chains" => {
            let r: ChainReport = serde_json::from_value(result).map_err(|e| bad(e.to_string()))?;
            if r.histogram.values().sum::<u64>() != r.total_count {
                return Err(bad("histogram does not sum to total_count".into()));
            }
            let top = r.histogram.keys().next_back().copied().unwrap_or(0);
            if top != r.longest_length || r.histogram.get(&top).copied().unwrap_or(0) != r.longest_elements.len() as u64 {
                return Err(bad("longest elements disagree with the histogram".into()));
            }
        }
        "model" => {
            let entries: Vec<trunclab::cramer::DistEntry> =
                serde_json::from_value(result["distribution"].clone()).map_err(|e| bad(e.to_string()))?;
            let mut total = Rational::from_integer(0.into());
            for e in entries {
                let num = e.p_num.parse().map_err(|_| bad("bad numerator".into()))?;
                let den = e.p_den.parse().map_err(|_| bad("bad denominator".into()))?;
                total += Rational::new(num, den);
            }
            if total != Rational::from_integer(1.into()) {
                return Err(bad("distribution does not sum to 1".into()));
            }
        }
        "int-corr" | "poly-corr" | "max-scan" | "predict-max" | "bc-sum" => {}
        other => return Err(Failure::Invalid(format!("unknown subcommand {other:?}"))),
    }
    let rows = vec![kv("subcommand", &sub), kv("valid", true)];
    Ok(Output::new(json!({ "subcommand": sub, "valid": true }), KV.to_vec(), rows))
}
