//! Text format for fields and polynomials.
//!
//! ```text
//! spec   := "q=" INT [ ";mod=" LIST ] ";f=" POLY
//! POLY   := LIST | EXPR
//! LIST   := "[" coeff ("," coeff)* "]" | "[]"        little-endian
//! coeff  := INT                                     prime-subfield element
//!         | "[" INT ("," INT)* "]"                  coordinates over GF(p)
//! EXPR   := term ("+" term)*                        e.g. "T^3 + 2*T + 1"
//! term   := [INT "*"] "T" ["^" INT] | INT
//! ```
//! The modulus list holds GF(p) coefficients of a monic polynomial of degree
//! `n` and defaults to the smallest irreducible one.

use serde_json::Value;

use crate::error::{Error, Result};

use super::field::{prime_power, FieldSpec, FqElem};
use super::poly::FqPoly;

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_u32(v: &Value) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| err(format!("expected a non-negative integer, got {v}")))
}

fn parse_list(s: &str) -> Result<Vec<Value>> {
    match serde_json::from_str::<Value>(s.trim()) {
        Ok(Value::Array(items)) => Ok(items),
        _ => Err(err(format!("expected a coefficient list, got {s:?}"))),
    }
}

/// A field from `"q=<int>[;mod=<list>]"` or a bare order.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let mut q = None;
    let mut modulus = None;
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('=') {
            Some(("q", v)) => q = Some(v.trim().parse::<u32>().map_err(|e| err(e.to_string()))?),
            Some(("mod", v)) => {
                modulus = Some(parse_list(v)?.iter().map(as_u32).collect::<Result<Vec<_>>>()?)
            }
            None => q = Some(part.parse::<u32>().map_err(|e| err(e.to_string()))?),
            Some((k, _)) => return Err(err(format!("unknown field key {k:?}"))),
        }
    }
    let q = q.ok_or_else(|| err("missing q"))?;
    let (p, n) = prime_power(q)?;
    FieldSpec::new(p, n, modulus)
}

fn parse_coeff(field: &FieldSpec, v: &Value) -> Result<FqElem> {
    match v {
        Value::Array(coords) => {
            let c = coords.iter().map(as_u32).collect::<Result<Vec<_>>>()?;
            field.from_coords(&c)
        }
        _ => {
            let c = as_u32(v)?;
            if c >= field.p() {
                return Err(err(format!("coefficient {c} is not below p = {}", field.p())));
            }
            Ok(FqElem(c))
        }
    }
}

fn parse_expr(field: &FieldSpec, s: &str) -> Result<FqPoly> {
    let mut coeffs: Vec<FqElem> = Vec::new();
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(err("empty polynomial"));
    }
    for term in cleaned.split('+') {
        let (scalar, power) = match term.split_once('T') {
            None => (term, None),
            Some((pre, post)) => {
                let scalar = pre.strip_suffix('*').unwrap_or(pre);
                if !pre.is_empty() && !pre.ends_with('*') {
                    return Err(err(format!("bad term {term:?}")));
                }
                let power = match post {
                    "" => 1,
                    _ => post
                        .strip_prefix('^')
                        .ok_or_else(|| err(format!("bad term {term:?}")))?
                        .parse::<usize>()
                        .map_err(|e| err(e.to_string()))?,
                };
                (if scalar.is_empty() { "1" } else { scalar }, Some(power))
            }
        };
        let c: i64 = scalar.parse().map_err(|_| err(format!("bad coefficient in {term:?}")))?;
        let pos = power.unwrap_or(0);
        if coeffs.len() <= pos {
            coeffs.resize(pos + 1, FqElem::ZERO);
        }
        coeffs[pos] = field.add(coeffs[pos], field.from_int(c));
    }
    Ok(FqPoly::new(field, coeffs))
}

/// A polynomial over `field` in list or expression form.
pub fn parse_poly(field: &FieldSpec, s: &str) -> Result<FqPoly> {
    let s = s.trim();
    if s.starts_with('[') {
        let coeffs = parse_list(s)?
            .iter()
            .map(|v| parse_coeff(field, v))
            .collect::<Result<Vec<_>>>()?;
        return Ok(FqPoly::new(field, coeffs));
    }
    parse_expr(field, s)
}

/// A full `q=..[;mod=..];f=..` specification.
pub fn parse_spec(s: &str) -> Result<FqPoly> {
    let (field_part, poly_part) = s
        .split_once(";f=")
        .ok_or_else(|| err(format!("missing ';f=' in {s:?}")))?;
    parse_poly(&parse_field(field_part)?, poly_part)
}

pub fn field_string(field: &FieldSpec) -> String {
    match field.modulus() {
        None => format!("q={}", field.order()),
        Some(m) => format!("q={};mod={}", field.order(), list(m.iter().map(|c| c.to_string()))),
    }
}

fn list(items: impl Iterator<Item = String>) -> String {
    format!("[{}]", items.collect::<Vec<_>>().join(","))
}

/// Coefficient list in the canonical form accepted by `parse_poly`.
pub fn coeff_list(f: &FqPoly) -> String {
    let field = f.field();
    if field.is_prime_field() {
        list(f.coeffs().iter().map(|c| c.0.to_string()))
    } else {
        list(f.coeffs().iter().map(|&c| list(field.coords(c).into_iter().map(|x| x.to_string()))))
    }
}

pub fn spec_string(f: &FqPoly) -> String {
    format!("{};f={}", field_string(f.field()), coeff_list(f))
}
