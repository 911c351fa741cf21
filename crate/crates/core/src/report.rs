//! Serialization conventions shared by every report.
//!
//! Exact rationals are written as `{"num": "...", "den": "..."}` with decimal
//! strings; floats are written as shortest round-trip decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{self, Rational};

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

fn to_repr(r: &Rational) -> RationalRepr {
    RationalRepr {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
    }
}

fn from_repr<E: serde::de::Error>(repr: RationalRepr) -> Result<Rational, E> {
    let num: BigInt = repr.num.parse().map_err(E::custom)?;
    let den: BigInt = repr.den.parse().map_err(E::custom)?;
    if den == BigInt::from(0) {
        return Err(E::custom("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Format a float as its shortest round-trip decimal string.
pub fn float_string(x: f64) -> String {
    format!("{x:?}")
}

pub fn parse_float<E: serde::de::Error>(s: &str) -> Result<f64, E> {
    match s {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        "NaN" => Ok(f64::NAN),
        _ => s.parse().map_err(E::custom),
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        to_repr(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        from_repr(RationalRepr::deserialize(d)?)
    }
}

pub mod float {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&float_string(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        parse_float(&String::deserialize(d)?)
    }
}

pub mod float_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = xs.iter().map(|&x| float_string(x)).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| parse_float(s)).collect()
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<RationalRepr> = xs.iter().map(to_repr).collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RationalRepr>::deserialize(d)?.into_iter().map(from_repr).collect()
    }
}

/// A predicted value: exact when the prediction is an identity, otherwise a float.
#[derive(Debug, Clone, PartialEq)]
pub enum Prediction {
    Exact(Rational),
    Approx(f64),
}

impl Prediction {
    pub fn to_f64(&self) -> f64 {
        match self {
            Prediction::Exact(r) => exact::to_f64(r),
            Prediction::Approx(x) => *x,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PredictionRepr {
    Exact(RationalRepr),
    Approx(String),
}

impl Serialize for Prediction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Prediction::Exact(r) => PredictionRepr::Exact(to_repr(r)).serialize(s),
            Prediction::Approx(x) => PredictionRepr::Approx(float_string(*x)).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Prediction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match PredictionRepr::deserialize(d)? {
            PredictionRepr::Exact(r) => Ok(Prediction::Exact(from_repr(r)?)),
            PredictionRepr::Approx(s) => Ok(Prediction::Approx(parse_float(&s)?)),
        }
    }
}

pub type Predictions = BTreeMap<String, Prediction>;

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Sample {
        #[serde(with = "rational")]
        r: Rational,
        #[serde(with = "float")]
        x: f64,
        p: Predictions,
    }

    #[test]
    fn round_trip() {
        let mut p = Predictions::new();
        p.insert("a".into(), Prediction::Exact(exact::ratio(61, 100)));
        p.insert("b".into(), Prediction::Approx(0.1 + 0.2));
        let s = Sample { r: exact::ratio(-3, 9), x: 1e-300, p };
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains(r#""r":{"num":"-1","den":"3"}"#), "{json}");
        assert!(json.contains(r#""num":"61","den":"100""#));
        assert!(json.contains("0.30000000000000004"));
        let back: Sample = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn floats_are_shortest_round_trip() {
        for x in [0.1, 1.0, 2.5e-8, 1e21, f64::MAX, 5e-324] {
            let s = float_string(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(float_string(0.1), "0.1");
    }
}
