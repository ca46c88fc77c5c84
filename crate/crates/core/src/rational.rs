//! Exact rationals for stretch values and targets.

use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Reduced fraction with positive denominator. All stretch values and stretch
/// targets are kept in this form; floating point never enters a comparison.
pub type Rational = Ratio<i64>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("malformed rational {0:?}: expected `p/q` or `p`")]
pub struct ParseRationalError(pub String);

/// Parses `p/q` or `p`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num = i64::from_str(num).map_err(|_| err())?;
    let den = i64::from_str(den).map_err(|_| err())?;
    if den == 0 {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `{ "num": p, "den": q }` wire form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for RationalJson {
    fn from(r: Rational) -> Self {
        Self { num: *r.numer(), den: *r.denom() }
    }
}

impl From<RationalJson> for Rational {
    fn from(r: RationalJson) -> Self {
        Rational::new(r.num, r.den)
    }
}

/// Serde adapter: `#[serde(with = "crate::rational::as_json")]`.
pub mod as_json {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(*r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RationalJson::deserialize(d)?;
        if raw.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(raw.into())
    }
}

/// Serde adapter for maps keyed by distance.
pub mod map_as_json {
    use std::collections::BTreeMap;

    use super::*;

    pub fn serialize<S: Serializer>(m: &BTreeMap<u32, Rational>, s: S) -> Result<S::Ok, S::Error> {
        let raw: BTreeMap<String, RationalJson> = m.iter().map(|(k, v)| (k.to_string(), (*v).into())).collect();
        raw.serialize(s)
    }
}
