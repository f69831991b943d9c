//! JSON input and output: fans, resolution data (plain or with a boundary),
//! orbit catalogs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::orbit::Catalog;
use crate::stringy::{Divisor, PairDatum, Subset};
use crate::{HodgePoly, Integer, Laurent, Rational, ResolutionDatum};
use crate::toric::Fan;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FanJson {
    pub fn to_fan(&self) -> Result<Fan> {
        Fan::new(self.dim, self.rays.clone(), self.max_cones.clone())
    }

    pub fn from_fan(fan: &Fan) -> Self {
        FanJson {
            dim: fan.dim(),
            rays: fan.rays().to_vec(),
            max_cones: fan.cones().to_vec(),
            note: None,
        }
    }
}

/// `"p/q"`, `"n"` or a JSON integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Text(String),
}

impl RationalJson {
    pub fn value(&self) -> Result<Rational> {
        match self {
            RationalJson::Int(n) => Ok(Rational::from_integer((*n).into())),
            RationalJson::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: Integer = n.parse().map_err(|_| bad())?;
    let d: Integer = d.parse().map_err(|_| bad())?;
    if d == Integer::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<RationalJson>,
    /// Multiplicity in the boundary divisor of a pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<RationalJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumJson {
    #[serde(rename = "J")]
    pub j: Vec<String>,
    #[serde(rename = "E")]
    pub e: HodgePoly,
    /// `[[exponent of t, coefficient], ...]`.
    #[serde(rename = "B_alg", default, skip_serializing_if = "Option::is_none")]
    pub b_alg: Option<Vec<(i64, i64)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumJson {
    pub r: u64,
    pub divisors: Vec<DivisorJson>,
    pub strata: Vec<StratumJson>,
    #[serde(default)]
    pub empty: Vec<Vec<String>>,
    #[serde(default)]
    pub orbit_nonnegative: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl DatumJson {
    /// Builds the datum; with boundary components it is validated as a klt
    /// pair.
    pub fn to_datum(&self) -> Result<ResolutionDatum> {
        let mut divisors = Vec::new();
        let mut boundary: Vec<(&str, Rational)> = Vec::new();
        for d in &self.divisors {
            match (&d.a, &d.boundary) {
                (Some(a), None) => divisors.push(Divisor::new(&d.name, a.value()?)),
                (None, Some(b)) => {
                    divisors.push(Divisor::new(&d.name, Rational::from_integer(0.into())));
                    boundary.push((&d.name, b.value()?));
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "divisor {} needs exactly one of \"a\" and \"boundary\"",
                        d.name
                    )))
                }
            }
        }
        let names: Vec<&str> = self.divisors.iter().map(|d| d.name.as_str()).collect();
        let subset = |js: &[String]| -> Result<Subset> {
            js.iter()
                .map(|n| {
                    names
                        .iter()
                        .position(|m| m == n)
                        .ok_or_else(|| Error::InvalidDatum(format!("unknown divisor {n}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Subset::new)
        };
        let strata = self
            .strata
            .iter()
            .map(|s| Ok((subset(&s.j)?, s.e.clone())))
            .collect::<Result<Vec<_>>>()?;
        let empty = self.empty.iter().map(|e| subset(e)).collect::<Result<Vec<_>>>()?;
        // boundary discrepancies are set below, so validate without them first
        let mut datum = ResolutionDatum::new(self.r, divisors, strata, empty, self.orbit_nonnegative)?;
        if !boundary.is_empty() {
            datum = PairDatum::new(datum, &boundary)?.datum().clone();
        }
        let given = self.strata.iter().filter(|s| s.b_alg.is_some()).count();
        if given > 0 {
            let mut tables = BTreeMap::new();
            for s in &self.strata {
                let Some(b) = &s.b_alg else {
                    return Err(Error::MissingStratum(format!("B_alg for {{{}}}", s.j.join(","))));
                };
                let poly = Laurent::from_terms(b.iter().map(|&(e, c)| (e, Rational::from_integer(c.into()))));
                tables.insert(subset(&s.j)?, poly);
            }
            datum = datum.with_b_alg(tables)?;
        }
        Ok(datum)
    }
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Input {
    Fan(Fan),
    Datum(ResolutionDatum),
}

/// Decides between fan and datum by the top-level keys `"rays"` and
/// `"divisors"`; files with both or neither are rejected.
pub fn parse_input(text: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be an object".into()))?;
    match (obj.contains_key("rays"), obj.contains_key("divisors")) {
        (true, false) => {
            let f: FanJson = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Input::Fan(f.to_fan()?))
        }
        (false, true) => {
            let d: DatumJson = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Input::Datum(d.to_datum()?))
        }
        (true, true) => Err(Error::Parse("ambiguous input: both \"rays\" and \"divisors\" present".into())),
        (false, false) => Err(Error::Parse("unrecognized input: neither \"rays\" nor \"divisors\" present".into())),
    }
}

pub fn parse_fan(text: &str) -> Result<Fan> {
    match parse_input(text)? {
        Input::Fan(f) => Ok(f),
        Input::Datum(_) => Err(Error::Parse("expected a fan".into())),
    }
}

pub fn parse_catalog(text: &str) -> Result<Catalog> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn datum_to_json(d: &ResolutionDatum) -> DatumJson {
    let names: Vec<&str> = d.divisors().iter().map(|x| x.name.as_str()).collect();
    let named = |j: &Subset| j.indices().iter().map(|&i| names[i].to_string()).collect::<Vec<_>>();
    let b_alg = d.b_alg();
    DatumJson {
        r: d.index(),
        divisors: d
            .divisors()
            .iter()
            .map(|x| {
                if x.boundary {
                    DivisorJson {
                        name: x.name.clone(),
                        a: None,
                        boundary: Some(RationalJson::Text((-x.discrepancy.clone()).to_string())),
                    }
                } else {
                    DivisorJson {
                        name: x.name.clone(),
                        a: Some(RationalJson::Text(x.discrepancy.to_string())),
                        boundary: None,
                    }
                }
            })
            .collect(),
        strata: d
            .closed_strata()
            .iter()
            .map(|(j, e)| StratumJson {
                j: named(j),
                e: e.clone(),
                b_alg: b_alg.and_then(|t| t.get(j)).map(|b| {
                    b.terms()
                        .map(|(e, c)| (e, i64::try_from(c.to_integer()).expect("small coefficient")))
                        .collect()
                }),
            })
            .collect(),
        empty: d.empty_flags().iter().map(named).collect(),
        orbit_nonnegative: d.orbit_nonnegative(),
        note: None,
    }
}
