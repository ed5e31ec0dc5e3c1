//! JSON instance documents.

use super::{build_unchecked, Built};
use crate::algebra::state::Q;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A constructor call, as stored in a document under the key `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    Boolean {
        atoms: u32,
    },
    MvProduct {
        denominator: u32,
        arity: u32,
    },
    Matrix {
        dim: usize,
    },
    Product {
        left: Box<InstanceSpec>,
        right: Box<InstanceSpec>,
    },
    /// States are given by their values on the atoms of each part, as
    /// `"m/n"` strings.
    HorizontalSum {
        left: Box<InstanceSpec>,
        right: Box<InstanceSpec>,
        left_state: Vec<String>,
        right_state: Vec<String>,
    },
    Table {
        size: usize,
        zero: usize,
        one: usize,
        sums: Vec<[usize; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        projections: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        maps: Option<Vec<Vec<usize>>>,
    },
    Fixture {
        name: String,
    },
}

/// `"m/n"`, an integer or a decimal, exactly.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("{s:?} is not a rational"));
    if let Some((m, n)) = s.split_once('/') {
        let m: i64 = m.trim().parse().map_err(|_| bad())?;
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        return Ok(Q::new(m, n));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let whole: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let num = whole.abs() * den + f;
        return Ok(Q::new(if neg { -num } else { num }, den));
    }
    s.parse::<i64>().map(Q::from_integer).map_err(|_| bad())
}

pub fn format_rational(q: Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A rational or decimal given as a JSON string or number.
pub fn value_to_f64(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::InvalidParameter(format!("{n}"))),
        Value::String(s) => parse_rational(s).map(|q| *q.numer() as f64 / *q.denom() as f64),
        _ => Err(Error::InvalidParameter(format!("{v} is not a scalar"))),
    }
}

pub fn parse_spec(text: &str) -> Result<InstanceSpec> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

pub fn to_document(spec: &InstanceSpec) -> String {
    serde_json::to_string_pretty(spec).expect("specs serialize")
}

/// Parses and constructs without validating, so that broken tables still
/// reach the validators.
pub fn parse_document(text: &str) -> Result<Built> {
    build_unchecked(&parse_spec(text)?)
}
