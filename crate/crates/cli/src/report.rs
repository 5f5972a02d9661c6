//! Command reports and their JSON or table rendering.

use serde_json::{json, Map, Value};

use starshape::algebra::rational::{digits_for, to_decimal_directed};
use starshape::{Enclosure, Rational, StarGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
        }
    }

    pub fn from_pass(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

pub struct Report {
    pub command: &'static str,
    pub graph: Option<StarGraph>,
    pub class: Option<String>,
    pub results: Value,
    pub status: Status,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "graph": self.graph.as_ref().map(|g| json!(g.branch_lengths())),
            "class": self.class,
            "results": self.results,
            "status": self.status.as_str(),
            "tool_version": env!("CARGO_PKG_VERSION"),
        })
    }

    /// One `path  value` line per leaf.
    pub fn to_table(&self) -> String {
        let mut rows = Vec::new();
        flatten("", &self.to_json(), &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Enclosure endpoints rounded outward to the digits `precision` needs.
pub fn enclosure(e: &Enclosure, precision: &Rational) -> Value {
    let digits = digits_for(precision);
    json!({
        "lo": to_decimal_directed(&e.lo, digits, false),
        "hi": to_decimal_directed(&e.hi, digits, true),
    })
}

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}
