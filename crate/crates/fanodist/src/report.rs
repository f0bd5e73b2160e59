//! The machine-readable report every CLI command emits.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::linalg::Matrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    pub values: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, verdict: impl Into<String>, values: Value) -> Self {
        Report {
            command: command.into(),
            verdict: verdict.into(),
            anchor: None,
            branch: None,
            values,
            elapsed_ms: None,
        }
    }

    pub fn anchor(mut self, anchor: impl Into<String>) -> Self {
        self.anchor = Some(anchor.into());
        self
    }

    pub fn branch(mut self, branch: impl Into<String>) -> Self {
        self.branch = Some(branch.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports are plain JSON")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.verdict);
        if let Some(a) = &self.anchor {
            let _ = writeln!(out, "anchor: {a}");
        }
        if let Some(b) = &self.branch {
            let _ = writeln!(out, "branch: {b}");
        }
        match &self.values {
            Value::Object(map) => {
                for (k, v) in map {
                    let _ = writeln!(out, "{k}: {}", text_value(v));
                }
            }
            Value::String(s) => {
                let _ = writeln!(out, "{s}");
            }
            v => {
                let _ = writeln!(out, "value: {v}");
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Structured error written to standard error.
pub fn error_json(kind: &str, message: &str) -> String {
    json!({ "error": kind, "message": message }).to_string()
}

pub fn domain_error_json(e: &Error) -> String {
    error_json(e.kind(), &e.to_string())
}

/// Integers as JSON numbers when they fit in 64 bits, strings otherwise.
pub fn biguint(v: &BigUint) -> Value {
    v.to_u64()
        .map_or_else(|| Value::String(v.to_string()), Value::from)
}

pub fn bigint(v: &BigInt) -> Value {
    v.to_i64()
        .map_or_else(|| Value::String(v.to_string()), Value::from)
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(rational).collect()))
            .collect(),
    )
}

pub fn vectors(rows: &[Vec<Rational>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(rational).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn round_trip() {
        let r = Report::new("bott", "ok", json!({"value": 45, "q": "-3/7"})).branch("0<=q<=n, t>q");
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn large_integers_become_strings() {
        let big = BigUint::from(u64::MAX) * 3u32;
        assert!(biguint(&big).is_string());
        assert_eq!(biguint(&BigUint::from(7u32)), json!(7));
        assert_eq!(rational(&frac(-3, 7)), json!("-3/7"));
    }

    #[test]
    fn text_rendering() {
        let r = Report::new("class", "class-1", json!({"class": 1, "rank": 4}));
        assert_eq!(r.to_text(), "class: class-1\nclass: 1\nrank: 4\n");
    }
}
