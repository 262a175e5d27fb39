//! Machine-checkable audit reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

/// One failed check, with enough structured data to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Violation {
    pub fn new(kind: impl Into<String>, message: impl Into<String>, data: Value) -> Self {
        Violation {
            kind: kind.into(),
            message: message.into(),
            data,
        }
    }
}

impl From<&Error> for Violation {
    fn from(e: &Error) -> Self {
        Violation::new(e.code(), e.to_string(), Value::Null)
    }
}

/// Outcome of an audit: `pass` holds exactly when `violations` is empty.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pass: bool,
    violations: Vec<Violation>,
    pub artifacts: BTreeMap<String, Value>,
    pub stats: BTreeMap<String, Value>,
}

impl WitnessReport {
    pub fn new() -> Self {
        WitnessReport {
            pass: true,
            ..Default::default()
        }
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
        self.pass = false;
    }

    pub fn fail(&mut self, kind: &str, message: impl Into<String>, data: Value) {
        self.push(Violation::new(kind, message, data));
    }

    pub fn artifact(&mut self, key: &str, value: impl Serialize) {
        self.artifacts.insert(key.to_string(), to_value(value));
    }

    pub fn stat(&mut self, key: &str, value: impl Serialize) {
        self.stats.insert(key.to_string(), to_value(value));
    }

    /// Appends every violation, artifact and stat of `other`, prefixing
    /// artifact and stat keys with `prefix`.
    pub fn merge(&mut self, prefix: &str, other: WitnessReport) {
        for v in other.violations {
            self.push(v);
        }
        for (k, v) in other.artifacts {
            self.artifacts.insert(format!("{prefix}{k}"), v);
        }
        for (k, v) in other.stats {
            self.stats.insert(format!("{prefix}{k}"), v);
        }
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("report values serialize")
}

/// Serializes through `serde_json::Value`, whose maps are key-sorted, so
/// the output has a canonical key order regardless of struct field order.
pub fn to_canonical_json(value: &impl Serialize) -> String {
    let v = to_value(value);
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}
