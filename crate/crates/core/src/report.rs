//! Machine-readable verification reports.
//!
//! Reports carry no timings or host data, so identical inputs and seeds give
//! byte-identical JSON.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    /// The result the assertion checks, e.g. `"Prop 8"` or `"Eq (4)"`.
    pub tag: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub inputs: Inputs,
    pub outputs: Value,
    pub assertions: Vec<Assertion>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, inputs: Inputs) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            inputs,
            outputs: Value::Object(Default::default()),
            assertions: Vec::new(),
            passed: true,
        }
    }

    /// Set `outputs[key]`.
    pub fn output(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        if let Value::Object(m) = &mut self.outputs {
            m.insert(key.into(), v);
        }
    }

    pub fn check(&mut self, name: &str, tag: &str, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.assertions.push(Assertion {
            name: name.into(),
            tag: tag.into(),
            passed,
            detail,
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
