//! Self-describing run reports.
//!
//! A report is one JSON object with `scenario`, `version`, `inputs`,
//! `results` and `checks`. Object keys are sorted, so identical runs
//! serialize to identical bytes.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::bits::format_bits;
use crate::measure::Distribution;
use crate::state::StateVector;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub version: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(scenario: impl Into<String>) -> Self {
        Report {
            scenario: scenario.into(),
            version: ARTIFACT_VERSION.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn check(&mut self, name: &str, passed: bool) -> &mut Self {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
        });
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// `[{k, x, v, re, im}, ...]` with vanishing amplitudes omitted.
pub fn state_value(state: &StateVector) -> Value {
    serde_json::to_value(state.records()).expect("records serialize")
}

/// Outcome table as `{"k=01,x=01": 0.25, ...}`, one `name=bits` part per
/// measured set.
pub fn distribution_value(dist: &Distribution, names: &[(&str, usize)]) -> Value {
    let mut map = Map::new();
    for (key, p) in dist {
        let label = key
            .iter()
            .zip(names)
            .map(|(&o, &(name, width))| format!("{name}={}", format_bits(o, width)))
            .collect::<Vec<_>>()
            .join(",");
        map.insert(label, Value::from(*p));
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::make_uniform_input;

    #[test]
    fn round_trip() {
        let mut r = Report::new("demo");
        r.input("n", 2)
            .result("state", state_value(&make_uniform_input(2).unwrap()))
            .result("ratio", "9/4")
            .check("ok", true);
        let text = r.to_json();
        assert_eq!(Report::from_json(&text).unwrap(), r);
        assert!(r.all_passed());
    }

    #[test]
    fn distribution_labels() {
        let mut d = Distribution::new();
        d.insert(vec![1, 1], 0.5);
        d.insert(vec![2, 2], 0.5);
        let v = distribution_value(&d, &[("k", 2), ("x", 2)]);
        assert_eq!(v["k=01,x=01"], Value::from(0.5));
        assert_eq!(v["k=10,x=10"], Value::from(0.5));
    }
}
