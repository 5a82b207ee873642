//! Machine-readable verification reports.

use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

pub const REPORT_SCHEMA: &str = "qll-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    ConfigError,
}

/// Outcome of one verification suite. A `Fail` always carries at least one
/// witness; `Inconclusive` is reserved for tolerance-limited numeric checks.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub witnesses: Vec<String>,
    /// Kept out of the serialized form so reports are byte-identical across
    /// runs at a fixed seed.
    #[serde(skip)]
    pub timing_ms: u128,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA,
            suite: suite.to_string(),
            params: BTreeMap::new(),
            status: Status::Pass,
            witnesses: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: String) {
        self.params.insert(key.to_string(), value);
    }

    pub fn witness(&mut self, w: String) {
        self.witnesses.push(w);
    }

    pub fn fail(&mut self, w: String) {
        self.status = Status::Fail;
        self.witnesses.push(w);
    }

    pub fn finish(&mut self, started: Instant) {
        self.timing_ms = started.elapsed().as_millis();
        if self.status == Status::Fail {
            assert!(!self.witnesses.is_empty(), "fail reports carry a witness");
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn one_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "inconclusive",
            Status::ConfigError => "config-error",
        };
        format!("{:<40} {}", self.suite, status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_serializes_with_schema() {
        let mut r = VerificationReport::new("demo");
        r.param("p", "3".into());
        let v = r.to_json();
        assert_eq!(v["schema"], "qll-report/1");
        assert_eq!(v["status"], "pass");
    }
}
