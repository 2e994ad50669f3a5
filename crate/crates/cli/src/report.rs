use std::time::Duration;

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub case: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub anchor: &'static str,
}

impl Failure {
    pub fn new(
        case: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        got: impl Into<String>,
        anchor: &'static str,
    ) -> Self {
        Failure { case: case.into(), inputs: inputs.into(), expected: expected.into(), got: got.into(), anchor }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub wall_time: Duration,
    pub notes: Vec<String>,
}

pub const SCOPE_NOTE: &str =
    "scope: algebraic ingredients only (exact identities on polynomial jets); uniform approximation on compacts is not checked";

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Deterministic text; the wall time is reported separately.
    pub fn render(&self) -> String {
        let mut s = format!("suite {}: {} cases, {} failures\n", self.suite, self.cases, self.failures.len());
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        for f in &self.failures {
            s.push_str(&format!(
                "  FAIL {} [{}]\n    inputs:   {}\n    expected: {}\n    got:      {}\n",
                f.case, f.anchor, f.inputs, f.expected, f.got
            ));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "cases": self.cases,
            "notes": self.notes,
            "failures": self.failures.iter().map(|f| json!({
                "case": f.case,
                "inputs": f.inputs,
                "expected": f.expected,
                "got": f.got,
                "anchor": f.anchor,
            })).collect::<Vec<_>>(),
        })
    }
}
