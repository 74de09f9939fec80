//! Pass/fail reports for axiom suites, shared by the category- and
//! Hopf-side validators.

use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn push(&mut self, name: &'static str, passed: bool, witness: Option<String>) {
        self.checks.push(CheckResult { name, passed, witness });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.checks
                .iter()
                .map(|c| {
                    let mut v = json!({"name": c.name, "passed": c.passed});
                    if let Some(w) = &c.witness {
                        v["witness"] = Value::String(w.clone());
                    }
                    v
                })
                .collect(),
        )
    }
}

