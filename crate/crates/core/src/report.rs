//! Named pass/fail checks with optional witnesses, as emitted in JSON reports.

use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Value) -> Check {
        Check {
            name: name.into(),
            pass: false,
            witness: Some(witness),
        }
    }

    pub fn from_witness(name: impl Into<String>, witness: Option<Value>) -> Check {
        Check {
            name: name.into(),
            pass: witness.is_none(),
            witness,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "check": self.name, "pass": self.pass, "witness": self.witness.clone().unwrap_or(Value::Null) })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.checks.iter().map(Check::to_json).collect())
    }
}
