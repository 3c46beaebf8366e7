use serde::{Deserialize, Serialize};

/// Outcome of an exhaustive check. `theorem` is one of `"3.14"`, `"4.11"`,
/// `"4.12"`, `"4.13"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: String,
    pub instances_checked: u64,
    pub passed: bool,
    pub counterexample: Option<serde_json::Value>,
}

impl CheckReport {
    pub fn pass(theorem: &str, instances_checked: u64) -> Self {
        CheckReport {
            theorem: theorem.to_string(),
            instances_checked,
            passed: true,
            counterexample: None,
        }
    }

    pub fn fail(theorem: &str, instances_checked: u64, counterexample: serde_json::Value) -> Self {
        CheckReport {
            theorem: theorem.to_string(),
            instances_checked,
            passed: false,
            counterexample: Some(counterexample),
        }
    }
}
