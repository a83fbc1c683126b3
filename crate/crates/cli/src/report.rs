use std::collections::BTreeMap;

use serde::Serialize;

/// The single structured document every command prints to stdout.
///
/// Construction is fully deterministic (sorted maps, no timestamps), so a
/// report is byte-identical across runs on identical inputs.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Inputs,
    pub verdict: String,
    pub values: BTreeMap<String, serde_json::Value>,
    pub details: Vec<String>,
}

#[derive(Serialize)]
pub struct Inputs {
    pub file: String,
    /// Content hash of the problem file, for provenance.
    pub digest: String,
    pub names: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl Report {
    /// Exit code contract: 0 for PASS/true-style verdicts, 1 for
    /// FAIL/false, 2 for precondition failures, 3 for theorem violations.
    pub fn exit_code(&self) -> i32 {
        match self.verdict.as_str() {
            "PASS" | "true" | "REGULAR-certified" | "computed" => 0,
            "FAIL" | "false" => 1,
            "precondition-failure" => 2,
            "THEOREM-VIOLATION" => 3,
            _ => 2,
        }
    }

    pub fn print(&self) {
        println!(
            "{}",
            serde_json::to_string_pretty(self).expect("report serialization cannot fail")
        );
    }
}
