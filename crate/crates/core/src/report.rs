//! Pass/fail verdicts and their machine-readable report schema.
//!
//! A failing verdict carries the first counterexample; falsification
//! evidence is the product of the verification modules.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every checked index satisfied the claim.
    Pass { checked: usize },
    /// First offending index and the offending value (decimal string,
    /// since coefficients exceed 64 bits).
    Fail { n: usize, value: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn to_report(&self, claim: &str) -> Report {
        match self {
            Verdict::Pass { checked } => Report {
                claim: claim.to_string(),
                status: "pass".to_string(),
                checked: *checked,
                counterexample: None,
            },
            Verdict::Fail { n, value } => Report {
                claim: claim.to_string(),
                status: "fail".to_string(),
                checked: 0,
                counterexample: Some(Counterexample {
                    n: *n,
                    value: value.clone(),
                }),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub claim: String,
    pub status: String,
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_schema() {
        let r = Verdict::Pass { checked: 42 }.to_report("test claim");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "claim": "test claim",
                "status": "pass",
                "checked": 42,
                "counterexample": null
            })
        );

        let r = Verdict::Fail {
            n: 3,
            value: "123456789012345678901234567890".to_string(),
        }
        .to_report("other claim");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["status"], "fail");
        assert_eq!(json["counterexample"]["n"], 3);
        assert_eq!(
            json["counterexample"]["value"],
            "123456789012345678901234567890"
        );
    }
}
