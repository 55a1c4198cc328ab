//! Machine-readable verification reports: named checks with PASS, FAIL or
//! INCONCLUSIVE verdicts, deterministic counters, and an input digest.
//! Timing is reported but never part of the digest, so identical inputs
//! and seeds produce reports that agree everywhere else byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
    /// The cap that was hit, present exactly on INCONCLUSIVE verdicts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
}

impl CheckVerdict {
    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckVerdict {
            name: name.into(),
            verdict: Verdict::Pass,
            detail: detail.into(),
            cap: None,
        }
    }

    pub fn fail(name: &str, detail: impl Into<String>) -> Self {
        CheckVerdict {
            name: name.into(),
            verdict: Verdict::Fail,
            detail: detail.into(),
            cap: None,
        }
    }

    pub fn inconclusive(name: &str, detail: impl Into<String>, cap: u64) -> Self {
        CheckVerdict {
            name: name.into(),
            verdict: Verdict::Inconclusive,
            detail: detail.into(),
            cap: Some(cap),
        }
    }

    pub fn of(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail)
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub target: String,
    pub input_digest: String,
    pub checks: Vec<CheckVerdict>,
    pub counters: BTreeMap<String, u128>,
    pub timing_ms: u128,
}

impl RunReport {
    pub fn new(target: impl Into<String>, input_digest: String) -> Self {
        RunReport {
            tool_version: TOOL_VERSION.into(),
            target: target.into(),
            input_digest,
            checks: Vec::new(),
            counters: BTreeMap::new(),
            timing_ms: 0,
        }
    }

    pub fn push(&mut self, check: CheckVerdict) {
        self.checks.push(check);
    }

    pub fn count(&mut self, name: &str, value: u128) {
        self.counters.insert(name.into(), value);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn has_failure(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Fail)
    }

    pub fn has_inconclusive(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Inconclusive)
    }

    /// Exit-code contract: 0 pass, 2 violation, 3 inconclusive.
    /// An inconclusive verdict never masks a failure.
    pub fn exit_code(&self) -> u8 {
        if self.has_failure() {
            2
        } else if self.has_inconclusive() {
            3
        } else {
            0
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with the timing field zeroed, for golden comparisons.
    pub fn masked_timing(&self) -> RunReport {
        let mut masked = self.clone();
        masked.timing_ms = 0;
        masked
    }
}

/// Hex SHA-256 over the concatenated input descriptions.
pub fn digest(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update(part.as_bytes());
        hasher.update([0u8]);
    }
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        let mut report = RunReport::new("demo", digest(&["x"]));
        assert_eq!(report.exit_code(), 0);
        report.push(CheckVerdict::pass("a", ""));
        assert_eq!(report.exit_code(), 0);
        report.push(CheckVerdict::inconclusive("b", "", 100));
        assert_eq!(report.exit_code(), 3);
        report.push(CheckVerdict::fail("c", ""));
        assert_eq!(report.exit_code(), 2); // FAIL dominates INCONCLUSIVE
    }

    #[test]
    fn digest_is_stable_and_order_sensitive() {
        assert_eq!(digest(&["a", "b"]), digest(&["a", "b"]));
        assert_ne!(digest(&["a", "b"]), digest(&["b", "a"]));
        assert_ne!(digest(&["ab"]), digest(&["a", "b"]));
    }

    #[test]
    fn masked_timing_strips_only_timing() {
        let mut report = RunReport::new("demo", digest(&["x"]));
        report.timing_ms = 42;
        report.push(CheckVerdict::pass("a", "ok"));
        let masked = report.masked_timing();
        assert_eq!(masked.timing_ms, 0);
        assert_eq!(masked.checks.len(), 1);
        let line = report.to_json_line();
        assert!(line.contains("\"verdict\":\"PASS\""));
    }
}
