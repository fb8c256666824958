//! Machine-readable verification reports. Input and witness digests make a
//! failing case directly actionable; elapsed times stay out of every digest
//! so identical runs produce identical digests.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BatteryStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseOutcome {
    Ok,
    Disagree,
    Timeout,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseRecord {
    pub index: usize,
    pub name: String,
    pub input_digest: String,
    pub verdicts: BTreeMap<String, serde_json::Value>,
    pub witness_digests: BTreeMap<String, Option<String>>,
    pub nodes: u64,
    pub millis: u128,
    pub outcome: CaseOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

impl CaseRecord {
    pub fn new(index: usize, name: impl Into<String>, input_digest: String) -> Self {
        CaseRecord {
            index,
            name: name.into(),
            input_digest,
            verdicts: BTreeMap::new(),
            witness_digests: BTreeMap::new(),
            nodes: 0,
            millis: 0,
            outcome: CaseOutcome::Ok,
            counterexample: None,
        }
    }

    pub fn verdict(&mut self, key: &str, value: impl Serialize) {
        self.verdicts.insert(
            key.to_owned(),
            serde_json::to_value(value).expect("verdict serializes"),
        );
    }

    pub fn witness_digest(&mut self, key: &str, witness: Option<&impl Serialize>) {
        self.witness_digests
            .insert(key.to_owned(), witness.map(digest_of));
    }

    pub fn disagree(&mut self, counterexample: impl Serialize) {
        self.outcome = CaseOutcome::Disagree;
        self.counterexample =
            Some(serde_json::to_value(counterexample).expect("counterexample serializes"));
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub battery: String,
    pub status: BatteryStatus,
    pub cases_total: usize,
    pub conclusive_cases: usize,
    pub timeouts: usize,
    pub disagreements: usize,
    pub total_millis: u128,
    pub cases: Vec<CaseRecord>,
}

impl VerificationReport {
    /// Assembles a report. Any disagreement fails the battery; timeouts or
    /// too few conclusive cases make it inconclusive rather than a pass.
    pub fn assemble(battery: &str, cases: Vec<CaseRecord>, min_conclusive: usize) -> Self {
        let timeouts = cases
            .iter()
            .filter(|c| c.outcome == CaseOutcome::Timeout)
            .count();
        let disagreements = cases
            .iter()
            .filter(|c| c.outcome == CaseOutcome::Disagree)
            .count();
        let conclusive = cases.len() - timeouts;
        let status = if disagreements > 0 {
            BatteryStatus::Fail
        } else if timeouts > 0 || conclusive < min_conclusive {
            BatteryStatus::Inconclusive
        } else {
            BatteryStatus::Pass
        };
        VerificationReport {
            battery: battery.to_owned(),
            status,
            cases_total: cases.len(),
            conclusive_cases: conclusive,
            timeouts,
            disagreements,
            total_millis: cases.iter().map(|c| c.millis).sum(),
            cases,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == BatteryStatus::Pass
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} ({} cases, {} conclusive, {} timeouts, {} disagreements, {} ms)",
            self.battery,
            match self.status {
                BatteryStatus::Pass => "PASS",
                BatteryStatus::Fail => "FAIL",
                BatteryStatus::Inconclusive => "INCONCLUSIVE",
            },
            self.cases_total,
            self.conclusive_cases,
            self.timeouts,
            self.disagreements,
            self.total_millis,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of a value's canonical JSON form.
pub fn digest_of(value: &impl Serialize) -> String {
    sha256_hex(serde_json::to_string(value).expect("value serializes").as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rules() {
        let ok = CaseRecord::new(0, "a", String::new());
        let mut bad = CaseRecord::new(1, "b", String::new());
        bad.disagree("boom");
        let mut slow = CaseRecord::new(2, "c", String::new());
        slow.outcome = CaseOutcome::Timeout;

        let pass = VerificationReport::assemble("t", vec![ok.clone()], 1);
        assert_eq!(pass.status, BatteryStatus::Pass);

        let fail = VerificationReport::assemble("t", vec![ok.clone(), bad], 1);
        assert_eq!(fail.status, BatteryStatus::Fail);

        let inconclusive = VerificationReport::assemble("t", vec![ok.clone(), slow], 1);
        assert_eq!(inconclusive.status, BatteryStatus::Inconclusive);

        let thin = VerificationReport::assemble("t", vec![ok], 5);
        assert_eq!(thin.status, BatteryStatus::Inconclusive);
    }

    #[test]
    fn digests_are_stable() {
        assert_eq!(digest_of(&vec![1, 2, 3]), digest_of(&vec![1, 2, 3]));
        assert_ne!(digest_of(&vec![1, 2, 3]), digest_of(&vec![3, 2, 1]));
    }
}
