//! Law-check reports. Failures are data: every failed law carries a witness.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The inputs of a violated law and both sides of the relation that failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(
        inputs: Vec<String>,
        relation: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        Witness {
            inputs,
            relation: relation.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawResult {
    pub law: String,
    pub status: Status,
    /// Number of instances evaluated.
    pub checked: u64,
    pub violations: u64,
    /// First violation in canonical enumeration order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub subject: String,
    /// False when some laws were checked on sampled tuples only.
    pub exhaustive: bool,
    pub laws: Vec<LawResult>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub observations: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl LawReport {
    pub fn new(subject: impl Into<String>) -> Self {
        LawReport {
            subject: subject.into(),
            exhaustive: true,
            laws: Vec::new(),
            observations: BTreeMap::new(),
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| !l.passed())
    }

    pub(crate) fn push(&mut self, law: &str, tally: Tally) {
        self.laws.push(tally.into_result(law));
    }
}

/// Running count for one law. `merge` keeps the earliest witness, so merging
/// per-chunk tallies in chunk order preserves enumeration-order minimality.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    checked: u64,
    violations: u64,
    witness: Option<Witness>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    /// Counts an instance whose premise did not apply.
    pub fn vacuous(&mut self) {
        self.checked += 1;
    }

    pub fn merge(mut self, later: Tally) -> Tally {
        self.checked += later.checked;
        self.violations += later.violations;
        if self.witness.is_none() {
            self.witness = later.witness;
        }
        self
    }

    pub fn merge_all(parts: impl IntoIterator<Item = Tally>) -> Tally {
        parts.into_iter().fold(Tally::default(), Tally::merge)
    }

    pub fn into_result(self, law: &str) -> LawResult {
        let status = if self.violations == 0 {
            Status::Pass
        } else {
            Status::Fail
        };
        debug_assert!(status == Status::Pass || self.witness.is_some());
        LawResult {
            law: law.to_string(),
            status,
            checked: self.checked,
            violations: self.violations,
            witness: self.witness,
        }
    }
}
