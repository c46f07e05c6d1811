//! Structured verification results.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Display;

use serde::{Deserialize, Serialize};

/// One named check with its computed and expected values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The statement being checked.
    pub anchor: String,
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    pub computed: String,
    pub expected: String,
}

impl Check {
    pub fn new(name: &str, anchor: &str) -> Check {
        Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            params: BTreeMap::new(),
            pass: false,
            computed: String::new(),
            expected: String::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> Check {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Pass iff the two rendered values agree.
    pub fn compare(mut self, computed: impl Display, expected: impl Display) -> Check {
        self.computed = computed.to_string();
        self.expected = expected.to_string();
        self.pass = self.computed == self.expected;
        self
    }

    pub fn outcome(mut self, pass: bool, computed: impl Display, expected: impl Display) -> Check {
        self.computed = computed.to_string();
        self.expected = expected.to_string();
        self.pass = pass;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// Observations recorded without a pass/fail verdict.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> VerificationReport {
        VerificationReport { suite: suite.to_string(), params: BTreeMap::new(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> VerificationReport {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, text: impl Display) {
        self.notes.push(text.to_string());
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_sets_pass() {
        let c = Check::new("x", "y").param("q", 2).compare(3, 3);
        assert!(c.pass);
        assert_eq!(c.params["q"], "2");
        let mut r = VerificationReport::new("s");
        r.push(c);
        r.push(Check::new("z", "y").compare("a", "b"));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}
