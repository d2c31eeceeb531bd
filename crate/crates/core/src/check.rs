//! Named pass/fail records for the consistency checks embedded in reports.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// Equality check with both values in the detail.
    pub fn eq<T: PartialEq + fmt::Debug>(name: impl Into<String>, actual: T, expected: T) -> Self {
        let passed = actual == expected;
        Check::new(name, passed, format!("actual {actual:?}, expected {expected:?}"))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "ok" } else { "FAILED" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
