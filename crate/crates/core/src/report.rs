//! Named pass/fail checks shared by all verification routines.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, expected: impl Display, actual: impl Display) -> Self {
        Check { name: name.into(), passed, expected: expected.to_string(), actual: actual.to_string() }
    }

    /// Passes iff `expected == actual`.
    pub fn equal<T: PartialEq + Display + ?Sized>(name: impl Into<String>, expected: &T, actual: &T) -> Self {
        Self::new(name, expected == actual, expected, actual)
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
