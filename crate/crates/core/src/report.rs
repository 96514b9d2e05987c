//! Pass/fail bookkeeping shared by the verification suites and the CLI.

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl SuiteCheck {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        SuiteCheck {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        SuiteCheck {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    pub fn from_result(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        SuiteCheck {
            name: name.into(),
            passed: ok,
            detail: detail.into(),
        }
    }
}

pub fn all_passed(checks: &[SuiteCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}
