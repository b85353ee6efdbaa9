//! Named-check reports for the verification commands.

use serde::Serialize;

use crate::output::Meta;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Concrete counterexample attached to a failing check.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<u64>,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Pass,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(name: &str, detail: impl Into<String>, witness: Option<Witness>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Fail,
            detail: detail.into(),
            witness,
        }
    }

    pub fn skipped(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Skipped,
            detail: detail.into(),
            witness: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub meta: Meta,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_max_mag2: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_tau: Option<u64>,
}

impl VerificationReport {
    pub fn new(meta: Meta, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.status == CheckStatus::Pass).count();
        let failed = checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
        let skipped = checks.iter().filter(|c| c.status == CheckStatus::Skipped).count();
        VerificationReport {
            meta,
            checks,
            passed,
            failed,
            skipped,
            observed_max_mag2: None,
            max_tau: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Plain-text rendering: one line per check, then the tally.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            out.push_str(&format!("{tag} {} ({})\n", c.name, c.detail));
            if let Some(w) = &c.witness {
                match w.tau {
                    Some(t) => out.push_str(&format!(
                        "     witness: tau = {t}, left = {}, right = {}\n",
                        w.left, w.right
                    )),
                    None => out.push_str(&format!(
                        "     witness: left = {}, right = {}\n",
                        w.left, w.right
                    )),
                }
            }
        }
        if let (Some(m), Some(t)) = (self.observed_max_mag2, self.max_tau) {
            out.push_str(&format!(
                "observed max |C_d(tau)|^2 = {m} at tau = {t} (bound^2 = {})\n",
                self.meta.bound_squared
            ));
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            self.passed, self.failed, self.skipped
        ));
        out
    }
}
