//! Structured pass/fail results for the identity suites.

use serde::Serialize;

/// One checked identity: an id, a pass flag, and on failure a witness string
/// (a defect value, a failing index triple, or a residual polynomial).
#[derive(Debug, Clone, Serialize)]
pub struct LineResult {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub lines: Vec<LineResult>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport { suite: suite.into(), lines: Vec::new() }
    }

    pub fn pass(&mut self, id: impl Into<String>) {
        self.lines.push(LineResult { id: id.into(), pass: true, witness: None });
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: impl Into<String>) {
        self.lines.push(LineResult { id: id.into(), pass: false, witness: Some(witness.into()) });
    }

    /// Record a checked condition, passing or failing with the witness.
    pub fn check(&mut self, id: impl Into<String>, ok: bool, witness: impl Into<String>) {
        if ok {
            self.pass(id);
        } else {
            self.fail(id, witness);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failed_lines(&self) -> impl Iterator<Item = &LineResult> {
        self.lines.iter().filter(|l| !l.pass)
    }
}
