//! Pass/fail reports for finite verification runs.

use std::fmt;

use serde::Serialize;

use crate::modes::HalfInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One relation checked on every basis state up to `depth`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub relation: String,
    pub depth: HalfInt,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn new(relation: impl Into<String>, depth: HalfInt, failure: Option<String>) -> Self {
        CheckResult {
            relation: relation.into(),
            depth,
            status: if failure.is_some() { Status::Fail } else { Status::Pass },
            detail: failure,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CheckReport {
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn record(&mut self, relation: impl Into<String>, depth: HalfInt, failure: Option<String>) {
        self.checks.push(CheckResult::new(relation, depth, failure));
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, relation: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.relation == relation)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.relation.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            write!(f, "{:<width$}  depth {:<4} {status}", c.relation, c.depth.to_string())?;
            if let Some(d) = &c.detail {
                write!(f, "  ({d})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
