use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use heisvc_core::CheckSummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub data: Value,
    pub elapsed_ms: u64,
}

/// A discrepancy with a stated claim. Recorded, never counted as a failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub name: String,
    pub summary: String,
    pub data: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
}

/// Collects checks while a command runs.
pub struct ReportBuilder {
    command: String,
    checks: Vec<Check>,
    findings: Vec<Finding>,
}

impl ReportBuilder {
    pub fn new(command: impl Into<String>) -> Self {
        ReportBuilder { command: command.into(), checks: vec![], findings: vec![] }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, data: Value, elapsed: Duration) {
        let elapsed_ms = elapsed.as_millis() as u64;
        self.checks.push(Check { name: name.into(), status, data, elapsed_ms });
    }

    /// A query result: always passes.
    pub fn answer(&mut self, name: &str, data: impl Serialize, elapsed: Duration) {
        self.push(name, Status::Pass, to_value(data), elapsed);
    }

    pub fn summary(&mut self, s: CheckSummary, elapsed: Duration) {
        let status = Status::from_ok(s.passed());
        let data = serde_json::json!({
            "tested": s.tested,
            "failed": s.failed,
            "counterexamples": s.counterexamples,
        });
        self.push(s.name, status, data, elapsed);
    }

    pub fn finding(&mut self, name: &str, summary: String, data: impl Serialize) {
        self.findings.push(Finding { name: name.into(), summary, data: to_value(data) });
    }

    pub fn finish(mut self) -> Report {
        self.checks.sort_by(|x, y| x.name.cmp(&y.name));
        let status = Status::from_ok(self.checks.iter().all(|c| c.status == Status::Pass));
        Report {
            tool: "heisvc".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: self.command,
            status,
            checks: self.checks,
            findings: self.findings,
        }
    }
}

fn to_value(data: impl Serialize) -> Value {
    serde_json::to_value(data).expect("report payloads are plain data")
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text table: one line per check, then the findings.
    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(out, "{} {}  {}", self.tool, self.version, self.command);
        for c in &self.checks {
            let _ = writeln!(out, "  {}  {:<width$}  {:>6} ms  {}", c.status.label(), c.name, c.elapsed_ms, c.data);
        }
        if !self.findings.is_empty() {
            let _ = writeln!(out, "findings:");
            for f in &self.findings {
                let _ = writeln!(out, "  {}: {}", f.name, f.summary);
            }
        }
        let _ = writeln!(out, "{}", self.status.label());
        out
    }
}
