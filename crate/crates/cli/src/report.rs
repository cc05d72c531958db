//! The versioned report every subcommand produces.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gmlab_core::suite::{Criterion, SuiteCheck, Tag};
use serde::Serialize;
use serde_json::Value;

use crate::config::Emit;

pub const SCHEMA: &str = "gmlab/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub payload: Value,
    pub checks: Vec<SuiteCheck>,
    /// Human rendering of the payload, used by `--emit markdown`.
    #[serde(skip)]
    pub body: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA,
            command: command.into(),
            inputs: BTreeMap::new(),
            verdict: Verdict::Pass,
            payload: Value::Null,
            checks: Vec::new(),
            body: String::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.insert(key.into(), serde_json::to_value(value).expect("serializable input"));
        self
    }

    pub fn payload(mut self, value: impl Serialize, body: String) -> Self {
        self.payload = serde_json::to_value(value).expect("serializable payload");
        self.body = body;
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>, tag: Tag) {
        self.checks.push(SuiteCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
            tag,
        });
    }

    pub fn extend_from(&mut self, c: &Criterion) {
        self.checks.extend(c.checks.iter().cloned());
    }

    /// Set the verdict from the checks; a report with no checks passes.
    pub fn finish(mut self) -> Self {
        self.verdict = if self.checks.iter().all(|c| c.passed) { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }

    pub fn render(&self, emit: Emit) -> String {
        match emit {
            Emit::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Emit::Markdown => self.markdown(),
        }
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        let _ = writeln!(out, "# gmlab {}: {verdict}\n", self.command);
        if !self.inputs.is_empty() {
            let parts: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(out, "inputs: {}\n", parts.join(", "));
        }
        if !self.body.is_empty() {
            out.push_str(&self.body);
            if !self.body.ends_with('\n') {
                out.push('\n');
            }
            out.push('\n');
        }
        if !self.checks.is_empty() {
            out.push_str("| check | result | tag | detail |\n|---|---|---|---|\n");
            for c in &self.checks {
                let tag = serde_json::to_value(c.tag).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    c.name.replace('|', "\\|"),
                    if c.passed { "pass" } else { "FAIL" },
                    tag,
                    c.detail.replace('|', "\\|")
                );
            }
        }
        out
    }
}
