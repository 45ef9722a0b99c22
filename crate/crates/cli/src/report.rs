//! Run reports: named checks plus optional values, rendered as text or JSON.

use std::fmt::Write;

use gl11_core::Report;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub max_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub tolerance: f64,
    pub checks: Vec<CheckRecord>,
    /// Computed quantities that are reported rather than checked.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<(String, serde_json::Value)>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: &str, tolerance: f64, report: &Report) -> Self {
        let checks: Vec<_> = report
            .checks()
            .into_iter()
            .map(|c| CheckRecord {
                name: c.name,
                max_residual: c.max_residual,
                passed: c.passed,
            })
            .collect();
        RunReport {
            command: command.into(),
            tolerance,
            passed: checks.iter().all(|c| c.passed),
            checks,
            values: Vec::new(),
        }
    }

    pub fn with_value(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.values.push((key.into(), v));
        self
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let values: serde_json::Map<_, _> = self.values.iter().cloned().collect();
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if !values.is_empty() {
            v["values"] = serde_json::Value::Object(values);
        }
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (tolerance {:e})", self.command, self.tolerance);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "  {:<width$}  {:>10.3e}  {verdict}", c.name, c.max_residual);
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        if failed == 0 {
            let _ = writeln!(out, "result: pass ({} checks)", self.checks.len());
        } else {
            let _ = writeln!(out, "result: FAIL ({failed} of {} checks)", self.checks.len());
        }
        out
    }
}
