//! Named residual checks.

use alloc::string::String;
use alloc::vec::Vec;

/// One named identity together with its largest observed residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, max_residual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            max_residual,
            // NaN never passes
            passed: max_residual <= tol,
        }
    }
}

/// A collection of checks. Checks with the same name are merged by taking
/// the larger residual, so a report can be accumulated over many instances.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn record(&mut self, name: &str, residual: f64, tol: f64) {
        if let Some(c) = self.checks.iter_mut().find(|c| c.name == name) {
            if residual > c.max_residual || residual.is_nan() {
                c.max_residual = residual;
            }
            c.passed = c.passed && residual <= tol;
        } else {
            self.checks.push(Check::new(name, residual, tol));
        }
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            if let Some(mine) = self.checks.iter_mut().find(|m| m.name == c.name) {
                if c.max_residual > mine.max_residual || c.max_residual.is_nan() {
                    mine.max_residual = c.max_residual;
                }
                mine.passed = mine.passed && c.passed;
            } else {
                self.checks.push(c);
            }
        }
    }

    /// Prefix every check name, e.g. to scope a sub-report.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.name = alloc::format!("{prefix}{}", c.name);
        }
        self
    }

    /// Checks sorted by name.
    pub fn checks(&self) -> Vec<Check> {
        let mut out = self.checks.clone();
        out.sort_by(|a, b| a.name.cmp(&b.name));
        out
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Names of the failing checks, sorted.
    pub fn failures(&self) -> Vec<String> {
        self.checks()
            .into_iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}
