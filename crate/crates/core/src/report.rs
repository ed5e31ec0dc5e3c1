//! Pass/fail reports produced by the validators.

use serde::Serialize;
use std::fmt;

/// How thoroughly a check was carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    /// Random spot checks; the number is the sample count.
    Sampled(usize),
    /// Derived from checks on the factors of a product.
    Compositional,
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanMode::Exhaustive => write!(f, "exhaustive"),
            ScanMode::Sampled(n) => write!(f, "sampled({n})"),
            ScanMode::Compositional => write!(f, "compositional"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub mode: ScanMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, mode: ScanMode, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: witness.is_none(),
            mode,
            witness,
        });
    }

    pub fn pass(&mut self, name: impl Into<String>, mode: ScanMode) {
        self.push(name, mode, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, mode: ScanMode, witness: impl Into<String>) {
        self.push(name, mode, Some(witness.into()));
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "  [{status}] {} ({})", c.name, c.mode)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
