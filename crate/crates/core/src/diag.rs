//! Structured diagnostics shared by the checker, the solver and the CLI.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    pub fn new(start: Pos, end: Pos) -> Span {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span {
            start: self.start,
            end: other.end,
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start.line, self.start.col)
    }
}

/// Unmatched atoms of a failed production search, already rendered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl ResidueReport {
    /// The `Δ ≠ Δ'` form: atoms only the target needs, then atoms only the
    /// source offers, each as a right-nested tensor closed by `◇`.
    pub fn inequation(&self) -> String {
        fn side(atoms: &[String]) -> String {
            let mut s = String::new();
            for a in atoms {
                s.push_str(a);
                s.push_str(" ⊗ ");
            }
            s.push('◇');
            s
        }
        format!("{} ≠ {}", side(&self.right), side(&self.left))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("{message}")]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: Span,
    pub rule: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residue: Option<ResidueReport>,
}

pub type Result<T, E = Diagnostic> = std::result::Result<T, E>;

impl Diagnostic {
    pub fn error(rule: impl Into<String>, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            span: Span::default(),
            rule: rule.into(),
            message: message.into(),
            residue: None,
        }
    }

    pub fn with_span(mut self, span: Span) -> Diagnostic {
        if self.span == Span::default() {
            self.span = span;
        }
        self
    }

    pub fn with_residue(mut self, residue: ResidueReport) -> Diagnostic {
        self.residue = Some(residue);
        self
    }

    pub fn render(&self, path: &str) -> String {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        format!(
            "{path}:{}: {sev}[{}]: {}",
            self.span, self.rule, self.message
        )
    }
}
