use std::fmt;

use serde::Serialize;

use crate::models::{Mode, Orientation};

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("{}", format_parse(.source_name, *.line, .column.as_deref(), .message))]
    Parse {
        source_name: String,
        line: Option<usize>,
        column: Option<String>,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("model infeasible ({} run(s)): {}", .0.len(), join_reports(.0))]
    Infeasible(Vec<InfeasibilityReport>),

    #[error("internal solver error: {0}")]
    Solver(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(
        source_name: impl Into<String>,
        line: Option<usize>,
        column: Option<&str>,
        message: impl Into<String>,
    ) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            line,
            column: column.map(str::to_owned),
            message: message.into(),
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible(_))
    }
}

fn format_parse(source: &str, line: Option<usize>, column: Option<&str>, message: &str) -> String {
    let mut out = format!("parse error in {source}");
    if let Some(line) = line {
        out.push_str(&format!(", line {line}"));
    }
    if let Some(column) = column {
        out.push_str(&format!(", column '{column}'"));
    }
    out.push_str(": ");
    out.push_str(message);
    out
}

fn join_reports(reports: &[InfeasibilityReport]) -> String {
    reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Why a DEA model could not be solved for one DMU.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfeasibilityReport {
    pub dmu: String,
    pub orientation: Orientation,
    pub mode: Mode,
    /// Normalization equalities that cannot hold at the same time, e.g.
    /// `sum(u*x^L) = 1 vs sum(u*x^U) = 1`.
    pub conflicts: Vec<String>,
    pub detail: String,
}

impl fmt::Display for InfeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DMU {} ({}, {} mode): {}",
            self.dmu, self.orientation, self.mode, self.detail
        )?;
        if !self.conflicts.is_empty() {
            write!(f, " [{}]", self.conflicts.join(", "))?;
        }
        Ok(())
    }
}
