use std::fmt;

use crate::morse::ValidationReport;

/// Errors raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("abscissa not strictly increasing at sample {index} (x = {x})")]
    NonMonotoneAbscissa { index: usize, x: f64 },

    #[error("invalid Morse set: {0}")]
    InvalidMorseSet(ValidationReport),

    #[error("kind mismatch: cannot compare {left} with {right}")]
    KindMismatch { left: DiagramKind, right: DiagramKind },

    #[error("no finite-cost matching: an infinite point has no admissible partner")]
    UnmatchableInfinity,

    #[error("assignment infeasible: no perfect matching of finite cost")]
    Infeasible,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which transformation output a diagram holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagramKind {
    Pt,
    Rpt,
    Pd,
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagramKind::Pt => "pt",
            DiagramKind::Rpt => "rpt",
            DiagramKind::Pd => "pd",
        })
    }
}
