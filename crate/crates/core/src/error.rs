use std::fmt;

/// A single problem found while reading a graph document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed graph document:\n{}", join_lines(.0))]
    Parse(Vec<LineError>),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("{op}: precondition violated: {reason}")]
    Precondition { op: &'static str, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{op}: size cap exceeded ({size} > {cap})")]
    SizeCap { op: &'static str, size: usize, cap: usize },
    #[error("malformed on-path play: {0}")]
    MalformedPath(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn precondition(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition { op, reason: reason.into() }
    }
}

fn join_lines(errors: &[LineError]) -> String {
    errors.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n")
}

pub type Result<T> = std::result::Result<T, Error>;
