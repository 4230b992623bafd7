//! Input and usage errors; all map to exit code 2.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error(transparent)]
    Core(#[from] gcgeom::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// Where in the document the problem is, if known.
    #[must_use]
    pub fn location(&self) -> Option<String> {
        match self {
            Self::Syntax { line, column, .. } => Some(format!("line {line}, column {column}")),
            Self::Input { path, .. } => Some(path.clone()),
            Self::Core(_) | Self::Io { .. } => None,
        }
    }
}
