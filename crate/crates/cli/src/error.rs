use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rhomotopy::Error),
    #[error("{failed} of {total} checks failed")]
    Mismatch { failed: usize, total: usize },
}

impl CliError {
    pub fn parse(line: usize, col: usize, message: impl Into<String>) -> Self {
        CliError::Parse { line, col, message: message.into() }
    }

    /// Process exit code: 1 for violated axioms and failed checks, 2 for
    /// usage and input errors, 3 when a search budget runs out.
    pub fn exit_code(&self) -> i32 {
        use rhomotopy::Error as E;
        match self {
            CliError::Mismatch { .. } => 1,
            CliError::Core(E::SearchBudgetExceeded { .. }) => 3,
            CliError::Core(
                E::NotSquare { .. }
                | E::NegativeEntry { .. }
                | E::InvalidValue { .. }
                | E::NonzeroDiagonal { .. }
                | E::ZeroOffDiagonal { .. }
                | E::TriangleViolation { .. },
            ) => 1,
            _ => 2,
        }
    }
}
