use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The state file could not be parsed or does not describe a valid state.
    #[error("invalid input state: {0}")]
    InvalidState(String),
    /// Flags that are out of range or do not fit together.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("closed-form evolution for g < 1 exists only for |1⟩⊗|0⟩, |0⟩⊗|1⟩, Ψ± and |0⟩⊗|0⟩ (g = {g})")]
    UnsupportedClosedForm { g: f64 },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidState(_) => 2,
            CliError::Unsupported(_) | CliError::UnsupportedClosedForm { .. } => 3,
            CliError::Io(_) => 1,
        }
    }

    pub(crate) fn state(err: impl ToString) -> Self {
        CliError::InvalidState(err.to_string())
    }

    pub(crate) fn params(err: impl ToString) -> Self {
        CliError::Unsupported(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
