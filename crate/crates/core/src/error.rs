use std::fmt;

use thiserror::Error;

/// One violated density-matrix invariant together with its measured size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// Largest `|m[j,k] - conj(m[k,j])|`.
    Hermiticity(f64),
    /// `|tr m - 1|`.
    Trace(f64),
    /// Most negative eigenvalue of the Hermitian part.
    Positivity(f64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Hermiticity(d) => write!(f, "hermiticity (deviation {d:.3e})"),
            Violation::Trace(d) => write!(f, "trace (|tr - 1| = {d:.3e})"),
            Violation::Positivity(e) => write!(f, "positivity (min eigenvalue {e:.3e})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("invalid state: {}", join(.violations))]
    InvalidState { violations: Vec<Violation> },

    #[error("qubit vector is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("integration step too large: min eigenvalue {min_eigenvalue:.3e} at t = {time}")]
    StepTooLarge { time: f64, min_eigenvalue: f64 },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error(
        "degenerate rates: requires 0 < gamma < gamma0, got gamma0 = {gamma0}, gamma = {gamma}"
    )]
    DegenerateRates { gamma0: f64, gamma: f64 },

    #[error("invalid probability weights: {0}")]
    InvalidWeights(String),

    #[error("state is not pure (tr rho^2 = {purity})")]
    NotPure { purity: f64 },

    #[error("eigenvalue {re:.3e}{im:+.3e}i of rho * spin_flip(rho) is not a nonnegative real")]
    InconsistentSpectrum { re: f64, im: f64 },
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
