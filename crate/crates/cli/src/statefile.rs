//! JSON state files.
//!
//! A state file holds either the full matrix or a named family. The matrix is
//! 16 `[re, im]` pairs in row-major order, in the basis
//! `|1⟩⊗|1⟩, |1⟩⊗|0⟩, |0⟩⊗|1⟩, |0⟩⊗|0⟩`, given as a bare array or as
//! `{"matrix": [...]}`. Families take keyword parameters:
//!
//! ```text
//! {"family": "product", "psi": [[1, 0], [0, 0]], "phi": [[0, 0], [1, 0]]}
//! {"family": "bell", "which": "psi-"}
//! {"family": "mes", "a": 0.5, "theta1": 3.14159, "theta2": 0}
//! {"family": "bell_diagonal", "p": [0.1, 0.2, 0.3, 0.4]}
//! {"family": "werner", "p": 0.5}
//! {"family": "mems", "delta": 0.8}
//! {"family": "basis", "atoms": "10"}
//! ```
//!
//! `psi` and `phi` are normalized single-atom amplitudes `(Ψ₁, Ψ₂)` with
//! `|1⟩ = (1, 0)`. In `atoms`, `1` is excited and `0` is ground, atom A first.

use std::fmt::Write as _;

use coldecay_core::qmat::validate_state;
use coldecay_core::states::{self, BellState, MemsDelta};
use coldecay_core::{ComplexMatrix4, DensityMatrix, QubitVector, C64};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    Product {
        psi: [[f64; 2]; 2],
        phi: [[f64; 2]; 2],
    },
    Bell {
        which: String,
    },
    Mes {
        a: f64,
        theta1: f64,
        theta2: f64,
    },
    BellDiagonal {
        p: [f64; 4],
    },
    Werner {
        p: f64,
    },
    Mems {
        delta: f64,
    },
    Basis {
        atoms: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateFile {
    Matrix(ComplexMatrix4),
    Family(Family),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Wrapped {
    matrix: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(CliError::state)?;
        match value {
            Value::Array(_) => {
                let pairs: Vec<[f64; 2]> =
                    serde_json::from_value(value).map_err(CliError::state)?;
                Ok(StateFile::Matrix(matrix_from_pairs(&pairs)?))
            }
            Value::Object(ref map) if map.contains_key("matrix") => {
                let w: Wrapped = serde_json::from_value(value).map_err(CliError::state)?;
                Ok(StateFile::Matrix(matrix_from_pairs(&w.matrix)?))
            }
            Value::Object(ref map) if map.contains_key("family") => Ok(StateFile::Family(
                serde_json::from_value(value).map_err(CliError::state)?,
            )),
            _ => Err(CliError::state(
                "expected a 16-entry matrix or an object with `family`",
            )),
        }
    }

    pub fn from_state(rho: &DensityMatrix) -> Self {
        StateFile::Matrix(*rho.matrix())
    }

    /// Builds and validates the state.
    pub fn to_state(&self) -> Result<DensityMatrix> {
        match self {
            StateFile::Matrix(m) => validate_state(m).map_err(CliError::state),
            StateFile::Family(f) => f.build().map_err(CliError::state),
        }
    }

    /// JSON text. Matrix entries are written with 17 significant digits, so
    /// re-reading reproduces every entry bit for bit.
    pub fn to_json(&self) -> String {
        match self {
            StateFile::Matrix(m) => {
                let mut out = String::from("{\"matrix\": [\n");
                for j in 0..4 {
                    for k in 0..4 {
                        let z = m[(j, k)];
                        let sep = if (j, k) == (3, 3) { "" } else { "," };
                        writeln!(out, "  [{:.16e}, {:.16e}]{sep}", z.re, z.im).unwrap();
                    }
                }
                out.push_str("]}\n");
                out
            }
            StateFile::Family(f) => serde_json::to_string(f).expect("families serialize") + "\n",
        }
    }
}

fn matrix_from_pairs(pairs: &[[f64; 2]]) -> Result<ComplexMatrix4> {
    if pairs.len() != 16 {
        return Err(CliError::state(format!(
            "expected 16 [re, im] pairs, got {}",
            pairs.len()
        )));
    }
    Ok(ComplexMatrix4::from_fn(|j, k| {
        let [re, im] = pairs[4 * j + k];
        C64::new(re, im)
    }))
}

fn qubit(amps: &[[f64; 2]; 2]) -> coldecay_core::Result<QubitVector> {
    QubitVector::new(
        C64::new(amps[0][0], amps[0][1]),
        C64::new(amps[1][0], amps[1][1]),
    )
}

impl Family {
    pub fn build(&self) -> coldecay_core::Result<DensityMatrix> {
        match self {
            Family::Product { psi, phi } => Ok(states::product_state(&qubit(psi)?, &qubit(phi)?)),
            Family::Bell { which } => Ok(states::bell(which.parse::<BellState>()?)),
            Family::Mes { a, theta1, theta2 } => states::mes(*a, *theta1, *theta2),
            Family::BellDiagonal { p } => states::bell_diagonal(*p),
            Family::Werner { p } => states::werner(*p),
            Family::Mems { delta } => Ok(states::mems(MemsDelta::new(*delta)?)),
            Family::Basis { atoms } => {
                let level = |c: char| match c {
                    '1' => Ok(true),
                    '0' => Ok(false),
                    other => Err(coldecay_core::Error::InvalidParams(format!(
                        "basis atoms must be `0` or `1`, got `{other}`"
                    ))),
                };
                let chars: Vec<char> = atoms.chars().collect();
                match chars.as_slice() {
                    [a, b] => Ok(states::basis_state(level(*a)?, level(*b)?)),
                    _ => Err(coldecay_core::Error::InvalidParams(format!(
                        "basis takes two characters such as \"10\", got {atoms:?}"
                    ))),
                }
            }
        }
    }
}
