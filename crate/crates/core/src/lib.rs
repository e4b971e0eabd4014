//! Dissipative dynamics of two two-level atoms coupled through collective
//! spontaneous emission.
//!
//! * [`qmat`]: 2×2 / 4×4 complex linear algebra and [`DensityMatrix`].
//! * [`model`]: the Lindblad generator and an RK4 integrator.
//! * [`propagator`]: closed-form evolution and asymptotic states.
//! * [`entanglement`]: concurrence, PPT test, entropy of entanglement.
//! * [`states`]: the state families studied (Bell, Werner, MEMS, ...).
//! * [`series`]: sampled time series of concurrence and states.

pub mod entanglement;
pub mod error;
pub mod model;
pub mod propagator;
pub mod qmat;
pub mod random;
pub mod series;
pub mod states;
pub mod tol;

pub use entanglement::{concurrence, ConcurrenceValue};
pub use error::{Error, Result, Violation};
pub use model::{IntegratorConfig, ModelParams};
pub use propagator::{AsymptoticParams, Symmetry};
pub use qmat::{ComplexMatrix2, ComplexMatrix4, DensityMatrix, QubitVector, Subsystem, C64};
pub use series::{Record, TimeSeries};
pub use states::{BellState, MemsDelta};
