//! Numerical tolerances shared across the crate.
//!
//! Structural checks (Hermiticity, trace, positivity of a state) use
//! [`STRUCTURAL`]; identities that involve a few matrix products or an
//! eigendecomposition use [`ALGEBRAIC`]. Functions that accept a tolerance
//! argument (`*_with`) let tests tighten or relax these.

/// Hermiticity, unit trace and positivity of a density matrix.
pub const STRUCTURAL: f64 = 1e-9;

/// Algebraic identities such as `sqrt(M)^2 = M`.
pub const ALGEBRAIC: f64 = 1e-8;

/// Relaxed state check applied to integrator output.
pub const INTEGRATED_STATE: f64 = 1e-7;

/// Positivity violation at which an integration step is rejected.
pub const STEP_POSITIVITY: f64 = 1e-6;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as zero before square roots.
pub const EIGEN_CLAMP: f64 = 1e-9;

/// Eigenvalues of `rho * spin_flip(rho)` in `[-PRODUCT_CLAMP, 0)` are clamped to zero.
pub const PRODUCT_CLAMP: f64 = 1e-10;

/// Largest imaginary part tolerated on an eigenvalue of `rho * spin_flip(rho)`.
pub const PRODUCT_IMAG: f64 = 1e-9;

/// Purity threshold for the entropy of entanglement: `tr(rho^2) >= 1 - PURITY`.
pub const PURITY: f64 = 1e-9;

/// Normalization of single-qubit vectors.
pub const NORMALIZATION: f64 = 1e-12;

/// Probability weights must sum to one within this bound.
pub const WEIGHTS: f64 = 1e-12;
