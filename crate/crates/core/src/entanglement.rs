//! Entanglement of two-qubit states.
//!
//! Concurrence is the exported measure for mixed states:
//! `C = max(0, λ₁ − λ₂ − λ₃ − λ₄)` where `λᵢ²` are the eigenvalues of `ρ·ρ̃`,
//! `ρ̃ = (σ₂⊗σ₂) ρ̄ (σ₂⊗σ₂)`, in descending order.
//!
//! [`concurrence`] obtains the `λᵢ` as singular values of
//! `τ = Wᵀ (σ₂⊗σ₂) W` with `ρ = W W†`. Small `λᵢ` then come out with
//! absolute accuracy instead of as square roots of round-off, which matters
//! for rank-deficient states (pure states, stationary states).
//! [`concurrence_via_product`] takes square roots of the eigenvalues of
//! `ρ·ρ̃` directly, and [`concurrence_via_root`] follows the nested square
//! roots `ρ̂ = (√ρ ρ̃ √ρ)^{1/2}`, `C = max(0, 2 p_max(ρ̂) − tr ρ̂)`. Both are
//! kept as cross-checks.

use nalgebra::{Schur, SymmetricEigen};

use crate::error::{Error, Result};
use crate::qmat::{
    hermitian_eigenvalues, is_finite, kron, partial_trace, partial_transpose_a, sigma_2, sqrt_psd,
    ComplexMatrix4, DensityMatrix, QubitVector, Subsystem, C64,
};
use crate::tol;

/// A concurrence in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ConcurrenceValue(f64);

impl ConcurrenceValue {
    /// Clamps round-off excursions outside `[0, 1]`.
    fn clamped(v: f64) -> Self {
        Self(v.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<ConcurrenceValue> for f64 {
    fn from(c: ConcurrenceValue) -> f64 {
        c.0
    }
}

fn sigma_yy() -> ComplexMatrix4 {
    kron(&sigma_2(), &sigma_2())
}

/// `(σ₂⊗σ₂) ρ̄ (σ₂⊗σ₂)`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix4 {
    spin_flip_matrix(rho.matrix())
}

pub fn spin_flip_matrix(m: &ComplexMatrix4) -> ComplexMatrix4 {
    let yy = sigma_yy();
    yy * m.map(|z| z.conj()) * yy
}

/// Wootters concurrence via the singular values of `τ = Wᵀ (σ₂⊗σ₂) W`.
pub fn concurrence(rho: &DensityMatrix) -> Result<ConcurrenceValue> {
    if !is_finite(rho.matrix()) {
        return Err(Error::NotHermitian {
            deviation: f64::INFINITY,
        });
    }
    let eig = SymmetricEigen::new(*rho.matrix());
    let min_eigenvalue = eig.eigenvalues.min();
    if min_eigenvalue < -tol::EIGEN_CLAMP {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    let weights = eig.eigenvalues.map(|p| C64::new(p.max(0.0).sqrt(), 0.0));
    let w = eig.eigenvectors * ComplexMatrix4::from_diagonal(&weights);
    let tau = w.transpose() * sigma_yy() * w;
    let mut lambda = [0.0; 4];
    for (slot, s) in lambda.iter_mut().zip(tau.singular_values().iter()) {
        *slot = *s;
    }
    lambda.sort_by(|a, b| b.total_cmp(a));
    Ok(ConcurrenceValue::clamped(
        lambda[0] - lambda[1] - lambda[2] - lambda[3],
    ))
}

/// Concurrence from square roots of the eigenvalues of `ρ·ρ̃`.
///
/// Eigenvalues with real part in `[-1e-10, 0)` are clamped to zero; an
/// imaginary part above 1e-9 or a more negative real part is reported as
/// [`Error::InconsistentSpectrum`].
pub fn concurrence_via_product(rho: &DensityMatrix) -> Result<ConcurrenceValue> {
    let product = rho.matrix() * spin_flip(rho);
    let eigenvalues = Schur::new(product).unpack().1.diagonal();
    let mut roots = [0.0; 4];
    for (slot, z) in roots.iter_mut().zip(eigenvalues.iter()) {
        if z.im.abs() > tol::PRODUCT_IMAG || z.re < -tol::PRODUCT_CLAMP {
            return Err(Error::InconsistentSpectrum { re: z.re, im: z.im });
        }
        *slot = z.re.max(0.0).sqrt();
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok(ConcurrenceValue::clamped(
        roots[0] - roots[1] - roots[2] - roots[3],
    ))
}

/// Concurrence through the nested square roots `ρ̂ = (√ρ ρ̃ √ρ)^{1/2}`.
pub fn concurrence_via_root(rho: &DensityMatrix) -> Result<ConcurrenceValue> {
    let root = sqrt_psd(rho.matrix())?;
    let inner = root * spin_flip(rho) * root;
    let inner = (inner + inner.adjoint()) * C64::new(0.5, 0.0);
    let hat = sqrt_psd(&inner)?;
    let spectrum = hermitian_eigenvalues(&hat)?;
    let trace: f64 = spectrum.iter().sum();
    Ok(ConcurrenceValue::clamped(2.0 * spectrum[0] - trace))
}

/// Peres–Horodecki test: separable iff `ρ^{T_A}` has no eigenvalue below −1e-9.
pub fn is_ppt_separable(rho: &DensityMatrix) -> bool {
    min_partial_transpose_eigenvalue(rho) >= -tol::STRUCTURAL
}

pub fn min_partial_transpose_eigenvalue(rho: &DensityMatrix) -> f64 {
    let pt = partial_transpose_a(rho);
    SymmetricEigen::new(pt).eigenvalues.min()
}

/// Entropy of entanglement (bits) of a pure state: the von Neumann entropy
/// of the reduced state of atom B.
pub fn entropy_of_entanglement(rho: &DensityMatrix) -> Result<f64> {
    let purity = rho.purity();
    if purity < 1.0 - tol::PURITY {
        return Err(Error::NotPure { purity });
    }
    let reduced = partial_trace(rho, Subsystem::A);
    let eig = SymmetricEigen::new(reduced).eigenvalues;
    Ok(eig
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0))
}

/// Concurrence of the g = 1 asymptotic state, `|ρ₂₂ + ρ₃₃ − 2 Re ρ₂₃| / 2`,
/// read off the initial state.
pub fn asymptotic_concurrence(rho0: &DensityMatrix) -> ConcurrenceValue {
    let d = rho0[(1, 1)].re + rho0[(2, 2)].re - 2.0 * rho0[(1, 2)].re;
    ConcurrenceValue::clamped(0.5 * d.abs())
}

/// Asymptotic concurrence of the product state `Ψ ⊗ Φ`:
/// `(1 − |⟨Ψ, Φ⟩|²) / 2`.
pub fn product_asymptotic_concurrence(psi: &QubitVector, phi: &QubitVector) -> ConcurrenceValue {
    ConcurrenceValue::clamped(0.5 * (1.0 - psi.inner(phi).norm_sqr()))
}

/// Asymptotic concurrence of the maximally entangled state `Q(a, θ₁, θ₂)`:
/// `(1 − a²)(1 − cos(θ₁ − θ₂)) / 2`.
pub fn mes_asymptotic_concurrence(a: f64, theta1: f64, theta2: f64) -> Result<ConcurrenceValue> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::InvalidParams(format!(
            "a must lie in [0, 1], got {a}"
        )));
    }
    Ok(ConcurrenceValue::clamped(
        0.5 * (1.0 - a * a) * (1.0 - (theta1 - theta2).cos()),
    ))
}
