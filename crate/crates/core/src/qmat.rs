//! Dense complex linear algebra on 2×2 and 4×4 matrices and the
//! two-qubit density-matrix type.
//!
//! # Basis convention
//!
//! Single-atom states are `|1⟩ = (1, 0)` (excited) and `|0⟩ = (0, 1)`
//! (ground). Two-atom matrices are written in the product basis
//!
//! ```text
//! e1 = |1⟩⊗|1⟩,  e2 = |1⟩⊗|0⟩,  e3 = |0⟩⊗|1⟩,  e4 = |0⟩⊗|0⟩
//! ```
//!
//! which is exactly the ordering produced by the Kronecker product of the
//! single-atom column vectors. Atom A is the left tensor factor. With this
//! ordering the ground state of both atoms sits at index (4,4), and the
//! asymptotic-state parameters of a product state come out as functions
//! of `Ψ₁Ψ̄₂` and `|Φ₂|²` with the signs used throughout `propagator`.
//!
//! Indices in this module are zero-based (`m[(0, 0)]` is ρ₁₁).

use std::ops::Index;

use nalgebra::{Matrix2, Matrix4, SymmetricEigen, Vector2, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result, Violation};
use crate::tol;

pub type C64 = Complex64;
pub type ComplexMatrix2 = Matrix2<C64>;
pub type ComplexMatrix4 = Matrix4<C64>;
pub type StateVector = Vector4<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Which atom a partial operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// `σ₊ = |1⟩⟨0|`.
pub fn sigma_plus() -> ComplexMatrix2 {
    Matrix2::new(ZERO, ONE, ZERO, ZERO)
}

/// `σ₋ = |0⟩⟨1|`.
pub fn sigma_minus() -> ComplexMatrix2 {
    Matrix2::new(ZERO, ZERO, ONE, ZERO)
}

pub fn sigma_1() -> ComplexMatrix2 {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

pub fn sigma_2() -> ComplexMatrix2 {
    Matrix2::new(ZERO, -I, I, ZERO)
}

pub fn identity2() -> ComplexMatrix2 {
    Matrix2::identity()
}

/// Kronecker product `a ⊗ b` in the fixed basis order.
pub fn kron(a: &ComplexMatrix2, b: &ComplexMatrix2) -> ComplexMatrix4 {
    a.kronecker(b)
}

/// Largest `|m[j,k] - conj(m[k,j])|`.
///
/// Non-finite entries give `f64::INFINITY`.
pub fn hermiticity_deviation(m: &ComplexMatrix4) -> f64 {
    if !is_finite(m) {
        return f64::INFINITY;
    }
    let mut dev = 0.0_f64;
    for j in 0..4 {
        for k in j..4 {
            dev = dev.max((m[(j, k)] - m[(k, j)].conj()).norm());
        }
    }
    dev
}

pub(crate) fn is_finite(m: &ComplexMatrix4) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn hermitian_part(m: &ComplexMatrix4) -> ComplexMatrix4 {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

fn sorted_desc(values: impl IntoIterator<Item = f64>) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (slot, v) in out.iter_mut().zip(values) {
        *slot = v;
    }
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Real spectrum of a Hermitian 4×4 matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix4) -> Result<[f64; 4]> {
    let deviation = hermiticity_deviation(m);
    if deviation > tol::STRUCTURAL {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = SymmetricEigen::new(hermitian_part(m));
    Ok(sorted_desc(eig.eigenvalues.iter().copied()))
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-1e-9, 0)` are clamped to zero first.
pub fn sqrt_psd(m: &ComplexMatrix4) -> Result<ComplexMatrix4> {
    let deviation = hermiticity_deviation(m);
    if deviation > tol::STRUCTURAL {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = SymmetricEigen::new(hermitian_part(m));
    let min_eigenvalue = eig.eigenvalues.min();
    if min_eigenvalue < -tol::EIGEN_CLAMP {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    let roots = eig.eigenvalues.map(|v| C64::new(v.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    Ok(v * Matrix4::from_diagonal(&roots) * v.adjoint())
}

/// Reduced 2×2 state after tracing out `subsystem`.
pub fn partial_trace(rho: &DensityMatrix, subsystem: Subsystem) -> ComplexMatrix2 {
    partial_trace_matrix(rho.matrix(), subsystem)
}

/// [`partial_trace`] on an arbitrary 4×4 matrix.
pub fn partial_trace_matrix(m: &ComplexMatrix4, subsystem: Subsystem) -> ComplexMatrix2 {
    // index = 2 * a + b
    Matrix2::from_fn(|r, c| match subsystem {
        Subsystem::A => m[(r, c)] + m[(2 + r, 2 + c)],
        Subsystem::B => m[(2 * r, 2 * c)] + m[(2 * r + 1, 2 * c + 1)],
    })
}

/// Transpose of the atom-A indices: `ρ^{T_A}[(a,b),(a',b')] = ρ[(a',b),(a,b')]`.
pub fn partial_transpose_a(rho: &DensityMatrix) -> ComplexMatrix4 {
    partial_transpose_a_matrix(rho.matrix())
}

pub fn partial_transpose_a_matrix(m: &ComplexMatrix4) -> ComplexMatrix4 {
    Matrix4::from_fn(|r, c| {
        let (a, b) = (r / 2, r % 2);
        let (ap, bp) = (c / 2, c % 2);
        m[(2 * ap + b, 2 * a + bp)]
    })
}

/// Checks the three density-matrix invariants at the default tolerance.
pub fn validate_state(m: &ComplexMatrix4) -> Result<DensityMatrix> {
    validate_state_with(m, tol::STRUCTURAL)
}

/// Checks Hermiticity, unit trace and positivity, reporting every violated
/// invariant. Positivity is judged on the Hermitian part of `m`.
pub fn validate_state_with(m: &ComplexMatrix4, tolerance: f64) -> Result<DensityMatrix> {
    if !is_finite(m) {
        return Err(Error::InvalidState {
            violations: vec![Violation::Hermiticity(f64::INFINITY)],
        });
    }
    let mut violations = Vec::new();
    let herm = hermiticity_deviation(m);
    if herm > tolerance {
        violations.push(Violation::Hermiticity(herm));
    }
    let trace_dev = (m.trace() - ONE).norm();
    if trace_dev > tolerance {
        violations.push(Violation::Trace(trace_dev));
    }
    let min_eig = SymmetricEigen::new(hermitian_part(m)).eigenvalues.min();
    if min_eig < -tolerance {
        violations.push(Violation::Positivity(min_eig));
    }
    if violations.is_empty() {
        Ok(DensityMatrix(*m))
    } else {
        Err(Error::InvalidState { violations })
    }
}

/// Normalized single-atom pure state `(Ψ₁, Ψ₂)` with `|1⟩ = (1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitVector(Vector2<C64>);

impl QubitVector {
    /// Accepts amplitudes that are already normalized within 1e-12.
    pub fn new(psi1: C64, psi2: C64) -> Result<Self> {
        let norm_sqr = psi1.norm_sqr() + psi2.norm_sqr();
        if (norm_sqr - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self(Vector2::new(psi1, psi2)))
    }

    /// Rescales the amplitudes to unit norm.
    pub fn normalized(psi1: C64, psi2: C64) -> Result<Self> {
        let norm_sqr = psi1.norm_sqr() + psi2.norm_sqr();
        if !(norm_sqr.is_finite() && norm_sqr > 0.0) {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let s = C64::new(norm_sqr.sqrt().recip(), 0.0);
        Ok(Self(Vector2::new(psi1 * s, psi2 * s)))
    }

    /// `|1⟩`
    pub fn excited() -> Self {
        Self(Vector2::new(ONE, ZERO))
    }

    /// `|0⟩`
    pub fn ground() -> Self {
        Self(Vector2::new(ZERO, ONE))
    }

    pub fn amplitudes(&self) -> (C64, C64) {
        (self.0[0], self.0[1])
    }

    pub fn as_vector(&self) -> &Vector2<C64> {
        &self.0
    }

    /// `⟨self, other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &QubitVector) -> C64 {
        self.0.dotc(&other.0)
    }

    /// `self ⊗ other` in the fixed basis.
    pub fn tensor(&self, other: &QubitVector) -> StateVector {
        self.0.kronecker(&other.0)
    }

    pub fn projector(&self) -> ComplexMatrix2 {
        self.0 * self.0.adjoint()
    }
}

/// A validated two-qubit state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(ComplexMatrix4);

impl DensityMatrix {
    /// Wraps a matrix the caller has already established to be a state.
    pub(crate) fn from_trusted(m: ComplexMatrix4) -> Self {
        Self(m)
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix4::identity() * C64::new(0.25, 0.0))
    }

    /// Projector `|v⟩⟨v| / ⟨v|v⟩`.
    pub fn from_pure(v: &StateVector) -> Result<Self> {
        let n = v.norm_squared();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NotNormalized { norm_sqr: n });
        }
        Ok(Self(v * v.adjoint() / C64::new(n, 0.0)))
    }

    /// `ρ_A ⊗ ρ_B`, validated.
    pub fn product(a: &ComplexMatrix2, b: &ComplexMatrix2) -> Result<Self> {
        validate_state(&kron(a, b))
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix4 {
        self.0
    }

    /// `tr(ρ²)`
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    /// Spectrum, descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        sorted_desc(
            SymmetricEigen::new(hermitian_part(&self.0))
                .eigenvalues
                .iter()
                .copied(),
        )
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }

    /// `λ·self + (1-λ)·other`.
    pub fn mix(&self, other: &DensityMatrix, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidWeights(format!(
                "mixing weight {lambda} outside [0, 1]"
            )));
        }
        Ok(Self(
            self.0 * C64::new(lambda, 0.0) + other.0 * C64::new(1.0 - lambda, 0.0),
        ))
    }

    /// `U ρ U†` for a 4×4 unitary `U`.
    pub fn conjugate_by(&self, u: &ComplexMatrix4) -> Self {
        Self(u * self.0 * u.adjoint())
    }
}

impl Index<(usize, usize)> for DensityMatrix {
    type Output = C64;

    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

pub fn max_abs_diff(a: &ComplexMatrix4, b: &ComplexMatrix4) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn diag4(d: [f64; 4]) -> ComplexMatrix4 {
        Matrix4::from_diagonal(&Vector4::new(c(d[0]), c(d[1]), c(d[2]), c(d[3])))
    }

    fn singlet() -> DensityMatrix {
        // (|1⟩⊗|0⟩ - |0⟩⊗|1⟩)/√2 = (e2 - e3)/√2
        DensityMatrix::from_pure(&Vector4::new(ZERO, ONE, -ONE, ZERO)).unwrap()
    }

    #[test]
    fn kron_identity_and_projector() {
        assert_eq!(kron(&identity2(), &identity2()), Matrix4::identity());
        let p1 = Matrix2::new(ONE, ZERO, ZERO, ZERO);
        assert_eq!(kron(&p1, &p1), diag4([1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_sigma_plus_embedding() {
        let m = kron(&sigma_plus(), &identity2());
        for r in 0..4 {
            for col in 0..4 {
                let expected = if (r, col) == (0, 2) || (r, col) == (1, 3) {
                    ONE
                } else {
                    ZERO
                };
                assert_eq!(m[(r, col)], expected, "entry ({}, {})", r + 1, col + 1);
            }
        }
    }

    #[test]
    fn sigma_plus_from_paulis() {
        let half = C64::new(0.5, 0.0);
        assert_eq!((sigma_1() + sigma_2() * I) * half, sigma_plus());
        assert_eq!((sigma_1() - sigma_2() * I) * half, sigma_minus());
    }

    #[test]
    fn basis_vectors_follow_kronecker_order() {
        let e = QubitVector::excited();
        let g = QubitVector::ground();
        assert_eq!(e.tensor(&e), Vector4::new(ONE, ZERO, ZERO, ZERO));
        assert_eq!(e.tensor(&g), Vector4::new(ZERO, ONE, ZERO, ZERO));
        assert_eq!(g.tensor(&e), Vector4::new(ZERO, ZERO, ONE, ZERO));
        assert_eq!(g.tensor(&g), Vector4::new(ZERO, ZERO, ZERO, ONE));
    }

    #[test]
    fn partial_trace_of_product_and_singlet() {
        let ra = Matrix2::new(c(0.7), C64::new(0.1, 0.2), C64::new(0.1, -0.2), c(0.3));
        let rb = Matrix2::new(c(0.4), C64::new(0.0, 0.3), C64::new(0.0, -0.3), c(0.6));
        let rho = DensityMatrix::product(&ra, &rb).unwrap();
        assert!((partial_trace(&rho, Subsystem::A) - rb).norm() < 1e-15);
        assert!((partial_trace(&rho, Subsystem::B) - ra).norm() < 1e-15);

        let half = identity2() * c(0.5);
        assert!((partial_trace(&singlet(), Subsystem::A) - half).norm() < 1e-15);

        let g = QubitVector::ground().projector();
        let gg = DensityMatrix::product(&g, &g).unwrap();
        assert_eq!(partial_trace(&gg, Subsystem::B), g);
    }

    #[test]
    fn partial_transpose_fixed_points_and_singlet() {
        let mixed = DensityMatrix::maximally_mixed();
        assert_eq!(partial_transpose_a(&mixed), *mixed.matrix());

        let ra = Matrix2::new(c(0.7), c(0.2), c(0.2), c(0.3));
        let rb = Matrix2::new(c(0.4), C64::new(0.0, 0.3), C64::new(0.0, -0.3), c(0.6));
        let rho = DensityMatrix::product(&ra, &rb).unwrap();
        assert!(max_abs_diff(&partial_transpose_a(&rho), rho.matrix()) < 1e-15);

        let pt = partial_transpose_a(&singlet());
        let eig = hermitian_eigenvalues(&pt).unwrap();
        assert!((eig[3] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(
            hermitian_eigenvalues(&Matrix4::identity()).unwrap(),
            [1.0; 4]
        );
        let e = hermitian_eigenvalues(&diag4([0.1, 0.7, 0.0, 0.2])).unwrap();
        assert_eq!(e, [0.7, 0.2, 0.1, 0.0]);
        let e = hermitian_eigenvalues(singlet().matrix()).unwrap();
        for (x, y) in e.iter().zip([1.0, 0.0, 0.0, 0.0]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let mut m = Matrix4::identity();
        m[(0, 1)] = ONE;
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn sqrt_examples() {
        let id: ComplexMatrix4 = Matrix4::identity();
        assert!(max_abs_diff(&sqrt_psd(&id).unwrap(), &id) < 1e-14);
        let s = sqrt_psd(&diag4([4.0, 1.0, 0.0, 0.0])).unwrap();
        assert!(max_abs_diff(&s, &diag4([2.0, 1.0, 0.0, 0.0])) < 1e-14);
        let p = *singlet().matrix();
        assert!(max_abs_diff(&sqrt_psd(&p).unwrap(), &p) < 1e-12);
    }

    #[test]
    fn sqrt_rejects_negative_spectrum() {
        assert!(matches!(
            sqrt_psd(&diag4([1.0, 0.0, 0.0, -1e-6])),
            Err(Error::NotPsd { .. })
        ));
        // inside the clamping band
        assert!(sqrt_psd(&diag4([1.0, 0.0, 0.0, -1e-10])).is_ok());
    }

    #[test]
    fn validate_examples() {
        assert!(validate_state(DensityMatrix::maximally_mixed().matrix()).is_ok());

        // 0.5 + 0.6 + 0 - 0.1 = 1, so only positivity fails here
        let err = validate_state(&diag4([0.5, 0.6, 0.0, -0.1])).unwrap_err();
        let Error::InvalidState { violations } = err else {
            panic!("wrong error")
        };
        assert_eq!(violations.len(), 1);
        assert!(matches!(violations[0], Violation::Positivity(e) if (e + 0.1).abs() < 1e-15));

        let err = validate_state(&diag4([0.5, 0.7, 0.0, -0.1])).unwrap_err();
        let Error::InvalidState { violations } = err else {
            panic!("wrong error")
        };
        assert_eq!(violations.len(), 2);
        assert!(matches!(violations[0], Violation::Trace(d) if (d - 0.1).abs() < 1e-12));
        assert!(matches!(violations[1], Violation::Positivity(e) if e < 0.0));

        let mut m = *DensityMatrix::maximally_mixed().matrix();
        m[(0, 1)] = ONE;
        let err = validate_state(&m).unwrap_err();
        let Error::InvalidState { violations } = err else {
            panic!("wrong error")
        };
        assert!(matches!(violations[0], Violation::Hermiticity(d) if (d - 1.0).abs() < 1e-15));
    }

    #[test]
    fn validate_rejects_nan() {
        let mut m = *DensityMatrix::maximally_mixed().matrix();
        m[(2, 2)] = C64::new(f64::NAN, 0.0);
        assert!(validate_state(&m).is_err());
    }

    #[test]
    fn qubit_normalization() {
        assert!(QubitVector::new(ONE, ONE).is_err());
        let q = QubitVector::normalized(ONE, ONE).unwrap();
        assert!((q.inner(&q).re - 1.0).abs() < 1e-15);
        assert!(QubitVector::normalized(ZERO, ZERO).is_err());
    }
}
