//! Constructors for the initial-state families.
//!
//! Every constructor returns a state in the fixed basis
//! `|1⟩⊗|1⟩, |1⟩⊗|0⟩, |0⟩⊗|1⟩, |0⟩⊗|0⟩`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qmat::{validate_state, ComplexMatrix4, DensityMatrix, QubitVector, StateVector, C64};
use crate::tol;

/// Projector onto `Ψ ⊗ Φ`.
pub fn product_state(psi: &QubitVector, phi: &QubitVector) -> DensityMatrix {
    let v = psi.tensor(phi);
    DensityMatrix::from_trusted(v * v.adjoint())
}

/// Computational basis state; `true` means the atom is excited.
pub fn basis_state(a_excited: bool, b_excited: bool) -> DensityMatrix {
    let level = |e: bool| {
        if e {
            QubitVector::excited()
        } else {
            QubitVector::ground()
        }
    };
    product_state(&level(a_excited), &level(b_excited))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PhiPlus,
        BellState::PhiMinus,
        BellState::PsiPlus,
        BellState::PsiMinus,
    ];

    /// `Φ± = (|0⟩⊗|0⟩ ± |1⟩⊗|1⟩)/√2`, `Ψ± = (|1⟩⊗|0⟩ ± |0⟩⊗|1⟩)/√2`.
    pub fn vector(self) -> StateVector {
        let r = C64::new(FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        match self {
            BellState::PhiPlus => StateVector::new(r, z, z, r),
            BellState::PhiMinus => StateVector::new(-r, z, z, r),
            BellState::PsiPlus => StateVector::new(z, r, r, z),
            BellState::PsiMinus => StateVector::new(z, r, -r, z),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
        }
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BellState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phi+" | "phi_plus" => Ok(BellState::PhiPlus),
            "phi-" | "phi_minus" => Ok(BellState::PhiMinus),
            "psi+" | "psi_plus" => Ok(BellState::PsiPlus),
            "psi-" | "psi_minus" => Ok(BellState::PsiMinus),
            other => Err(Error::InvalidParams(format!(
                "unknown Bell state `{other}`"
            ))),
        }
    }
}

pub fn bell(which: BellState) -> DensityMatrix {
    let v = which.vector();
    DensityMatrix::from_trusted(v * v.adjoint())
}

/// The maximally entangled pure state `Q(a, θ₁, θ₂)`, written entry by entry.
pub fn mes(a: f64, theta1: f64, theta2: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::InvalidParams(format!(
            "a must lie in [0, 1], got {a}"
        )));
    }
    if !(theta1.is_finite() && theta2.is_finite()) {
        return Err(Error::InvalidParams("angles must be finite".into()));
    }
    let b = (1.0 - a * a).sqrt();
    let e = |x: f64| C64::from_polar(1.0, x);
    let aa = a * a / 2.0;
    let ab = a * b / 2.0;
    let bb = (1.0 - a * a) / 2.0;
    let (t1, t2) = (theta1, theta2);
    #[rustfmt::skip]
    let m = ComplexMatrix4::new(
        C64::new(aa, 0.0),   e(-t1) * ab,                 e(-t2) * ab,         -e(-(t1 + t2)) * aa,
        e(t1) * ab,          C64::new(bb, 0.0),           e(t1 - t2) * bb,     -e(-t2) * ab,
        e(t2) * ab,          e(-(t1 - t2)) * bb,          C64::new(bb, 0.0),   -e(-t1) * ab,
        -e(t1 + t2) * aa,    -e(t2) * ab,                 -e(t1) * ab,         C64::new(aa, 0.0),
    );
    Ok(DensityMatrix::from_trusted(m))
}

/// `p₁|Φ⁺⟩⟨Φ⁺| + p₂|Φ⁻⟩⟨Φ⁻| + p₃|Ψ⁺⟩⟨Ψ⁺| + p₄|Ψ⁻⟩⟨Ψ⁻|`.
pub fn bell_diagonal(p: [f64; 4]) -> Result<DensityMatrix> {
    if let Some(bad) = p.iter().find(|&&x| !(x.is_finite() && x >= 0.0)) {
        return Err(Error::InvalidWeights(format!(
            "negative or non-finite weight {bad}"
        )));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > tol::WEIGHTS {
        return Err(Error::InvalidWeights(format!(
            "weights sum to {sum}, not 1"
        )));
    }
    let m = BellState::ALL
        .iter()
        .zip(p)
        .fold(ComplexMatrix4::zeros(), |acc, (&which, w)| {
            acc + bell(which).matrix() * C64::new(w, 0.0)
        });
    Ok(DensityMatrix::from_trusted(m))
}

/// Werner state `(1 − p) I/4 + p |Φ⁺⟩⟨Φ⁺|`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!(
            "p must lie in [0, 1], got {p}"
        )));
    }
    let m = DensityMatrix::maximally_mixed().matrix() * C64::new(1.0 - p, 0.0)
        + bell(BellState::PhiPlus).matrix() * C64::new(p, 0.0);
    Ok(DensityMatrix::from_trusted(m))
}

/// Mixing parameter `δ ∈ [0, 1]` of the maximally entangled mixed states.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MemsDelta(f64);

impl MemsDelta {
    pub fn new(delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::InvalidParams(format!(
                "delta must lie in [0, 1], got {delta}"
            )));
        }
        Ok(Self(delta))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `h(δ) = 1/3` on `[0, 2/3]`, `δ/2` on `[2/3, 1]`.
    pub fn h(self) -> f64 {
        if self.0 <= 2.0 / 3.0 {
            1.0 / 3.0
        } else {
            self.0 / 2.0
        }
    }
}

/// `diag(h, 1 − 2h, 0, h)` with `δ/2` in the corners `(1,4)` and `(4,1)`.
pub fn mems(delta: MemsDelta) -> DensityMatrix {
    let h = delta.h();
    let mut m = ComplexMatrix4::zeros();
    m[(0, 0)] = C64::new(h, 0.0);
    m[(1, 1)] = C64::new(1.0 - 2.0 * h, 0.0);
    m[(3, 3)] = C64::new(h, 0.0);
    m[(0, 3)] = C64::new(delta.value() / 2.0, 0.0);
    m[(3, 0)] = m[(0, 3)];
    DensityMatrix::from_trusted(m)
}

/// `tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

/// Validates an arbitrary matrix as a state; convenience for file input.
pub fn from_matrix(m: &ComplexMatrix4) -> Result<DensityMatrix> {
    validate_state(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::concurrence;
    use crate::propagator::asymptotic_params;
    use crate::qmat::{partial_trace, validate_state_with, Subsystem};
    use nalgebra::Matrix2;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn product_state_placement() {
        let e = QubitVector::excited();
        let g = QubitVector::ground();
        let rho = product_state(&e, &g);
        for j in 0..4 {
            for k in 0..4 {
                let want = if (j, k) == (1, 1) { 1.0 } else { 0.0 };
                assert_eq!(rho[(j, k)], re(want));
            }
        }
        assert_eq!(product_state(&e, &e)[(0, 0)], re(1.0));
        assert_eq!(basis_state(true, false), rho);
    }

    #[test]
    fn product_state_asymptotic_params() {
        let mut rng = crate::random::seeded_rng(19);
        for _ in 0..20 {
            let psi = crate::random::random_qubit(&mut rng);
            let phi = crate::random::random_qubit(&mut rng);
            let p = asymptotic_params(&product_state(&psi, &phi));
            let (p1, p2) = psi.amplitudes();
            let (f1, f2) = phi.amplitudes();
            let alpha = 0.25 * (1.0 - psi.inner(&phi).norm_sqr());
            let beta = (p1 * p2.conj() * f2.norm_sqr() - f1 * f2.conj() * p2.norm_sqr()) * 0.5;
            assert!((p.alpha - alpha).abs() < 1e-14);
            assert!((p.beta - beta).norm() < 1e-14);
        }
    }

    #[test]
    fn bell_examples() {
        for which in BellState::ALL {
            assert!((concurrence(&bell(which)).unwrap().value() - 1.0).abs() < 1e-10);
            assert_eq!(which.name().parse::<BellState>().unwrap(), which);
        }
        let half = Matrix2::identity() * re(0.5);
        assert!((partial_trace(&bell(BellState::PhiPlus), Subsystem::A) - half).norm() < 1e-15);
    }

    #[test]
    fn mes_at_a_zero_is_psi_plus() {
        let q = mes(0.0, 0.0, 0.0).unwrap();
        assert!(q.max_abs_diff(&bell(BellState::PsiPlus)) < 1e-15);
        for (j, k) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            assert!((q[(j, k)] - re(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn mes_asymptotic_params() {
        let (a, t1, t2) = (0.6, 0.7, 2.1);
        let p = asymptotic_params(&mes(a, t1, t2).unwrap());
        let b = (1.0f64 - a * a).sqrt();
        let alpha = 0.25 * (1.0 - a * a) * (1.0 - (t1 - t2).cos());
        let beta = (C64::from_polar(1.0, -t1) - C64::from_polar(1.0, -t2)) * (0.25 * a * b);
        assert!((p.alpha - alpha).abs() < 1e-15);
        assert!((p.beta - beta).norm() < 1e-15);
    }

    #[test]
    fn bell_diagonal_validation() {
        let rho = bell_diagonal([0.25; 4]).unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix::maximally_mixed()) < 1e-15);
        assert!(bell_diagonal([0.5, 0.5, 0.1, -0.1]).is_err());
        assert!(bell_diagonal([0.5, 0.5, 0.1, 0.0]).is_err());
        let rho = bell_diagonal([0.8, 0.1, 0.1, 0.0]).unwrap();
        assert!((concurrence(&rho).unwrap().value() - 0.6).abs() < 1e-10);
    }

    #[test]
    fn werner_endpoints() {
        assert!(
            werner(0.0)
                .unwrap()
                .max_abs_diff(&DensityMatrix::maximally_mixed())
                < 1e-15
        );
        assert!(werner(1.0).unwrap().max_abs_diff(&bell(BellState::PhiPlus)) < 1e-15);
        assert!(werner(1.1).is_err());
        assert!((concurrence(&werner(2.0 / 3.0).unwrap()).unwrap().value() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn mems_examples() {
        let d0 = mems(MemsDelta::new(0.0).unwrap());
        assert_eq!(d0[(0, 0)], re(1.0 / 3.0));
        assert!(concurrence(&d0).unwrap().value() < 1e-15);
        assert!((purity(&d0) - 1.0 / 3.0).abs() < 1e-15);

        let d1 = mems(MemsDelta::new(1.0).unwrap());
        assert!((purity(&d1) - 1.0).abs() < 1e-15);
        assert!((concurrence(&d1).unwrap().value() - 1.0).abs() < 1e-10);

        let at = MemsDelta::new(2.0 / 3.0).unwrap();
        assert!((at.h() - (2.0 / 3.0) / 2.0).abs() < 1e-15);
        assert!(MemsDelta::new(-0.1).is_err());
    }

    #[test]
    fn purity_examples() {
        assert!((purity(&DensityMatrix::maximally_mixed()) - 0.25).abs() < 1e-15);
        assert!((purity(&bell(BellState::PsiMinus)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn factories_validate_strictly() {
        let states = [
            werner(0.3).unwrap(),
            bell_diagonal([0.1, 0.2, 0.3, 0.4]).unwrap(),
            mems(MemsDelta::new(0.4).unwrap()),
            mems(MemsDelta::new(0.9).unwrap()),
            mes(0.3, 1.0, 5.0).unwrap(),
            bell(BellState::PhiMinus),
            basis_state(false, true),
        ];
        for rho in states {
            validate_state_with(rho.matrix(), 1e-12).unwrap();
        }
    }
}
