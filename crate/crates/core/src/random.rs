//! Seeded random ensembles used by tests, acceptance checks and the CLI.
//!
//! Mixed states are drawn as `G G† / tr(G G†)` with `G` a 4×4 matrix of
//! independent standard complex Gaussians.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qmat::{ComplexMatrix2, ComplexMatrix4, DensityMatrix, QubitVector, C64};

pub type StateRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let g: ComplexMatrix4 = Matrix4::from_fn(|_, _| gaussian(rng));
    let w = g * g.adjoint();
    let tr = w.trace();
    DensityMatrix::from_trusted(w / tr)
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let v = Vector4::from_fn(|_, _| gaussian(rng));
    DensityMatrix::from_pure(&v).expect("gaussian vector is nonzero")
}

pub fn random_qubit<R: Rng + ?Sized>(rng: &mut R) -> QubitVector {
    let v = Vector2::from_fn(|_, _| gaussian(rng));
    QubitVector::normalized(v[0], v[1]).expect("gaussian vector is nonzero")
}

/// Haar-random single-qubit unitary `e^{iφ} [[a, -b̄], [b, ā]]`.
pub fn random_unitary2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix2 {
    let (a, b) = random_qubit(rng).amplitudes();
    let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    Matrix2::new(a, -b.conj(), b, a.conj()) * phase
}
