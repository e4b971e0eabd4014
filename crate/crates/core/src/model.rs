//! The collective-emission master equation `dρ/dt = Lρ` and its numerical
//! solution.
//!
//! The generator is purely dissipative: a single-atom decay term with rate
//! `γ₀` and a photon-exchange cross term with rate `γ = g·γ₀`, built from
//! `σ±^A = σ± ⊗ I` and `σ±^B = I ⊗ σ±`. There is no Hamiltonian part.
//!
//! Integration is fixed-step classical RK4. Since `L` is linear and time
//! independent, one RK4 step of size `h` is the map
//! `I + hS + (hS)²/2 + (hS)³/6 + (hS)⁴/24` where `S` is the 16×16 matrix of
//! `L` acting on row-major vectorized density matrices. That matrix is
//! assembled by applying [`lindblad_rhs_matrix`] to the 16 matrix units, so
//! the generator has a single definition.

use nalgebra::{SMatrix, SVector};

use crate::entanglement::concurrence;
use crate::error::{Error, Result};
use crate::qmat::{
    identity2, kron, sigma_minus, validate_state_with, ComplexMatrix4, DensityMatrix, C64,
};
use crate::series::{Record, TimeSeries};
use crate::tol;

/// Emission rate `γ₀` and exchange ratio `g`; the exchange rate is `γ = g·γ₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    gamma0: f64,
    g: f64,
}

impl ModelParams {
    pub fn new(gamma0: f64, g: f64) -> Result<Self> {
        if !(gamma0.is_finite() && gamma0 > 0.0) {
            return Err(Error::InvalidParams(format!(
                "gamma0 must be positive, got {gamma0}"
            )));
        }
        if !(0.0..=1.0).contains(&g) {
            return Err(Error::InvalidParams(format!(
                "g must lie in [0, 1], got {g}"
            )));
        }
        Ok(Self { gamma0, g })
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// Photon-exchange rate `γ = g·γ₀`.
    pub fn gamma(&self) -> f64 {
        self.g * self.gamma0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub step: f64,
    pub method: Method,
}

impl IntegratorConfig {
    pub fn new(step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidParams(format!(
                "step must be positive, got {step}"
            )));
        }
        Ok(Self {
            step,
            method: Method::Rk4,
        })
    }

    /// Default step `1e-3 / γ₀`.
    pub fn for_params(params: &ModelParams) -> Self {
        Self {
            step: 1e-3 / params.gamma0(),
            method: Method::Rk4,
        }
    }
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            step: 1e-3,
            method: Method::Rk4,
        }
    }
}

/// Jump operators `σ₋^A`, `σ₋^B` and their adjoints.
struct Jumps {
    minus_a: ComplexMatrix4,
    minus_b: ComplexMatrix4,
    plus_a: ComplexMatrix4,
    plus_b: ComplexMatrix4,
}

impl Jumps {
    fn new() -> Self {
        let minus_a = kron(&sigma_minus(), &identity2());
        let minus_b = kron(&identity2(), &sigma_minus());
        Self {
            plus_a: minus_a.adjoint(),
            plus_b: minus_b.adjoint(),
            minus_a,
            minus_b,
        }
    }
}

/// `L(ρ)` for the given rates.
pub fn lindblad_rhs(rho: &DensityMatrix, params: &ModelParams) -> ComplexMatrix4 {
    lindblad_rhs_matrix(rho.matrix(), params)
}

/// `L(m)` for an arbitrary 4×4 matrix (the generator is linear).
pub fn lindblad_rhs_matrix(m: &ComplexMatrix4, params: &ModelParams) -> ComplexMatrix4 {
    let j = Jumps::new();
    let two = C64::new(2.0, 0.0);

    let number = j.plus_a * j.minus_a + j.plus_b * j.minus_b;
    let decay =
        (j.minus_a * m * j.plus_a + j.minus_b * m * j.plus_b) * two - number * m - m * number;

    let hop = j.plus_a * j.minus_b + j.plus_b * j.minus_a;
    let exchange = (j.minus_a * m * j.plus_b + j.minus_b * m * j.plus_a) * two - hop * m - m * hop;

    decay * C64::new(params.gamma0() / 2.0, 0.0) + exchange * C64::new(params.gamma() / 2.0, 0.0)
}

type Super = SMatrix<C64, 16, 16>;
type Vec16 = SVector<C64, 16>;

fn vectorize(m: &ComplexMatrix4) -> Vec16 {
    Vec16::from_fn(|i, _| m[(i / 4, i % 4)])
}

fn unvectorize(v: &Vec16) -> ComplexMatrix4 {
    ComplexMatrix4::from_fn(|r, c| v[4 * r + c])
}

/// Matrix of `L` on row-major vectorized 4×4 matrices.
pub fn superoperator(params: &ModelParams) -> SMatrix<C64, 16, 16> {
    let mut s = Super::zeros();
    for col in 0..16 {
        let mut unit = ComplexMatrix4::zeros();
        unit[(col / 4, col % 4)] = C64::new(1.0, 0.0);
        s.set_column(col, &vectorize(&lindblad_rhs_matrix(&unit, params)));
    }
    s
}

/// One RK4 step of size `h` for `dv/dt = S v`.
fn rk4_step_map(s: &Super, h: f64) -> Super {
    let hs = s * C64::new(h, 0.0);
    let hs2 = hs * hs;
    let hs3 = hs2 * hs;
    let hs4 = hs3 * hs;
    Super::identity()
        + hs
        + hs2 * C64::new(0.5, 0.0)
        + hs3 * C64::new(1.0 / 6.0, 0.0)
        + hs4 * C64::new(1.0 / 24.0, 0.0)
}

/// Positivity is sampled every this many steps and after the last one.
const POSITIVITY_CHECK_INTERVAL: usize = 16;

struct Stepper {
    generator: Super,
    max_step: f64,
}

impl Stepper {
    fn new(params: &ModelParams, config: &IntegratorConfig) -> Result<Self> {
        if !(config.step.is_finite() && config.step > 0.0) {
            return Err(Error::InvalidParams(format!(
                "step must be positive, got {}",
                config.step
            )));
        }
        Ok(Self {
            generator: superoperator(params),
            max_step: config.step,
        })
    }

    /// Advances `state` (at time `t_start`) by `duration` using equal steps no
    /// longer than the configured step.
    fn advance(&self, state: &Vec16, t_start: f64, duration: f64) -> Result<Vec16> {
        if duration == 0.0 {
            return Ok(*state);
        }
        let n = (duration / self.max_step).ceil().max(1.0) as usize;
        let h = duration / n as f64;
        let map = rk4_step_map(&self.generator, h);
        let mut v = *state;
        for k in 1..=n {
            v = map * v;
            if k % POSITIVITY_CHECK_INTERVAL == 0 || k == n {
                check_positivity(&v, t_start + k as f64 * h)?;
            }
        }
        Ok(v)
    }
}

fn check_positivity(v: &Vec16, time: f64) -> Result<()> {
    let m = unvectorize(v);
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let min_eigenvalue = nalgebra::SymmetricEigen::new(herm).eigenvalues.min();
    if !min_eigenvalue.is_finite() || min_eigenvalue < -tol::STEP_POSITIVITY {
        return Err(Error::StepTooLarge {
            time,
            min_eigenvalue,
        });
    }
    Ok(())
}

fn finish(v: &Vec16) -> Result<DensityMatrix> {
    validate_state_with(&unvectorize(v), tol::INTEGRATED_STATE)
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidGrid(format!(
            "time must be finite and nonnegative, got {t}"
        )));
    }
    Ok(())
}

/// RK4 solution of the master equation at time `t`.
pub fn integrate(
    rho0: &DensityMatrix,
    params: &ModelParams,
    t: f64,
    config: &IntegratorConfig,
) -> Result<DensityMatrix> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(*rho0);
    }
    let stepper = Stepper::new(params, config)?;
    let v = stepper.advance(&vectorize(rho0.matrix()), 0.0, t)?;
    finish(&v)
}

/// States at every point of an ascending grid starting at 0, in one pass.
pub fn evolve_states(
    rho0: &DensityMatrix,
    params: &ModelParams,
    t_grid: &[f64],
    config: &IntegratorConfig,
) -> Result<Vec<DensityMatrix>> {
    validate_grid(t_grid)?;
    let stepper = Stepper::new(params, config)?;
    let mut out = Vec::with_capacity(t_grid.len());
    let mut v = vectorize(rho0.matrix());
    let mut t_prev = 0.0;
    for &t in t_grid {
        if t == 0.0 {
            out.push(*rho0);
            continue;
        }
        v = stepper.advance(&v, t_prev, t - t_prev)?;
        out.push(finish(&v)?);
        t_prev = t;
    }
    Ok(out)
}

/// [`evolve_states`] plus the concurrence at each grid point.
pub fn evolve_series(
    rho0: &DensityMatrix,
    params: &ModelParams,
    t_grid: &[f64],
    config: &IntegratorConfig,
) -> Result<TimeSeries> {
    let states = evolve_states(rho0, params, t_grid, config)?;
    let mut series = TimeSeries::new("rk4", params.gamma0(), params.g());
    for (&t, rho) in t_grid.iter().zip(states) {
        series.push(Record::with_state(t, concurrence(&rho)?.value(), rho))?;
    }
    Ok(series)
}

fn validate_grid(t_grid: &[f64]) -> Result<()> {
    let Some(&first) = t_grid.first() else {
        return Err(Error::InvalidGrid("empty grid".into()));
    };
    if first != 0.0 {
        return Err(Error::InvalidGrid(format!(
            "grid must start at 0, starts at {first}"
        )));
    }
    for w in t_grid.windows(2) {
        check_time(w[1])?;
        if w[1] <= w[0] {
            return Err(Error::InvalidGrid(format!(
                "grid not ascending at {} -> {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}
