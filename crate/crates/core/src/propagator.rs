//! Closed-form solutions of the master equation.
//!
//! For `g = 1` every initial state has an explicit solution
//! ([`evolve_g1`]) and relaxes to a stationary state that depends on the
//! initial data through two numbers `(α, β)` ([`asymptotic_params`],
//! [`asymptotic_state`]). For `g < 1` the ground state `|0⟩⊗|0⟩` is the
//! unique stationary state and explicit solutions exist for two special
//! initial conditions: one atom excited with the other in its ground state
//! ([`evolve_excited_ground_general`]) and the states `Ψ±`
//! ([`evolve_bell_general`]).
//!
//! Matrix indices follow the basis of [`crate::qmat`]; `ρ_jk` in the
//! comments is one-based.

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::qmat::{validate_state, ComplexMatrix4, DensityMatrix, C64};

/// Parameters `(α, β)` of a `g = 1` stationary state
///
/// ```text
/// ⎛0   0   0   0   ⎞
/// ⎜0   α  −α   β   ⎟
/// ⎜0  −α   α  −β   ⎟
/// ⎝0   β̄  −β̄  1−2α ⎠
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    pub alpha: f64,
    pub beta: C64,
}

impl AsymptoticParams {
    /// The stationary state built from `(α, β)`, validated.
    pub fn state(&self) -> Result<DensityMatrix> {
        validate_state(&self.matrix())
    }

    fn matrix(&self) -> ComplexMatrix4 {
        let a = C64::new(self.alpha, 0.0);
        let b = self.beta;
        let z = C64::new(0.0, 0.0);
        ComplexMatrix4::new(
            z,
            z,
            z,
            z,
            z,
            a,
            -a,
            b,
            z,
            -a,
            a,
            -b,
            z,
            b.conj(),
            -b.conj(),
            C64::new(1.0 - 2.0 * self.alpha, 0.0),
        )
    }

    /// Concurrence of the stationary state, `2|α|`.
    pub fn concurrence(&self) -> f64 {
        2.0 * self.alpha.abs()
    }
}

fn check_rate(gamma0: f64) -> Result<()> {
    if !(gamma0.is_finite() && gamma0 > 0.0) {
        return Err(Error::InvalidParams(format!(
            "gamma0 must be positive, got {gamma0}"
        )));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "time must be finite and nonnegative, got {t}"
        )));
    }
    Ok(())
}

/// Solution at time `t` of the `g = 1` master equation, element by element.
pub fn evolve_g1(rho0: &DensityMatrix, gamma0: f64, t: f64) -> Result<DensityMatrix> {
    check_rate(gamma0)?;
    check_time(t)?;
    Ok(DensityMatrix::from_trusted(evolve_g1_matrix(
        rho0.matrix(),
        gamma0,
        t,
    )))
}

fn evolve_g1_matrix(r: &ComplexMatrix4, gamma0: f64, t: f64) -> ComplexMatrix4 {
    let p = |j: usize, k: usize| r[(j - 1, k - 1)];
    let re = |x: f64| C64::new(x, 0.0);

    let e2 = (-2.0 * gamma0 * t).exp();
    let e1 = (-gamma0 * t).exp();
    // γ₀t·e^{−2γ₀t}ρ₁₁
    let secular = gamma0 * t * e2 * p(1, 1).re;

    let sym = p(2, 2).re + p(3, 3).re + 2.0 * p(2, 3).re;
    let anti = p(2, 2).re + p(3, 3).re - 2.0 * p(2, 3).re;
    let p12_13 = p(1, 2) + p(1, 3);

    let mut out = ComplexMatrix4::zeros();
    let mut set = |j: usize, k: usize, v: C64| {
        out[(j - 1, k - 1)] = v;
        out[(k - 1, j - 1)] = v.conj();
    };

    set(1, 1, re(e2 * p(1, 1).re));
    set(1, 2, (p12_13 * e2 + (p(1, 2) - p(1, 3)) * e1) * 0.5);
    set(1, 3, (p12_13 * e2 + (p(1, 3) - p(1, 2)) * e1) * 0.5);
    set(1, 4, p(1, 4) * e1);
    set(
        2,
        2,
        re(0.25 * e2 * sym + 0.5 * e1 * (p(2, 2).re - p(3, 3).re) + secular + 0.25 * anti),
    );
    // ρ₃₂ of the initial state is conj(ρ₂₃)
    set(
        2,
        3,
        re(0.25 * e2 * sym) + (p(2, 3) - p(2, 3).conj()) * (0.5 * e1) + re(secular - 0.25 * anti),
    );
    let coherence = -p12_13 * e2 + (p12_13 * 2.0 + p(2, 4) + p(3, 4)) * (0.5 * e1);
    set(2, 4, coherence + (p(2, 4) - p(3, 4)) * 0.5);
    set(
        3,
        3,
        re(0.25 * e2 * sym - 0.5 * e1 * (p(2, 2).re - p(3, 3).re) + secular + 0.25 * anti),
    );
    set(3, 4, coherence - (p(2, 4) - p(3, 4)) * 0.5);
    let shared = 1.0 + p(1, 1).re + 2.0 * p(2, 3).re;
    set(
        4,
        4,
        re(-0.5 * e2 * (shared - p(4, 4).re) - 2.0 * secular + 0.5 * (shared + p(4, 4).re)),
    );
    out
}

/// `α = (ρ₂₂ + ρ₃₃ − 2 Re ρ₂₃)/4`, `β = (ρ₂₄ − ρ₃₄)/2`.
pub fn asymptotic_params(rho0: &DensityMatrix) -> AsymptoticParams {
    let alpha = 0.25 * (rho0[(1, 1)].re + rho0[(2, 2)].re - 2.0 * rho0[(1, 2)].re);
    let beta = (rho0[(1, 3)] - rho0[(2, 3)]) * 0.5;
    AsymptoticParams { alpha, beta }
}

/// `t → ∞` limit of the `g = 1` evolution started from `rho0`.
pub fn asymptotic_state(rho0: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::from_trusted(asymptotic_params(rho0).matrix())
}

/// Stationary state reached from `rho0` for arbitrary `g`: the `g = 1` map,
/// or `|0⟩⊗|0⟩` for `g < 1`.
pub fn asymptotic_state_for(rho0: &DensityMatrix, params: &ModelParams) -> DensityMatrix {
    if params.g() == 1.0 {
        asymptotic_state(rho0)
    } else {
        ground_state()
    }
}

fn ground_state() -> DensityMatrix {
    let mut m = ComplexMatrix4::zeros();
    m[(3, 3)] = C64::new(1.0, 0.0);
    DensityMatrix::from_trusted(m)
}

fn check_general_rates(gamma0: f64, gamma: f64) -> Result<()> {
    check_rate(gamma0)?;
    if !(gamma.is_finite() && gamma >= 0.0 && gamma <= gamma0) {
        return Err(Error::InvalidParams(format!(
            "gamma must lie in [0, gamma0 = {gamma0}], got {gamma}"
        )));
    }
    Ok(())
}

/// Evolution of `|1⟩⊗|0⟩` (atom A excited, B in the ground state) for
/// `0 ≤ γ < γ₀`.
///
/// Swapping the atoms leaves the generator invariant, so `|0⟩⊗|1⟩` evolves
/// into the same matrix with the two central diagonal entries exchanged.
pub fn evolve_excited_ground_general(gamma0: f64, gamma: f64, t: f64) -> Result<DensityMatrix> {
    check_general_rates(gamma0, gamma)?;
    if gamma >= gamma0 {
        return Err(Error::InvalidParams(format!(
            "requires gamma < gamma0, got gamma = {gamma}, gamma0 = {gamma0}"
        )));
    }
    check_time(t)?;
    let decay = (-gamma0 * t).exp();
    // e^{−γ₀t} cosh γt and e^{−γ₀t} sinh γt without overflowing cosh at large t
    let (slow, fast) = ((-(gamma0 - gamma) * t).exp(), (-(gamma0 + gamma) * t).exp());
    let (ch, sh) = (0.5 * (slow + fast), 0.5 * (slow - fast));
    let mut m = ComplexMatrix4::zeros();
    m[(1, 1)] = C64::new(0.5 * (ch + decay), 0.0);
    m[(2, 2)] = C64::new(0.5 * (ch - decay), 0.0);
    m[(1, 2)] = C64::new(-0.5 * sh, 0.0);
    m[(2, 1)] = m[(1, 2)];
    m[(3, 3)] = C64::new(1.0 - ch, 0.0);
    Ok(DensityMatrix::from_trusted(m))
}

/// Concurrence along [`evolve_excited_ground_general`]: `e^{−γ₀t} sinh γt`.
pub fn excited_ground_concurrence(gamma0: f64, gamma: f64, t: f64) -> f64 {
    0.5 * ((-(gamma0 - gamma) * t).exp() - (-(gamma0 + gamma) * t).exp())
}

/// Symmetric (`Plus`, superradiant) or antisymmetric (`Minus`, subradiant)
/// single-excitation state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Plus,
    Minus,
}

impl Symmetry {
    fn sign(self) -> f64 {
        match self {
            Symmetry::Plus => 1.0,
            Symmetry::Minus => -1.0,
        }
    }
}

/// Evolution of `Ψ± = (|1⟩⊗|0⟩ ± |0⟩⊗|1⟩)/√2`, which decays at rate
/// `γ₀ ± γ` straight into `|0⟩⊗|0⟩`.
///
/// The coherence `ρ₂₃(t)` keeps the sign of the initial state:
/// `±e^{−(γ₀±γ)t}/2`.
pub fn evolve_bell_general(
    sign: Symmetry,
    gamma0: f64,
    gamma: f64,
    t: f64,
) -> Result<DensityMatrix> {
    check_general_rates(gamma0, gamma)?;
    check_time(t)?;
    let s = sign.sign();
    let decay = (-(gamma0 + s * gamma) * t).exp();
    let mut m = ComplexMatrix4::zeros();
    m[(1, 1)] = C64::new(0.5 * decay, 0.0);
    m[(2, 2)] = C64::new(0.5 * decay, 0.0);
    m[(1, 2)] = C64::new(s * 0.5 * decay, 0.0);
    m[(2, 1)] = m[(1, 2)];
    m[(3, 3)] = C64::new(1.0 - decay, 0.0);
    Ok(DensityMatrix::from_trusted(m))
}

/// Concurrence along [`evolve_bell_general`]: `e^{−(γ₀±γ)t}`.
pub fn bell_general_concurrence(sign: Symmetry, gamma0: f64, gamma: f64, t: f64) -> f64 {
    (-(gamma0 + sign.sign() * gamma) * t).exp()
}

fn check_peak_rates(gamma0: f64, gamma: f64) -> Result<()> {
    if !(gamma0.is_finite() && gamma.is_finite() && gamma > 0.0 && gamma < gamma0) {
        return Err(Error::DegenerateRates { gamma0, gamma });
    }
    Ok(())
}

/// Time at which `e^{−γ₀t} sinh γt` peaks: `ln((γ₀+γ)/(γ₀−γ)) / 2γ`.
pub fn t_gamma(gamma0: f64, gamma: f64) -> Result<f64> {
    check_peak_rates(gamma0, gamma)?;
    Ok(((gamma0 + gamma) / (gamma0 - gamma)).ln() / (2.0 * gamma))
}

/// Peak concurrence `γ/(γ₀−γ) · ((γ₀+γ)/(γ₀−γ))^{−(γ₀+γ)/2γ}`.
pub fn c_max(gamma0: f64, gamma: f64) -> Result<f64> {
    check_peak_rates(gamma0, gamma)?;
    let ratio = (gamma0 + gamma) / (gamma0 - gamma);
    Ok(gamma / (gamma0 - gamma) * ratio.powf(-(gamma0 + gamma) / (2.0 * gamma)))
}

/// Location and value of the maximum of `e^{−γ₀t} sinh γt` over the grid
/// `0, step, 2·step, …, t_end`, by direct evaluation.
pub fn grid_search_peak(gamma0: f64, gamma: f64, t_end: f64, step: f64) -> Result<(f64, f64)> {
    check_peak_rates(gamma0, gamma)?;
    if !(step > 0.0 && t_end >= 0.0) {
        return Err(Error::InvalidGrid(format!(
            "bad grid: t_end = {t_end}, step = {step}"
        )));
    }
    let n = (t_end / step).round() as usize;
    Ok((0..=n)
        .map(|k| {
            let t = k as f64 * step;
            (t, excited_ground_concurrence(gamma0, gamma, t))
        })
        .fold((0.0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        }))
}
