//! Spin inversion of the relaxation-free Bloch equations under a complex
//! hyperbolic-secant drive.
//!
//! In the rotating frame the transverse/longitudinal magnetization ratio
//! f = M/(M₀ + M_z) obeys a complex Riccati equation that maps onto an su(2)
//! Hamiltonian with η₊ = Ω(t)/2 and η_c = Δω. A drive
//! Ω(t) = Ω₀·sech(χ(t−t₀))^{1+iμ} admits a stationary closed form for
//! |f|²_{t→∞} and hence for the inversion ratio M_z/M₀, which this module
//! reproduces numerically via the group recursion and sweeps over detuning.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::AlgebraKind;
use crate::propagator::{evolve, riccati_residual, Drive, PropagatorError, Sampling};

/// How close 2y may come to an odd positive integer before the stationary
/// formula is treated as singular.
const Y_EXCLUSION_TOL: f64 = 1e-9;

/// Complex hyperbolic-secant pulse Ω(t) = Ω₀·sech(χ(t−t₀))^{1+iμ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SechPulse {
    /// Amplitude Ω₀ (rad/time), nonnegative.
    pub omega0: f64,
    /// Sech rate χ (1/time), positive.
    pub chi: f64,
    /// Phase-modulation exponent μ (dimensionless).
    pub mu: f64,
    /// Pulse center t₀ (time).
    pub t0: f64,
}

impl SechPulse {
    pub fn validate(&self) -> Result<(), BlochError> {
        if !(self.chi > 0.0) {
            return Err(BlochError::InvalidPulse { field: "chi", value: self.chi });
        }
        if !(self.omega0 >= 0.0) {
            return Err(BlochError::InvalidPulse { field: "omega0", value: self.omega0 });
        }
        if !self.mu.is_finite() {
            return Err(BlochError::InvalidPulse { field: "mu", value: self.mu });
        }
        if !self.t0.is_finite() {
            return Err(BlochError::InvalidPulse { field: "t0", value: self.t0 });
        }
        Ok(())
    }

    /// Ω(t) = Ω₀·exp((1+iμ)·ln sech(χ(t−t₀))); sech > 0 keeps the log real,
    /// so the complex power is branch-free and |Ω(t)| = Ω₀·sech(χ(t−t₀)).
    pub fn value(&self, t: f64) -> Complex64 {
        let log_sech = -ln_cosh(self.chi * (t - self.t0));
        self.omega0 * (Complex64::new(1.0, self.mu) * log_sech).exp()
    }
}

/// ln cosh(x) without overflow: |x| + ln1p(e^(−2|x|)) − ln 2.
fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// Detuning sweep specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub pulse: SechPulse,
    pub detuning_min: f64,
    pub detuning_max: f64,
    pub n_points: usize,
    pub t_final: f64,
    pub n_steps: usize,
    pub sampling: Sampling,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), BlochError> {
        self.pulse.validate()?;
        if self.n_points < 1 {
            return Err(BlochError::InvalidConfig { reason: "n_points must be at least 1" });
        }
        if self.n_steps < 3 {
            return Err(BlochError::InvalidConfig {
                reason: "n_steps must be at least 3 (the Riccati diagnostic needs interior points)",
            });
        }
        if !(self.t_final > 0.0) {
            return Err(BlochError::InvalidConfig { reason: "t_final must be positive" });
        }
        if !(self.detuning_min <= self.detuning_max) {
            return Err(BlochError::InvalidConfig {
                reason: "detuning_min must not exceed detuning_max",
            });
        }
        Ok(())
    }

    /// The n_points equally spaced detunings, endpoints included.
    pub fn detunings(&self) -> Vec<f64> {
        if self.n_points == 1 {
            return vec![self.detuning_min];
        }
        let span = self.detuning_max - self.detuning_min;
        (0..self.n_points)
            .map(|k| self.detuning_min + span * k as f64 / (self.n_points - 1) as f64)
            .collect()
    }
}

/// One detuning's result: numeric and analytic inversion plus diagnostics.
///
/// `analytic_mz` is `None` where the stationary formula is outside its domain;
/// the numeric value stands on its own there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionRow {
    pub detuning: f64,
    pub numeric_mz: f64,
    pub analytic_mz: Option<f64>,
    pub max_unitarity_residual: f64,
    pub riccati_residual: f64,
}

impl InversionRow {
    pub fn abs_error(&self) -> Option<f64> {
        self.analytic_mz.map(|a| (self.numeric_mz - a).abs())
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum BlochError {
    #[error("invalid pulse parameter {field} = {value}")]
    InvalidPulse { field: &'static str, value: f64 },
    #[error("invalid sweep configuration: {reason}")]
    InvalidConfig { reason: &'static str },
    #[error("stationary formula outside its domain: {reason}")]
    Domain { reason: String },
    #[error(transparent)]
    Solver(#[from] PropagatorError),
}

/// A sweep row that failed, tagged with its detuning.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("detuning {detuning}: {source}")]
pub struct SweepRowError {
    pub detuning: f64,
    pub source: BlochError,
}

/// The effective su(2) drive of the Bloch–Riccati equation:
/// η₊(t) = Ω(t)/2, η_c = Δω.
pub fn bre_drive(pulse: SechPulse, detuning: f64) -> Drive {
    Drive::new(
        AlgebraKind::Su2,
        move |t| 0.5 * pulse.value(t),
        move |_| detuning,
    )
}

/// Stationary |f|²_{t→∞} of the sech-driven Bloch–Riccati equation:
///
/// ```text
/// |f|²∞ = (cosh²(πμ/2) − cos²(πy)) / (cosh²(πΔω/2χ) − sin²(πy)),
/// y = sqrt((Ω₀/2χ)² − (μ/2)²)
/// ```
///
/// Errors when y is imaginary or 2y sits on the singular set (odd positive
/// integers), where the denominator can vanish on resonance.
pub fn analytic_f_inf(pulse: &SechPulse, detuning: f64) -> Result<f64, BlochError> {
    let y2 = (pulse.omega0 / (2.0 * pulse.chi)).powi(2) - (pulse.mu / 2.0).powi(2);
    if y2 < 0.0 {
        return Err(BlochError::Domain { reason: format!("y² = {y2:.6e} is negative") });
    }
    let two_y = 2.0 * y2.sqrt();
    let nearest = two_y.round();
    if nearest >= 1.0 && nearest as u64 % 2 == 1 && (two_y - nearest).abs() <= Y_EXCLUSION_TOL {
        return Err(BlochError::Domain {
            reason: format!("2y = {two_y} lies on the excluded odd-integer set"),
        });
    }
    let pi_y = std::f64::consts::PI * y2.sqrt();
    let numerator = (std::f64::consts::PI * pulse.mu / 2.0).cosh().powi(2) - pi_y.cos().powi(2);
    let denominator = (std::f64::consts::PI * detuning / (2.0 * pulse.chi)).cosh().powi(2)
        - pi_y.sin().powi(2);
    Ok(numerator / denominator)
}

/// Stationary inversion ratio:
///
/// ```text
/// M_z/M₀ = tanh(φ₁)·tanh(φ₂) + cos(φ₃)·sech(φ₁)·sech(φ₂)
/// φ₁ = π(Δω/2χ + μ/2),  φ₂ = π(Δω/2χ − μ/2),  φ₃ = π·sqrt((Ω₀/χ)² − μ²)
/// ```
///
/// Errors when φ₃ is imaginary.
pub fn analytic_inversion(pulse: &SechPulse, detuning: f64) -> Result<f64, BlochError> {
    let phi3_sq = (pulse.omega0 / pulse.chi).powi(2) - pulse.mu * pulse.mu;
    if phi3_sq < 0.0 {
        return Err(BlochError::Domain { reason: format!("φ₃² = {phi3_sq:.6e} is negative") });
    }
    let half_ratio = detuning / (2.0 * pulse.chi);
    let phi1 = std::f64::consts::PI * (half_ratio + pulse.mu / 2.0);
    let phi2 = std::f64::consts::PI * (half_ratio - pulse.mu / 2.0);
    let phi3 = std::f64::consts::PI * phi3_sq.sqrt();
    Ok(phi1.tanh() * phi2.tanh() + phi3.cos() / (phi1.cosh() * phi2.cosh()))
}

/// Propagate one detuning and compare against the stationary formula.
///
/// f = α(t_final) and M_z/M₀ = (1 − |f|²)/(1 + |f|²).
pub fn simulate_inversion(config: &SweepConfig, detuning: f64) -> Result<InversionRow, BlochError> {
    let drive = bre_drive(config.pulse, detuning);
    let trajectory = evolve(&drive, config.t_final, config.n_steps, config.sampling)?;
    let f_sq = trajectory.final_element().alpha.norm_sqr();
    let numeric_mz = (1.0 - f_sq) / (1.0 + f_sq);
    Ok(InversionRow {
        detuning,
        numeric_mz,
        analytic_mz: analytic_inversion(&config.pulse, detuning).ok(),
        max_unitarity_residual: trajectory.max_unitarity_residual(),
        riccati_residual: riccati_residual(&trajectory, &drive),
    })
}

/// Simulate every detuning of the sweep. Rows are independent and evaluated
/// in parallel; the output is ordered by detuning, and failed rows carry
/// their detuning without aborting the rest.
pub fn sweep(config: &SweepConfig) -> Vec<Result<InversionRow, SweepRowError>> {
    config
        .detunings()
        .par_iter()
        .map(|&detuning| {
            simulate_inversion(config, detuning)
                .map_err(|source| SweepRowError { detuning, source })
        })
        .collect()
}
