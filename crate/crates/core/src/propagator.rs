//! Time-splitting propagation of the time evolution operator.
//!
//! The interval [0, t_final] is split into N equal steps of size τ. In each
//! step the Hamiltonian is frozen at a sample point, the step exponential
//! exp(−iτ·(η₊T₊ + η_cT_c + η₊*T₋)) is factorized in normal order, and the
//! cumulative element is advanced by the group composition
//!
//! ```text
//! α_j = Λ_{j+} + α_{j−1}·Λ_{jc}^δ / (1 − εδ·α_{j−1}·Λ_{j−})
//! ln β_j = ln β_{j−1} + ln Λ_{jc} − (2/δ)·Log(1 − εδ·α_{j−1}·Λ_{j−})
//! γ_j = γ_{j−1} + Λ_{j−}·β_{j−1}^δ / (1 − εδ·α_{j−1}·Λ_{j−})
//! ```
//!
//! seeded by α₁ = Λ_{1+}, ln β₁ = ln Λ_{1c}, γ₁ = Λ_{1−}. Unrolling the α
//! recursion gives a generalized continued fraction; [`gcf_alpha`] evaluates
//! it through the equivalent bottom-up update, which stays finite when an
//! intermediate α vanishes.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{AlgebraKind, CoefficientTriple};
use crate::factorization::{factor_normal, FactorError, FactorResult};
use crate::group::{GroupElement, GroupError};

/// Where within each step the Hamiltonian coefficients are sampled.
///
/// Midpoint sampling (t = (j−½)τ) makes the piecewise-constant splitting
/// second-order accurate; endpoint sampling (t = jτ) keeps the original
/// convention of the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    #[default]
    Midpoint,
    Endpoint,
}

type TimeFn<T> = Arc<dyn Fn(f64) -> T + Send + Sync>;

/// Time-dependent hermitian Hamiltonian coefficients.
///
/// Stores η₊(t) and the real scalar c(t) behind the center coefficient
/// (η_c = c for su(1,1)/su(2), η_c = i·c for so(2,1)), so every sample is a
/// hermitian coefficient set by construction.
#[derive(Clone)]
pub struct Drive {
    kind: AlgebraKind,
    eta_plus: TimeFn<Complex64>,
    center_scalar: TimeFn<f64>,
}

impl std::fmt::Debug for Drive {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Drive").field("kind", &self.kind).finish_non_exhaustive()
    }
}

impl Drive {
    pub fn new(
        kind: AlgebraKind,
        eta_plus: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        center_scalar: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            kind,
            eta_plus: Arc::new(eta_plus),
            center_scalar: Arc::new(center_scalar),
        }
    }

    /// Time-independent coefficients.
    pub fn constant(kind: AlgebraKind, eta_plus: Complex64, center_scalar: f64) -> Self {
        Self::new(kind, move |_| eta_plus, move |_| center_scalar)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn eta_plus(&self, t: f64) -> Complex64 {
        (self.eta_plus)(t)
    }

    pub fn center_scalar(&self, t: f64) -> f64 {
        (self.center_scalar)(t)
    }

    /// η_c(t) as a complex number (real or pure imaginary per the algebra).
    pub fn eta_center(&self, t: f64) -> Complex64 {
        match self.kind {
            AlgebraKind::Su11 | AlgebraKind::Su2 => Complex64::new(self.center_scalar(t), 0.0),
            AlgebraKind::So21 => Complex64::new(0.0, self.center_scalar(t)),
        }
    }

    /// Full sample (η₊, η_c, η₊*) at time t.
    pub fn eta(&self, t: f64) -> CoefficientTriple {
        CoefficientTriple::hermitian(self.eta_plus(t), self.center_scalar(t), self.kind)
    }
}

/// Per-step and cumulative factorized elements of one propagation run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub kind: AlgebraKind,
    pub tau: f64,
    pub sampling: Sampling,
    /// Grid times t_j = j·τ, j = 1..=N.
    pub times: Vec<f64>,
    /// Step elements Λ_j (index j−1).
    pub step_elements: Vec<GroupElement>,
    /// Cumulative elements (α_j, ln β_j, γ_j) (index j−1).
    pub cumulative: Vec<GroupElement>,
}

impl Trajectory {
    pub fn n_steps(&self) -> usize {
        self.cumulative.len()
    }

    pub fn final_element(&self) -> &GroupElement {
        self.cumulative.last().expect("trajectory has at least one step")
    }

    /// Grid 0, τ, 2τ, …, Nτ (length N+1).
    pub fn grid(&self) -> Vec<f64> {
        std::iter::once(0.0).chain(self.times.iter().copied()).collect()
    }

    /// α on the grid, starting from α(0) = 0 (length N+1).
    pub fn alpha_samples(&self) -> Vec<Complex64> {
        std::iter::once(Complex64::ZERO)
            .chain(self.cumulative.iter().map(|g| g.alpha))
            .collect()
    }

    /// ln β on the grid, starting from ln β(0) = 0 (length N+1).
    pub fn log_beta_samples(&self) -> Vec<Complex64> {
        std::iter::once(Complex64::ZERO)
            .chain(self.cumulative.iter().map(|g| g.log_beta))
            .collect()
    }

    /// γ on the grid, starting from γ(0) = 0 (length N+1).
    pub fn gamma_samples(&self) -> Vec<Complex64> {
        std::iter::once(Complex64::ZERO)
            .chain(self.cumulative.iter().map(|g| g.gamma))
            .collect()
    }

    /// Worst unitarity residual over every per-step and cumulative element.
    pub fn max_unitarity_residual(&self) -> f64 {
        self.step_elements
            .iter()
            .chain(self.cumulative.iter())
            .map(|g| g.unitarity().max())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PropagatorError {
    #[error("step {step}: {source}")]
    Factorization { step: usize, source: FactorError },
    #[error("step {step}: {source}")]
    Composition { step: usize, source: GroupError },
}

/// One compensated (Kahan) accumulation step; keeps the additive recursion
/// coefficients from drifting linearly in N.
fn kahan_add(sum: &mut Complex64, carry: &mut Complex64, value: Complex64) {
    let y = value - *carry;
    let t = *sum + y;
    *carry = (t - *sum) - y;
    *sum = t;
}

/// Propagate `drive` over [0, t_final] in `n_steps` equal intervals.
///
/// Panics if `n_steps` is 0 or `t_final` is not positive.
pub fn evolve(
    drive: &Drive,
    t_final: f64,
    n_steps: usize,
    sampling: Sampling,
) -> Result<Trajectory, PropagatorError> {
    assert!(n_steps >= 1, "n_steps must be at least 1");
    assert!(t_final > 0.0, "t_final must be positive");
    let kind = drive.kind();
    let (eps, delta) = kind.structure_constants();
    let tau = t_final / n_steps as f64;
    let minus_i_tau = Complex64::new(0.0, -tau);

    let mut times = Vec::with_capacity(n_steps);
    let mut step_elements = Vec::with_capacity(n_steps);
    let mut cumulative = Vec::with_capacity(n_steps);

    let mut alpha = Complex64::ZERO;
    let mut log_beta = Complex64::ZERO;
    let mut gamma = Complex64::ZERO;
    let mut log_beta_carry = Complex64::ZERO;
    let mut gamma_carry = Complex64::ZERO;

    for j in 1..=n_steps {
        let t_sample = match sampling {
            Sampling::Midpoint => (j as f64 - 0.5) * tau,
            Sampling::Endpoint => j as f64 * tau,
        };
        let lambda = drive.eta(t_sample).scaled(minus_i_tau);
        let factor = factor_normal(&lambda, kind)
            .map_err(|source| PropagatorError::Factorization { step: j, source })?;
        let step = factor.group_element(kind);

        // The recursion: the step element composed onto the running element,
        // with the two additive coefficients compensated.
        let w = -eps * delta * alpha * step.gamma;
        let d = Complex64::ONE + w;
        if d.norm() <= crate::group::SINGULAR_TOL {
            return Err(PropagatorError::Composition {
                step: j,
                source: GroupError::SingularComposition { denom: d.norm() },
            });
        }
        let beta_cum_delta = (delta * log_beta).exp();
        alpha = step.alpha + alpha * factor.center_pow_delta(kind) / d;
        let log_d = crate::numeric::ln_1p_complex(w);
        kahan_add(&mut log_beta, &mut log_beta_carry, step.log_beta - (2.0 / delta) * log_d);
        kahan_add(&mut gamma, &mut gamma_carry, step.gamma * beta_cum_delta / d);

        times.push(j as f64 * tau);
        step_elements.push(step);
        cumulative.push(GroupElement::new(alpha, log_beta, gamma, kind));
    }

    Ok(Trajectory { kind, tau, sampling, times, step_elements, cumulative })
}

/// Exact element for a sudden quench to constant coefficients `eta` held for
/// time `t`: the normal factorization of λ = −i·t·η.
pub fn single_jump(
    eta: &CoefficientTriple,
    t: f64,
    kind: AlgebraKind,
) -> Result<GroupElement, FactorError> {
    assert!(t >= 0.0, "jump duration must be nonnegative");
    let lambda = eta.scaled(Complex64::new(0.0, -t));
    Ok(factor_normal(&lambda, kind)?.group_element(kind))
}

/// Evaluate the cumulative α of a step sequence as a generalized continued
/// fraction, via the bottom-up update
/// α ← Λ_{j+} + α·Λ_{jc}^δ/(1 − εδ·α·Λ_{j−}).
pub fn gcf_alpha(steps: &[FactorResult], kind: AlgebraKind) -> Result<Complex64, GroupError> {
    assert!(!steps.is_empty(), "gcf_alpha needs at least one step");
    let (eps, delta) = kind.structure_constants();
    let mut alpha = Complex64::ZERO;
    for step in steps {
        let d = Complex64::ONE - eps * delta * alpha * step.coeffs.minus;
        if d.norm() <= crate::group::SINGULAR_TOL {
            return Err(GroupError::SingularComposition { denom: d.norm() });
        }
        alpha = step.coeffs.plus + alpha * step.center_pow_delta(kind) / d;
    }
    Ok(alpha)
}

/// Recover ln β and γ from the solved α by composite trapezoidal quadrature
/// on the trajectory grid:
///
/// ```text
/// ln β(t) = −2iε·∫₀ᵗ η₊*(t′)·α(t′) dt′ − i·∫₀ᵗ η_c(t′) dt′
/// γ(t)    = −i·∫₀ᵗ η₊*(t′)·β^δ(t′) dt′
/// ```
///
/// Returns (ln β, γ) samples on the grid (length N+1, starting at 0).
pub fn beta_gamma_quadrature(
    trajectory: &Trajectory,
    drive: &Drive,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let (eps, delta) = trajectory.kind.structure_constants();
    let tau = trajectory.tau;
    let grid = trajectory.grid();
    let alpha = trajectory.alpha_samples();

    let coupling: Vec<Complex64> = grid
        .iter()
        .zip(&alpha)
        .map(|(&t, &a)| drive.eta_plus(t).conj() * a)
        .collect();
    let center: Vec<Complex64> = grid.iter().map(|&t| drive.eta_center(t)).collect();

    let minus_2i_eps = Complex64::new(0.0, -2.0) * eps;
    let minus_i = Complex64::new(0.0, -1.0);

    let mut log_beta = Vec::with_capacity(grid.len());
    let mut s_coupling = Complex64::ZERO;
    let mut s_center = Complex64::ZERO;
    log_beta.push(Complex64::ZERO);
    for j in 1..grid.len() {
        s_coupling += 0.5 * tau * (coupling[j - 1] + coupling[j]);
        s_center += 0.5 * tau * (center[j - 1] + center[j]);
        log_beta.push(minus_2i_eps * s_coupling + minus_i * s_center);
    }

    let integrand: Vec<Complex64> = grid
        .iter()
        .zip(&log_beta)
        .map(|(&t, &lb)| drive.eta_plus(t).conj() * (delta * lb).exp())
        .collect();
    let mut gamma = Vec::with_capacity(grid.len());
    let mut s_gamma = Complex64::ZERO;
    gamma.push(Complex64::ZERO);
    for j in 1..grid.len() {
        s_gamma += 0.5 * tau * (integrand[j - 1] + integrand[j]);
        gamma.push(minus_i * s_gamma);
    }

    (log_beta, gamma)
}

/// Worst defect of the solved α against its Riccati equation,
/// α̇ + εδ(iη₊*)α² + δ(iη_c)α + iη₊ = 0, with α̇ replaced by the central
/// difference over interior grid points.
///
/// Panics if the trajectory has fewer than 3 steps.
pub fn riccati_residual(trajectory: &Trajectory, drive: &Drive) -> f64 {
    let n = trajectory.n_steps();
    assert!(n >= 3, "central differences need at least 3 steps");
    let (eps, delta) = trajectory.kind.structure_constants();
    let tau = trajectory.tau;
    let grid = trajectory.grid();
    let alpha = trajectory.alpha_samples();
    let i = Complex64::I;

    let mut worst = 0.0f64;
    for j in 1..n {
        let t = grid[j];
        let a = alpha[j];
        let slope = (alpha[j + 1] - alpha[j - 1]) / (2.0 * tau);
        let residual = slope
            + eps * delta * (i * drive.eta_plus(t).conj()) * a * a
            + delta * (i * drive.eta_center(t)) * a
            + i * drive.eta_plus(t);
        worst = worst.max(residual.norm());
    }
    worst
}
