//! Generic complex Riccati equations α̇ + b₀α² + b₁α + b₂ = 0 and their
//! mapping onto the three algebras.
//!
//! A CRE is solvable here when b₁ is pure imaginary and b₀ relates to b₂ as
//! b₀ = b₂*/2 (so(2,1)), b₀ = −b₂* (su(1,1)) or b₀ = b₂* (su(2)); the solver
//! then reads off the effective Hamiltonian η₊ = −i·b₂, η_c = b₁/(iδ) and
//! propagates it. α(0) = 0 throughout.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::AlgebraKind;
use crate::propagator::{evolve, Drive, PropagatorError, Sampling};

/// Default tolerance for the coefficient-relation probes.
pub const CLASSIFY_TOL: f64 = 1e-10;

type TimeFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A complex Riccati equation α̇ + b₀α² + b₁α + b₂ = 0 with black-box
/// time-dependent coefficients.
#[derive(Clone)]
pub struct GenericCre {
    b0: TimeFn,
    b1: TimeFn,
    b2: TimeFn,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum RiccatiError {
    #[error("b1 is not pure imaginary: max |Re b1| over probes = {max_re:.3e}")]
    NotPureImaginaryB1 { max_re: f64 },
    #[error("no algebra matches the b0/b2 relation; smallest deviation {min_deviation:.3e}")]
    NoAlgebraMatch { min_deviation: f64 },
    #[error("the b0/b2 relation is degenerate over the probes; specify the algebra explicitly")]
    AmbiguousMatch,
    #[error("nth_derivative of order {order} needs coefficient derivatives up to order {needed}, got {got}")]
    InsufficientCoefficientDerivatives { order: usize, needed: usize, got: usize },
    #[error(transparent)]
    Propagation(#[from] PropagatorError),
}

/// Caller-supplied time derivatives of (b₀, b₁, b₂) at one instant.
///
/// Entry k of each list is the (k+1)-th derivative; the zeroth-order values
/// come from the equation's own coefficient functions.
#[derive(Debug, Clone, Default)]
pub struct CoeffDerivs {
    pub b0: Vec<Complex64>,
    pub b1: Vec<Complex64>,
    pub b2: Vec<Complex64>,
}

impl CoeffDerivs {
    /// No derivative data; enough for first-order evaluation.
    pub fn none() -> Self {
        Self::default()
    }

    pub fn new(b0: Vec<Complex64>, b1: Vec<Complex64>, b2: Vec<Complex64>) -> Self {
        Self { b0, b1, b2 }
    }

    fn order_available(&self) -> usize {
        self.b0.len().min(self.b1.len()).min(self.b2.len())
    }
}

impl GenericCre {
    pub fn new(
        b0: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        b1: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        b2: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self { b0: Arc::new(b0), b1: Arc::new(b1), b2: Arc::new(b2) }
    }

    /// The CRE obeyed by the α coefficient of `drive`'s evolution:
    /// b₀ = εδ·iη₊*, b₁ = δ·iη_c, b₂ = iη₊.
    pub fn from_drive(drive: &Drive) -> Self {
        let (eps, delta) = drive.kind().structure_constants();
        let i = Complex64::I;
        let d0 = drive.clone();
        let d1 = drive.clone();
        let d2 = drive.clone();
        Self::new(
            move |t| eps * delta * i * d0.eta_plus(t).conj(),
            move |t| delta * i * d1.eta_center(t),
            move |t| i * d2.eta_plus(t),
        )
    }

    pub fn b0(&self, t: f64) -> Complex64 {
        (self.b0)(t)
    }

    pub fn b1(&self, t: f64) -> Complex64 {
        (self.b1)(t)
    }

    pub fn b2(&self, t: f64) -> Complex64 {
        (self.b2)(t)
    }

    /// The drive that realizes this CRE under the given algebra, without any
    /// compatibility checks: η₊ = −i·b₂ and the center scalar read off b₁.
    pub fn drive_as(&self, kind: AlgebraKind) -> Drive {
        let b1 = Arc::clone(&self.b1);
        let b2 = Arc::clone(&self.b2);
        let minus_i = Complex64::new(0.0, -1.0);
        let center = move |t: f64| {
            // η_c = b₁/(iδ); keeping only the hermiticity-compatible part.
            match kind {
                AlgebraKind::Su11 | AlgebraKind::Su2 => b1(t).im,
                AlgebraKind::So21 => -b1(t).im,
            }
        };
        Drive::new(kind, move |t| minus_i * b2(t), center)
    }

    /// Identify the algebra whose b₀/b₂ relation this CRE satisfies at every
    /// probe time, and return it with the corresponding drive.
    pub fn classify(
        &self,
        probe_times: &[f64],
        tol: f64,
    ) -> Result<(AlgebraKind, Drive), RiccatiError> {
        assert!(!probe_times.is_empty(), "classify needs at least one probe time");

        let max_re = probe_times.iter().map(|&t| self.b1(t).re.abs()).fold(0.0, f64::max);
        if max_re > tol {
            return Err(RiccatiError::NotPureImaginaryB1 { max_re });
        }

        let all_b2_negligible = probe_times.iter().all(|&t| self.b2(t).norm() <= tol);
        if all_b2_negligible {
            return Err(RiccatiError::AmbiguousMatch);
        }

        let relation = |kind: AlgebraKind, b2: Complex64| -> Complex64 {
            match kind {
                AlgebraKind::So21 => 0.5 * b2.conj(),
                AlgebraKind::Su11 => -b2.conj(),
                AlgebraKind::Su2 => b2.conj(),
            }
        };

        let mut matches = Vec::new();
        let mut min_deviation = f64::INFINITY;
        for kind in AlgebraKind::ALL {
            let deviation = probe_times
                .iter()
                .map(|&t| (self.b0(t) - relation(kind, self.b2(t))).norm())
                .fold(0.0, f64::max);
            min_deviation = min_deviation.min(deviation);
            if deviation <= tol {
                matches.push(kind);
            }
        }
        match matches.as_slice() {
            [kind] => Ok((*kind, self.drive_as(*kind))),
            [] => Err(RiccatiError::NoAlgebraMatch { min_deviation }),
            _ => Err(RiccatiError::AmbiguousMatch),
        }
    }

    /// Classify, propagate and return the α samples on the grid
    /// t_j = j·t_final/n_steps (length n_steps + 1, α(0) = 0).
    ///
    /// Probes 65 equally spaced times in [0, t_final] at the default
    /// tolerance; use [`GenericCre::classify`] plus [`GenericCre::solve_as`]
    /// for full control.
    pub fn solve(&self, t_final: f64, n_steps: usize) -> Result<Vec<Complex64>, RiccatiError> {
        let probes: Vec<f64> = (0..=64).map(|k| t_final * k as f64 / 64.0).collect();
        let (kind, _) = self.classify(&probes, CLASSIFY_TOL)?;
        self.solve_as(kind, t_final, n_steps)
    }

    /// Propagate under an explicitly chosen algebra (needed when b₂ ≡ 0 makes
    /// the algebra unobservable).
    pub fn solve_as(
        &self,
        kind: AlgebraKind,
        t_final: f64,
        n_steps: usize,
    ) -> Result<Vec<Complex64>, RiccatiError> {
        let drive = self.drive_as(kind);
        let trajectory = evolve(&drive, t_final, n_steps, Sampling::Midpoint)?;
        Ok(trajectory.alpha_samples())
    }

    /// Exact n-th time derivative of a solution through the point
    /// (t, α(t)), obtained by repeatedly differentiating
    /// α′ = −(b₀α² + b₁α + b₂) with the Leibniz rule.
    ///
    /// Derivatives of the coefficients beyond order zero must be supplied in
    /// `derivs` up to order n−1.
    pub fn nth_derivative(
        &self,
        t: f64,
        alpha_at_t: Complex64,
        n: usize,
        derivs: &CoeffDerivs,
    ) -> Result<Complex64, RiccatiError> {
        assert!(n >= 1, "derivative order must be at least 1");
        let needed = n - 1;
        let got = derivs.order_available();
        if got < needed {
            return Err(RiccatiError::InsufficientCoefficientDerivatives { order: n, needed, got });
        }

        let b_deriv = |list: &[Complex64], value: Complex64, m: usize| -> Complex64 {
            if m == 0 {
                value
            } else {
                list[m - 1]
            }
        };
        let b0_at = self.b0(t);
        let b1_at = self.b1(t);
        let b2_at = self.b2(t);

        // alpha_derivs[k] = α^{(k)}; grown one order per pass.
        let mut alpha_derivs = vec![alpha_at_t];
        for k in 0..n {
            // (α²)^{(p)} by Leibniz, needing α-derivatives up to order p ≤ k.
            let sq_deriv = |p: usize, alpha_derivs: &[Complex64]| -> Complex64 {
                (0..=p)
                    .map(|q| binomial(p, q) * alpha_derivs[q] * alpha_derivs[p - q])
                    .sum()
            };
            let mut next = Complex64::ZERO;
            for m in 0..=k {
                let w = binomial(k, m);
                next += w * b_deriv(&derivs.b0, b0_at, m) * sq_deriv(k - m, &alpha_derivs);
                next += w * b_deriv(&derivs.b1, b1_at, m) * alpha_derivs[k - m];
            }
            next += b_deriv(&derivs.b2, b2_at, k);
            alpha_derivs.push(-next);
        }
        Ok(alpha_derivs[n])
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}
