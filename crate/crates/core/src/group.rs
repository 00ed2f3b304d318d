//! Group elements in the normal-ordered factorized representation, their
//! composition, inversion and unitarity diagnostics.
//!
//! An element is stored as (α, ln β, γ) with the algebra tag, standing for
//! G = e^{αT₊}·e^{ln(β)T_c}·e^{γT₋}. The log of the center coefficient is the
//! stored quantity; β and the powers β^δ are derived as exponentials, so
//! composition accumulates logs without branch jumps.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::AlgebraKind;
use crate::factorization::FactorResult;

/// Denominators at or below this magnitude flag a singular operation.
pub const SINGULAR_TOL: f64 = 1e-30;

/// |α| below this leaves the phases θ = arg α, φ = arg γ undefined.
pub const PHASE_TOL: f64 = 1e-12;

/// Normal-ordered factorized group element (α, ln β, γ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub alpha: Complex64,
    pub log_beta: Complex64,
    pub gamma: Complex64,
    pub kind: AlgebraKind,
}

/// Left-hand sides of the three unitarity constraints, as residuals.
///
/// `r_modulus` is ||α| − |γ||; `r_center` and `r_phase` are the algebra-specific
/// center and phase-congruence residuals. When |α| ≤ 1e-12 the phases are
/// undefined and `r_phase` is 0 by convention with `phase_defined = false`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitarityReport {
    pub r_modulus: f64,
    pub r_center: f64,
    pub r_phase: f64,
    pub phase_defined: bool,
}

impl UnitarityReport {
    /// Largest of the three residuals.
    pub fn max(&self) -> f64 {
        self.r_modulus.max(self.r_center).max(self.r_phase)
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GroupError {
    #[error("singular composition: |1 - εδ·α̃·γ| = {denom:.3e}")]
    SingularComposition { denom: f64 },
    #[error("singular inverse: |l| = {denom:.3e}")]
    SingularInverse { denom: f64 },
}

impl GroupElement {
    pub fn new(alpha: Complex64, log_beta: Complex64, gamma: Complex64, kind: AlgebraKind) -> Self {
        Self { alpha, log_beta, gamma, kind }
    }

    /// The identity element (0, 0, 0).
    pub fn identity(kind: AlgebraKind) -> Self {
        Self::new(Complex64::ZERO, Complex64::ZERO, Complex64::ZERO, kind)
    }

    pub fn beta(&self) -> Complex64 {
        self.log_beta.exp()
    }

    /// β^δ computed as exp(δ·ln β).
    pub fn beta_pow_delta(&self) -> Complex64 {
        (self.kind.delta() * self.log_beta).exp()
    }

    /// Group product self·inner (self is the outer, later factor):
    ///
    /// ```text
    /// ζ₊ = α + α̃·β^δ/(1−εδα̃γ)
    /// ln ζ_c = ln β̃ + ln β − (2/δ)·Log(1−εδα̃γ)
    /// ζ₋ = γ̃ + γ·β̃^δ/(1−εδα̃γ)
    /// ```
    ///
    /// with tilded quantities from `inner`.
    pub fn compose(&self, inner: &GroupElement) -> Result<GroupElement, GroupError> {
        assert_eq!(self.kind, inner.kind, "cannot compose elements of different algebras");
        let (eps, delta) = self.kind.structure_constants();
        let w = -eps * delta * inner.alpha * self.gamma;
        let d = Complex64::ONE + w;
        if d.norm() <= SINGULAR_TOL {
            return Err(GroupError::SingularComposition { denom: d.norm() });
        }
        let alpha = self.alpha + inner.alpha * self.beta_pow_delta() / d;
        let log_beta = inner.log_beta + self.log_beta - (2.0 / delta) * crate::numeric::ln_1p_complex(w);
        let gamma = inner.gamma + self.gamma * inner.beta_pow_delta() / d;
        Ok(GroupElement::new(alpha, log_beta, gamma, self.kind))
    }

    /// Inverse element via l = β^δ − εδ·α·γ:
    /// (−α/l, ln β − (2/δ)·Log l, −γ/l).
    pub fn inverse(&self) -> Result<GroupElement, GroupError> {
        let (eps, delta) = self.kind.structure_constants();
        let l = self.beta_pow_delta() - eps * delta * self.alpha * self.gamma;
        if l.norm() <= SINGULAR_TOL {
            return Err(GroupError::SingularInverse { denom: l.norm() });
        }
        Ok(GroupElement::new(
            -self.alpha / l,
            self.log_beta - (2.0 / delta) * l.ln(),
            -self.gamma / l,
            self.kind,
        ))
    }

    /// Unitarity residuals.
    ///
    /// All algebras share r_modulus = ||α| − |γ||. For su(1,1)/su(2):
    /// r_center = ||β| + ε|α|² − 1| and the phase congruence is
    /// x ≡ θ + φ (mod π) with x = Im ln β. For so(2,1):
    /// r_center = |e^{−x} − 1 − |α|²/2| and ln|β| ≡ θ + φ (mod π).
    pub fn unitarity(&self) -> UnitarityReport {
        let alpha_mod = self.alpha.norm();
        let gamma_mod = self.gamma.norm();
        let r_modulus = (alpha_mod - gamma_mod).abs();
        let (r_center, phase_lhs) = match self.kind {
            AlgebraKind::Su11 | AlgebraKind::Su2 => {
                let eps = self.kind.epsilon().re;
                let beta_mod = self.log_beta.re.exp();
                let r_center = (beta_mod + eps * alpha_mod * alpha_mod - 1.0).abs();
                (r_center, self.log_beta.im)
            }
            AlgebraKind::So21 => {
                let x = self.log_beta.im;
                let r_center = ((-x).exp() - 1.0 - 0.5 * alpha_mod * alpha_mod).abs();
                (r_center, self.log_beta.re)
            }
        };
        let phase_defined = alpha_mod > PHASE_TOL;
        let r_phase = if phase_defined {
            distance_to_pi_multiple(phase_lhs - self.alpha.arg() - self.gamma.arg())
        } else {
            0.0
        };
        UnitarityReport { r_modulus, r_center, r_phase, phase_defined }
    }
}

impl FactorResult {
    /// View a normal-ordered factorization as a group element.
    ///
    /// Panics if called on an anti-normal factorization, whose coefficients
    /// belong to the reversed arrangement.
    pub fn group_element(&self, kind: AlgebraKind) -> GroupElement {
        assert_eq!(
            self.ordering,
            crate::factorization::FactorOrdering::Normal,
            "anti-normal coefficients do not form a normal-ordered element"
        );
        GroupElement::new(self.coeffs.plus, self.log_center, self.coeffs.minus, kind)
    }
}

/// Distance of `v` to the nearest integer multiple of π (n = 0, ±1, …).
fn distance_to_pi_multiple(v: f64) -> f64 {
    let turns = v / std::f64::consts::PI;
    (turns - turns.round()).abs() * std::f64::consts::PI
}
