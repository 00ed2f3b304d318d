//! Closed-form factorization of a single group exponential.
//!
//! An unfactorized element exp(λ₊T₊ + λ_cT_c + λ₋T₋) is re-expressed either
//! in normal order e^{Λ₊T₊}·e^{ln(Λ_c)T_c}·e^{Λ₋T₋} or in anti-normal order
//! e^{Σ₋T₋}·e^{ln(Σ_c)T_c}·e^{Σ₊T₊}. With ν² = (δλ_c/2)² − δε·λ₊λ₋ and
//! shc(ν) = sinh(ν)/ν the coefficients are
//!
//! ```text
//! normal:      A = cosh(ν) − (δλ_c/2)·shc(ν)
//!              Λ± = λ±·shc(ν)/A ,   ln Λ_c = −(2/δ)·Log A
//! anti-normal: B = cosh(ν) + (δλ_c/2)·shc(ν)
//!              Σ± = λ±·shc(ν)/B ,   ln Σ_c = +(2/δ)·Log B
//! ```
//!
//! Both sets are even in ν, so the branch of the square root is irrelevant.
//! The log-center is stored instead of the center itself so that per-step
//! phases accumulate without principal-branch jumps.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{AlgebraKind, CoefficientTriple};
use crate::numeric::ln_1p_complex;

/// Below this |ν| the hyperbolic prefactors switch to 4th-order Taylor
/// polynomials (truncation ~1e-25, under double-precision noise).
pub const SMALL_NU: f64 = 1e-6;

/// Chart-boundary tolerance on the factorization denominator.
pub const SINGULAR_TOL: f64 = 1e-30;

/// Which exponential arrangement a [`FactorResult`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorOrdering {
    /// e^{Λ₊T₊}·e^{ln(Λ_c)T_c}·e^{Λ₋T₋}
    Normal,
    /// e^{Σ₋T₋}·e^{ln(Σ_c)T_c}·e^{Σ₊T₊}
    AntiNormal,
}

/// Factorized coefficients of one group exponential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorResult {
    /// Λ or Σ ladder coefficients in the `plus`/`minus` slots.
    pub coeffs: CoefficientTriple,
    /// ln Λ_c or ln Σ_c (principal per step; finite by construction).
    pub log_center: Complex64,
    /// The ν used, principal square root of (δλ_c/2)² − δε·λ₊λ₋.
    pub nu: Complex64,
    pub ordering: FactorOrdering,
}

impl FactorResult {
    pub fn center(&self) -> Complex64 {
        self.log_center.exp()
    }

    /// Center coefficient raised to δ, computed as exp(δ·log_center).
    pub fn center_pow_delta(&self, kind: AlgebraKind) -> Complex64 {
        (kind.delta() * self.log_center).exp()
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FactorError {
    #[error("singular {ordering:?} factorization: |denominator| = {denom:.3e} (element outside the chart)")]
    SingularFactorization { ordering: FactorOrdering, denom: f64 },
}

/// Principal square root of ν² = (δ·λ_c/2)² − δ·ε·λ₊·λ₋.
///
/// Downstream formulas are even in ν, so the branch choice is unobservable.
pub fn nu(lambda: &CoefficientTriple, kind: AlgebraKind) -> Complex64 {
    let (eps, delta) = kind.structure_constants();
    let half_dc = 0.5 * delta * lambda.center;
    (half_dc * half_dc - delta * eps * lambda.plus * lambda.minus).sqrt()
}

/// sinh(ν)/ν with the small-|ν| Taylor seam.
fn sinhc(nu: Complex64) -> Complex64 {
    if nu.norm() < SMALL_NU {
        let nu2 = nu * nu;
        Complex64::ONE + nu2 * (Complex64::new(1.0 / 6.0, 0.0) + nu2 / 120.0)
    } else {
        nu.sinh() / nu
    }
}

fn factor(
    lambda: &CoefficientTriple,
    kind: AlgebraKind,
    ordering: FactorOrdering,
) -> Result<FactorResult, FactorError> {
    let delta = kind.delta();
    let v = nu(lambda, kind);
    let shc = sinhc(v);
    let half_dc = 0.5 * delta * lambda.center;
    // Denominator and log argument coincide once sinh(ν)/(2ν) is factored out
    // of the displayed ladder-coefficient denominator. It is kept as 1 + w
    // with w built from cosh(ν) − 1 = 2·sinh²(ν/2), so the per-step log stays
    // accurate to the size of w rather than to ulp(1).
    let sinh_half = (0.5 * v).sinh();
    let cosh_m1 = 2.0 * sinh_half * sinh_half;
    let w = match ordering {
        FactorOrdering::Normal => cosh_m1 - half_dc * shc,
        FactorOrdering::AntiNormal => cosh_m1 + half_dc * shc,
    };
    let denom = Complex64::ONE + w;
    if denom.norm() <= SINGULAR_TOL {
        return Err(FactorError::SingularFactorization { ordering, denom: denom.norm() });
    }
    let log_sign = match ordering {
        FactorOrdering::Normal => -1.0,
        FactorOrdering::AntiNormal => 1.0,
    };
    let log_center = log_sign * (2.0 / delta) * ln_1p_complex(w);
    let scale = shc / denom;
    Ok(FactorResult {
        coeffs: CoefficientTriple::new(lambda.plus * scale, Complex64::ZERO, lambda.minus * scale),
        log_center,
        nu: v,
        ordering,
    })
}

/// Normal-ordered factorization e^{Λ₊T₊}·e^{ln(Λ_c)T_c}·e^{Λ₋T₋}.
pub fn factor_normal(
    lambda: &CoefficientTriple,
    kind: AlgebraKind,
) -> Result<FactorResult, FactorError> {
    factor(lambda, kind, FactorOrdering::Normal)
}

/// Anti-normal-ordered factorization e^{Σ₋T₋}·e^{ln(Σ_c)T_c}·e^{Σ₊T₊}.
pub fn factor_antinormal(
    lambda: &CoefficientTriple,
    kind: AlgebraKind,
) -> Result<FactorResult, FactorError> {
    factor(lambda, kind, FactorOrdering::AntiNormal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn nu_diagonal_exponent() {
        // λ₊λ₋ = 0 leaves ν = δλ_c/2 up to branch; real positive c pins it.
        let lambda = CoefficientTriple::new(Complex64::ZERO, c(0.8, 0.0), Complex64::ZERO);
        let v = nu(&lambda, AlgebraKind::Su2);
        assert!((v - c(0.4, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn nu_su2_ladder_pair() {
        let b = 0.7;
        let lambda = CoefficientTriple::new(c(0.0, b), Complex64::ZERO, c(0.0, b));
        let v = nu(&lambda, AlgebraKind::Su2);
        assert!((v - c(0.0, b)).norm() < 1e-15);
    }

    #[test]
    fn nu_su11_unit_ladder() {
        let lambda = CoefficientTriple::new(c(1.0, 0.0), Complex64::ZERO, c(1.0, 0.0));
        let v = nu(&lambda, AlgebraKind::Su11);
        assert!((v - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_exponent_factors_to_identity() {
        for kind in AlgebraKind::ALL {
            let f = factor_normal(&CoefficientTriple::ZERO, kind).unwrap();
            assert_eq!(f.coeffs.plus, Complex64::ZERO);
            assert_eq!(f.coeffs.minus, Complex64::ZERO);
            assert_eq!(f.log_center, Complex64::ZERO);

            let a = factor_antinormal(&CoefficientTriple::ZERO, kind).unwrap();
            assert_eq!(a.coeffs.plus, Complex64::ZERO);
            assert_eq!(a.log_center, Complex64::ZERO);
        }
    }

    #[test]
    fn diagonal_exponent_passes_through() {
        // exp(c·T_c) already is normal ordered: Λ± = 0, ln Λ_c = c.
        for kind in AlgebraKind::ALL {
            let lambda = CoefficientTriple::new(Complex64::ZERO, c(0.3, -0.2), Complex64::ZERO);
            let f = factor_normal(&lambda, kind).unwrap();
            assert!(f.coeffs.plus.norm() < 1e-15);
            assert!(f.coeffs.minus.norm() < 1e-15);
            assert!((f.log_center - c(0.3, -0.2)).norm() < 1e-13, "{kind}: {}", f.log_center);
        }
    }

    #[test]
    fn su2_sample_matches_matrix_exponential() {
        let lambda = CoefficientTriple::new(c(0.1, 0.2), c(0.0, -0.3), c(0.2, -0.1));
        let f = factor_normal(&lambda, AlgebraKind::Su2).unwrap();
        let direct = oracle::exp_linear(&lambda, AlgebraKind::Su2);
        let factored = oracle::exp_factored(&f.group_element(AlgebraKind::Su2));
        assert!(factored.max_abs_diff(&direct) < 1e-10);
    }

    #[test]
    fn su11_antinormal_matches_matrix_exponential() {
        let lambda = CoefficientTriple::new(c(0.25, -0.15), c(0.1, 0.3), c(-0.2, 0.05));
        let f = factor_antinormal(&lambda, AlgebraKind::Su11).unwrap();
        let direct = oracle::exp_linear(&lambda, AlgebraKind::Su11);
        let factored = oracle::exp_antinormal_product(&f, AlgebraKind::Su11);
        assert!(factored.max_abs_diff(&direct) < 1e-10);
    }

    #[test]
    fn antinormal_of_negated_exponent_inverts_normal() {
        // λ → −λ sends (Σ_c, Σ±) to (Λ_c⁻¹, −Λ±).
        for kind in AlgebraKind::ALL {
            let lambda = CoefficientTriple::new(c(0.3, -0.1), c(-0.2, 0.4), c(0.1, 0.25));
            let neg = lambda.scaled(c(-1.0, 0.0));
            let normal = factor_normal(&lambda, kind).unwrap();
            let anti = factor_antinormal(&neg, kind).unwrap();
            assert!((anti.log_center + normal.log_center).norm() < 1e-12);
            assert!((anti.coeffs.plus + normal.coeffs.plus).norm() < 1e-12);
            assert!((anti.coeffs.minus + normal.coeffs.minus).norm() < 1e-12);
        }
    }

    #[test]
    fn branch_of_nu_is_unobservable() {
        // Raw displayed formulas with ±ν, compared against the library path.
        let lambda = CoefficientTriple::new(c(0.2, 0.1), c(0.15, -0.25), c(-0.1, 0.3));
        for kind in AlgebraKind::ALL {
            let delta = kind.delta();
            let f = factor_normal(&lambda, kind).unwrap();
            for sign in [1.0, -1.0] {
                let v = sign * nu(&lambda, kind);
                let denom = 2.0 * v * v.cosh() - delta * lambda.center * v.sinh();
                let plus = 2.0 * lambda.plus * v.sinh() / denom;
                let arg = v.cosh() - delta * lambda.center / (2.0 * v) * v.sinh();
                let log_center = -(2.0 / delta) * arg.ln();
                assert!((plus - f.coeffs.plus).norm() < 1e-12);
                assert!((log_center - f.log_center).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn extreme_center_exponent_is_flagged_singular() {
        // The chart function e^{-c/2} underflows past the 1e-30 cutoff for
        // large real center exponents.
        let lambda = CoefficientTriple::new(Complex64::ZERO, c(140.0, 0.0), Complex64::ZERO);
        assert!(matches!(
            factor_normal(&lambda, AlgebraKind::Su2),
            Err(FactorError::SingularFactorization { .. })
        ));
    }

    #[test]
    fn taylor_seam_is_continuous() {
        // ν a hair below vs a hair above the Taylor threshold.
        for kind in AlgebraKind::ALL {
            let (eps, delta) = kind.structure_constants();
            // λ = (a, 0, a) gives ν² = −δε·a²; pick a so |ν| straddles 1e-6.
            let unit = (-delta * eps).sqrt();
            for scale in [1.0 - 1e-3, 1.0 + 1e-3] {
                let a = scale * SMALL_NU;
                let lambda = CoefficientTriple::new(c(a, 0.0), Complex64::ZERO, c(a, 0.0));
                let v = nu(&lambda, kind);
                assert!(((v / unit).norm() - a).abs() < 1e-18);
            }
            let low = CoefficientTriple::new(
                c(SMALL_NU * (1.0 - 1e-3), 0.0),
                Complex64::ZERO,
                c(SMALL_NU * (1.0 - 1e-3), 0.0),
            );
            let high = CoefficientTriple::new(
                c(SMALL_NU * (1.0 + 1e-3), 0.0),
                Complex64::ZERO,
                c(SMALL_NU * (1.0 + 1e-3), 0.0),
            );
            let f_low = factor_normal(&low, kind).unwrap();
            let f_high = factor_normal(&high, kind).unwrap();
            // Inputs differ by 2e-9; outputs must track within 1e-10 of that.
            assert!((f_low.coeffs.plus - f_high.coeffs.plus).norm() < 2.1e-9 + 1e-10);
            assert!((f_low.log_center - f_high.log_center).norm() < 1e-10);
        }
    }
}
