//! Independent 2×2 matrix representation used to validate the closed-form
//! factorization, composition and inversion against plain matrix algebra.
//!
//! The ladder realizations are
//!
//! ```text
//! su(1,1): K₊ = [[0,1],[0,0]], K₋ = [[0,0],[−1,0]], K_c = diag(½,−½)
//! su(2):   J₊ = [[0,1],[0,0]], J₋ = [[0,0],[ 1,0]], J_c = diag(½,−½)
//! so(2,1): T± = (i/√2)·K±,    T_c = i·K_c
//! ```
//!
//! Exponentials use the closed form for traceless 2×2 matrices,
//! exp(M) = cosh(s)·I + sinh(s)/s·M with s² = −det M; the same s² equals the
//! factorization's ν² for all three algebras. This module deliberately does
//! not call into the factorization code it checks.

use num_complex::Complex64;

use crate::algebra::{AlgebraKind, CoefficientTriple};
use crate::factorization::{FactorOrdering, FactorResult};
use crate::group::GroupElement;

/// Plain 2×2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[Complex64::ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.0[0][0] = Complex64::ONE;
        m.0[1][1] = Complex64::ONE;
        m
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        m
    }

    pub fn scale(&self, factor: Complex64) -> Mat2 {
        let mut m = *self;
        for row in &mut m.0 {
            for entry in row {
                *entry *= factor;
            }
        }
        m
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Mat2 {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    /// Adjugate; equals the inverse for det = 1 matrices.
    pub fn adjugate(&self) -> Mat2 {
        Mat2([
            [self.0[1][1], -self.0[0][1]],
            [-self.0[1][0], self.0[0][0]],
        ])
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest componentwise |difference|.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// ‖U†U − I‖_max, the deviation from matrix unitarity.
    pub fn unitarity_defect(&self) -> f64 {
        self.dagger().mul(self).max_abs_diff(&Mat2::identity())
    }
}

/// Concrete generator matrices (T₊, T_c, T₋) for one algebra.
#[derive(Debug, Clone, Copy)]
pub struct MatrixRep {
    pub t_plus: Mat2,
    pub t_center: Mat2,
    pub t_minus: Mat2,
}

impl MatrixRep {
    /// λ₊T₊ + λ_cT_c + λ₋T₋.
    pub fn linear(&self, lambda: &CoefficientTriple) -> Mat2 {
        self.t_plus
            .scale(lambda.plus)
            .add(&self.t_center.scale(lambda.center))
            .add(&self.t_minus.scale(lambda.minus))
    }

    /// [A, B] = AB − BA.
    fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
        a.mul(b).add(&b.mul(a).scale(-Complex64::ONE))
    }

    /// Worst deviation from [T₋,T₊] = 2εT_c, [T_c,T±] = ±δT±.
    pub fn bracket_defect(&self, kind: AlgebraKind) -> f64 {
        let (eps, delta) = kind.structure_constants();
        let d1 = Self::commutator(&self.t_minus, &self.t_plus)
            .max_abs_diff(&self.t_center.scale(2.0 * eps));
        let d2 = Self::commutator(&self.t_center, &self.t_plus)
            .max_abs_diff(&self.t_plus.scale(delta));
        let d3 = Self::commutator(&self.t_center, &self.t_minus)
            .max_abs_diff(&self.t_minus.scale(-delta));
        d1.max(d2).max(d3)
    }
}

/// The 2×2 generator matrices for `kind`.
pub fn representation(kind: AlgebraKind) -> MatrixRep {
    let one = Complex64::ONE;
    let half = Complex64::new(0.5, 0.0);
    let k_plus = Mat2([[Complex64::ZERO, one], [Complex64::ZERO, Complex64::ZERO]]);
    let k_center = Mat2([[half, Complex64::ZERO], [Complex64::ZERO, -half]]);
    match kind {
        AlgebraKind::Su11 => MatrixRep {
            t_plus: k_plus,
            t_center: k_center,
            t_minus: Mat2([[Complex64::ZERO, Complex64::ZERO], [-one, Complex64::ZERO]]),
        },
        AlgebraKind::Su2 => MatrixRep {
            t_plus: k_plus,
            t_center: k_center,
            t_minus: Mat2([[Complex64::ZERO, Complex64::ZERO], [one, Complex64::ZERO]]),
        },
        AlgebraKind::So21 => {
            // a·K± with a² = εδ = −½ transports the su(1,1) brackets to (i/2, i).
            let a = Complex64::new(0.0, 1.0 / std::f64::consts::SQRT_2);
            let su11 = representation(AlgebraKind::Su11);
            MatrixRep {
                t_plus: su11.t_plus.scale(a),
                t_center: su11.t_center.scale(Complex64::I),
                t_minus: su11.t_minus.scale(a),
            }
        }
    }
}

/// exp(λ₊T₊ + λ_cT_c + λ₋T₋) by the traceless closed form.
pub fn exp_linear(lambda: &CoefficientTriple, kind: AlgebraKind) -> Mat2 {
    exp_traceless(&representation(kind).linear(lambda))
}

/// exp(M) = cosh(s)·I + sinh(s)/s·M, s² = −det M, for traceless M.
fn exp_traceless(m: &Mat2) -> Mat2 {
    let s = (-m.det()).sqrt();
    let (cosh, sinhc) = if s.norm() < 1e-6 {
        let s2 = s * s;
        (
            Complex64::ONE + s2 * (0.5 + s2 / 24.0),
            Complex64::ONE + s2 * (Complex64::new(1.0 / 6.0, 0.0) + s2 / 120.0),
        )
    } else {
        (s.cosh(), s.sinh() / s)
    };
    Mat2::identity().scale(cosh).add(&m.scale(sinhc))
}

/// exp(αT₊)·exp(ln(β)T_c)·exp(γT₋), each factor by the closed form.
pub fn exp_factored(g: &GroupElement) -> Mat2 {
    let plus = exp_linear(
        &CoefficientTriple::new(g.alpha, Complex64::ZERO, Complex64::ZERO),
        g.kind,
    );
    let center = exp_linear(
        &CoefficientTriple::new(Complex64::ZERO, g.log_beta, Complex64::ZERO),
        g.kind,
    );
    let minus = exp_linear(
        &CoefficientTriple::new(Complex64::ZERO, Complex64::ZERO, g.gamma),
        g.kind,
    );
    plus.mul(&center).mul(&minus)
}

/// exp(Σ₋T₋)·exp(ln(Σ_c)T_c)·exp(Σ₊T₊) for an anti-normal factorization.
pub fn exp_antinormal_product(f: &FactorResult, kind: AlgebraKind) -> Mat2 {
    assert_eq!(f.ordering, FactorOrdering::AntiNormal);
    let minus = exp_linear(
        &CoefficientTriple::new(Complex64::ZERO, Complex64::ZERO, f.coeffs.minus),
        kind,
    );
    let center = exp_linear(
        &CoefficientTriple::new(Complex64::ZERO, f.log_center, Complex64::ZERO),
        kind,
    );
    let plus = exp_linear(
        &CoefficientTriple::new(f.coeffs.plus, Complex64::ZERO, Complex64::ZERO),
        kind,
    );
    minus.mul(&center).mul(&plus)
}
