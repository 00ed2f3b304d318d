//! Structure constants of the su(1,1), su(2) and so(2,1) Lie algebras and the
//! hermiticity convention for Hamiltonian coefficients.
//!
//! All three algebras are handled uniformly through the commutation relations
//!
//! ```text
//! [T₋, T₊] = 2ε·T_c ,   [T_c, T±] = ±δ·T± ,
//! ```
//!
//! with the scalar pair (ε, δ) selecting the algebra. A Hamiltonian
//! H = η₊T₊ + η_cT_c + η₋T₋ with T₊ = T₋† is hermitian iff η₋ = η₊* and η_c
//! is real (su(1,1), su(2)) or pure imaginary (so(2,1)).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

/// Selects one of the three Lie algebras by its structure constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Su11,
    Su2,
    So21,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 3] = [AlgebraKind::Su11, AlgebraKind::Su2, AlgebraKind::So21];

    /// The pair (ε, δ): (1, 1) for su(1,1), (−1, 1) for su(2), (i/2, i) for so(2,1).
    pub fn structure_constants(self) -> (Complex64, Complex64) {
        match self {
            AlgebraKind::Su11 => (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)),
            AlgebraKind::Su2 => (Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)),
            AlgebraKind::So21 => (Complex64::new(0.0, 0.5), Complex64::new(0.0, 1.0)),
        }
    }

    pub fn epsilon(self) -> Complex64 {
        self.structure_constants().0
    }

    pub fn delta(self) -> Complex64 {
        self.structure_constants().1
    }

    /// Name used in configs and CLI flags.
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Su11 => "su11",
            AlgebraKind::Su2 => "su2",
            AlgebraKind::So21 => "so21",
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("unknown algebra {0:?}, expected one of: su11, su2, so21")]
pub struct ParseAlgebraError(pub String);

impl FromStr for AlgebraKind {
    type Err = ParseAlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "su11" => Ok(AlgebraKind::Su11),
            "su2" => Ok(AlgebraKind::Su2),
            "so21" => Ok(AlgebraKind::So21),
            other => Err(ParseAlgebraError(other.to_owned())),
        }
    }
}

/// Ordered complex triple: the coefficients of (T₊, T_c, T₋).
///
/// Reused for Hamiltonian samples η, unfactorized exponents λ and the
/// factorized coefficient sets.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoefficientTriple {
    pub plus: Complex64,
    pub center: Complex64,
    pub minus: Complex64,
}

impl CoefficientTriple {
    pub const ZERO: CoefficientTriple = CoefficientTriple {
        plus: Complex64::ZERO,
        center: Complex64::ZERO,
        minus: Complex64::ZERO,
    };

    pub fn new(plus: Complex64, center: Complex64, minus: Complex64) -> Self {
        Self { plus, center, minus }
    }

    /// Hermitian sample (η₊, η_c, η₊*) from η₊ and the real scalar behind η_c
    /// (η_c = scalar for su(1,1)/su(2), η_c = i·scalar for so(2,1)).
    pub fn hermitian(plus: Complex64, center_scalar: f64, kind: AlgebraKind) -> Self {
        let center = match kind {
            AlgebraKind::Su11 | AlgebraKind::Su2 => Complex64::new(center_scalar, 0.0),
            AlgebraKind::So21 => Complex64::new(0.0, center_scalar),
        };
        Self { plus, center, minus: plus.conj() }
    }

    pub fn scaled(self, factor: Complex64) -> Self {
        Self {
            plus: self.plus * factor,
            center: self.center * factor,
            minus: self.minus * factor,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.plus.is_finite() && self.center.is_finite() && self.minus.is_finite()
    }
}

/// Deviation of a coefficient sample from the hermitian-Hamiltonian convention.
///
/// Returns max(|plus − conj(minus)|, w) where w is the misplaced part of the
/// center coefficient: |Im center| for su(1,1)/su(2), |Re center| for so(2,1).
/// Zero iff the sample is a valid hermitian coefficient set.
pub fn hermiticity_residual(triple: &CoefficientTriple, kind: AlgebraKind) -> f64 {
    let conj_pair = (triple.plus - triple.minus.conj()).norm();
    let center = match kind {
        AlgebraKind::Su11 | AlgebraKind::Su2 => triple.center.im.abs(),
        AlgebraKind::So21 => triple.center.re.abs(),
    };
    conj_pair.max(center)
}
