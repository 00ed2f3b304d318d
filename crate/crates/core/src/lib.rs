//! Time evolution of su(1,1), su(2) and so(2,1) Hamiltonians in the
//! factorized group representation, and the complex Riccati equations it
//! solves.
//!
//! The pieces, bottom up:
//!
//! - [`algebra`]: structure constants and the hermiticity convention.
//! - [`factorization`]: closed-form normal / anti-normal factorization of a
//!   single exponential.
//! - [`group`]: composition, inversion and unitarity diagnostics of
//!   factorized elements.
//! - [`propagator`]: N-step time splitting, the cumulative recursion, its
//!   continued-fraction form, quadrature recovery of β and γ, and the
//!   Riccati-residual diagnostic.
//! - [`riccati`]: generic complex Riccati equations α̇ + b₀α² + b₁α + b₂ = 0,
//!   their classification onto an algebra, and exact n-th derivatives.
//! - [`bloch`]: the sech-pulse spin-inversion application.
//! - [`oracle`]: independent 2×2 matrix representation for validation.
//! - [`verify`]: seeded randomized residual suites over all of the above.

pub mod algebra;
pub mod bloch;
pub mod factorization;
pub mod group;
mod numeric;
pub mod oracle;
pub mod propagator;
pub mod riccati;
pub mod verify;

pub use algebra::{hermiticity_residual, AlgebraKind, CoefficientTriple};
pub use factorization::{factor_antinormal, factor_normal, nu, FactorError, FactorResult};
pub use group::{GroupElement, GroupError, UnitarityReport};
pub use propagator::{
    beta_gamma_quadrature, evolve, gcf_alpha, riccati_residual, single_jump, Drive,
    PropagatorError, Sampling, Trajectory,
};
pub use riccati::{CoeffDerivs, GenericCre, RiccatiError};
