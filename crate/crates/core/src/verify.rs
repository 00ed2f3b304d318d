//! Seeded randomized validation suites.
//!
//! Every suite draws deterministic samples from a ChaCha stream seeded by the
//! caller, measures a worst-case residual against an independent route (the
//! 2×2 matrix oracle, the group axioms, or the recursion), and reports it
//! next to its tolerance. The same suites back the CLI `verify` subcommand
//! and the acceptance checks.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraKind, CoefficientTriple};
use crate::factorization::{factor_antinormal, factor_normal, FactorResult};
use crate::group::GroupElement;
use crate::oracle;
use crate::propagator::gcf_alpha;

/// Outcome of one randomized suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub algebra: AlgebraKind,
    pub samples: usize,
    pub seed: u64,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

fn rng_for(name: &str, kind: AlgebraKind, seed: u64) -> ChaCha8Rng {
    // Distinct deterministic streams per (suite, algebra, seed).
    let mut salt = 0xcbf2_9ce4_8422_2325u64;
    for b in name.bytes().chain(kind.name().bytes()) {
        salt = (salt ^ b as u64).wrapping_mul(0x1000_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn complex_in_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    Complex64::from_polar(r, theta)
}

/// Random exponent with ‖(λ₊, λ_c, λ₋)‖₂ ≤ scale.
fn random_lambda(rng: &mut ChaCha8Rng, scale: f64) -> CoefficientTriple {
    let component = scale / 3f64.sqrt();
    CoefficientTriple::new(
        complex_in_disc(rng, component),
        complex_in_disc(rng, component),
        complex_in_disc(rng, component),
    )
}

fn random_element(rng: &mut ChaCha8Rng, kind: AlgebraKind, scale: f64) -> GroupElement {
    factor_normal(&random_lambda(rng, scale), kind)
        .expect("samples stay inside the chart")
        .group_element(kind)
}

/// Random element satisfying the unitarity constraints by construction,
/// with |α| = |γ| ≤ max_alpha.
///
/// The phase congruence needs an odd multiple of π (l = −e^{i(θ+φ)} is a
/// phase only then); the even class satisfies the modulus and center
/// constraints without being unitary.
fn random_unitary_element(rng: &mut ChaCha8Rng, kind: AlgebraKind, max_alpha: f64) -> GroupElement {
    let r = max_alpha * rng.random::<f64>();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    let phi = std::f64::consts::TAU * rng.random::<f64>();
    let alpha = Complex64::from_polar(r, theta);
    let gamma = Complex64::from_polar(r, phi);
    let phase = theta + phi + std::f64::consts::PI;
    let log_beta = match kind {
        // |β| = 1 − |α|², x = θ + φ + π.
        AlgebraKind::Su11 => Complex64::new((1.0 - r * r).ln(), phase),
        // |β| = 1 + |α|², x = θ + φ + π.
        AlgebraKind::Su2 => Complex64::new((1.0 + r * r).ln(), phase),
        // e^{−x} = 1 + |α|²/2, ln|β| = θ + φ + π.
        AlgebraKind::So21 => Complex64::new(phase, -(1.0 + 0.5 * r * r).ln()),
    };
    GroupElement::new(alpha, log_beta, gamma, kind)
}

/// factor_normal against the matrix exponential.
pub fn factor_normal_suite(kind: AlgebraKind, n: usize, seed: u64) -> SuiteReport {
    let mut rng = rng_for("factor-normal-oracle", kind, seed);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let lambda = random_lambda(&mut rng, 1.0);
        let direct = oracle::exp_linear(&lambda, kind);
        let f = factor_normal(&lambda, kind).expect("inside chart");
        let factored = oracle::exp_factored(&f.group_element(kind));
        worst = worst.max(factored.max_abs_diff(&direct));
    }
    SuiteReport {
        name: "factor-normal-oracle",
        algebra: kind,
        samples: n,
        seed,
        max_residual: worst,
        tolerance: 1e-10,
    }
}

/// factor_antinormal against the matrix exponential.
pub fn factor_antinormal_suite(kind: AlgebraKind, n: usize, seed: u64) -> SuiteReport {
    let mut rng = rng_for("factor-antinormal-oracle", kind, seed);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let lambda = random_lambda(&mut rng, 1.0);
        let direct = oracle::exp_linear(&lambda, kind);
        let f = factor_antinormal(&lambda, kind).expect("inside chart");
        let factored = oracle::exp_antinormal_product(&f, kind);
        worst = worst.max(factored.max_abs_diff(&direct));
    }
    SuiteReport {
        name: "factor-antinormal-oracle",
        algebra: kind,
        samples: n,
        seed,
        max_residual: worst,
        tolerance: 1e-10,
    }
}

/// λ → −λ must map the anti-normal coefficients onto the inverse of the
/// normal ones: ln Σ_c(−λ) = −ln Λ_c(λ), Σ±(−λ) = −Λ±(λ).
pub fn antinormal_reflection_suite(kind: AlgebraKind, n: usize, seed: u64) -> SuiteReport {
    let mut rng = rng_for("antinormal-reflection", kind, seed);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let lambda = random_lambda(&mut rng, 1.0);
        let neg = lambda.scaled(Complex64::new(-1.0, 0.0));
        let normal = factor_normal(&lambda, kind).expect("inside chart");
        let anti = factor_antinormal(&neg, kind).expect("inside chart");
        worst = worst
            .max((anti.log_center + normal.log_center).norm())
            .max((anti.coeffs.plus + normal.coeffs.plus).norm())
            .max((anti.coeffs.minus + normal.coeffs.minus).norm());
    }
    SuiteReport {
        name: "antinormal-reflection",
        algebra: kind,
        samples: n,
        seed,
        max_residual: worst,
        tolerance: 1e-10,
    }
}

/// compose against the matrix product.
pub fn compose_oracle_suite(kind: AlgebraKind, n: usize, seed: u64) -> SuiteReport {
    let mut rng = rng_for("compose-oracle", kind, seed);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let a = random_element(&mut rng, kind, 1.0);
        let b = random_element(&mut rng, kind, 1.0);
        let ab = a.compose(&b).expect("away from singular set");
        let direct = oracle::exp_factored(&a).mul(&oracle::exp_factored(&b));
        worst = worst.max(oracle::exp_factored(&ab).max_abs_diff(&direct));
    }
    SuiteReport {
        name: "compose-oracle",
        algebra: kind,
        samples: n,
        seed,
        max_residual: worst,
        tolerance: 1e-10,
    }
}

/// inverse against the matrix inverse (adjugate; the representation has
/// unit determinant).
pub fn inverse_oracle_suite(kind: AlgebraKind, n: usize, seed: u64) -> SuiteReport {
    let mut rng = rng_for("inverse-oracle", kind, seed);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let g = random_element(&mut rng, kind, 1.0);
        let inv = g.inverse().expect("away from singular set");
        let direct = oracle::exp_factored(&g).adjugate();
        worst = worst.max(oracle::exp_factored(&inv).max_abs_diff(&direct));
    }
    SuiteReport {
        name: "inverse-oracle",
        algebra: kind,
        samples: n,
        seed,
        max_residual: worst,
        tolerance: 1e-10,
    }
}

/// (A·B)·C = A·(B·C) on the factorized coefficients.
pub fn associativity_suite(kind: AlgebraKind, n: usize, seed: u64) -> SuiteReport {
    let mut rng = rng_for("associativity", kind, seed);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let a = random_element(&mut rng, kind, 0.8);
        let b = random_element(&mut rng, kind, 0.8);
        let c = random_element(&mut rng, kind, 0.8);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        worst = worst
            .max((left.alpha - right.alpha).norm())
            .max((left.log_beta - right.log_beta).norm())
            .max((left.gamma - right.gamma).norm());
    }
    SuiteReport {
        name: "associativity",
        algebra: kind,
        samples: n,
        seed,
        max_residual: worst,
        tolerance: 1e-10,
    }
}

/// inverse(G)·G and G·inverse(G) against the identity, on
/// unitarity-constrained elements with |α| ≤ 0.9.
///
/// The center is compared through β^δ: the principal Log inside composition
/// can shift ln β by a multiple of 4πi/δ when the inputs carry large phases,
/// which leaves the element itself (and β^δ) untouched.
pub fn inverse_roundtrip_suite(kind: AlgebraKind, n: usize, seed: u64) -> SuiteReport {
    let mut rng = rng_for("inverse-roundtrip", kind, seed);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let g = random_unitary_element(&mut rng, kind, 0.9);
        let inv = g.inverse().expect("unitary elements are invertible");
        for h in [inv.compose(&g).unwrap(), g.compose(&inv).unwrap()] {
            worst = worst
                .max(h.alpha.norm())
                .max((h.beta_pow_delta() - Complex64::ONE).norm())
                .max(h.gamma.norm());
        }
    }
    SuiteReport {
        name: "inverse-roundtrip",
        algebra: kind,
        samples: n,
        seed,
        max_residual: worst,
        tolerance: 1e-12,
    }
}

/// Composition of two unitary elements stays unitary, and l = β^δ − εδαγ
/// stays a phase.
pub fn unitarity_closure_suite(kind: AlgebraKind, n: usize, seed: u64) -> SuiteReport {
    let (eps, delta) = kind.structure_constants();
    let mut rng = rng_for("unitarity-closure", kind, seed);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let a = random_unitary_element(&mut rng, kind, 0.9);
        let b = random_unitary_element(&mut rng, kind, 0.9);
        debug_assert!(a.unitarity().max() <= 1e-12);
        let ab = a.compose(&b).expect("unitary compositions stay in the chart");
        worst = worst.max(ab.unitarity().max());
        let l = ab.beta_pow_delta() - eps * delta * ab.alpha * ab.gamma;
        worst = worst.max((l.norm() - 1.0).abs());
    }
    SuiteReport {
        name: "unitarity-closure",
        algebra: kind,
        samples: n,
        seed,
        max_residual: worst,
        tolerance: 1e-9,
    }
}

/// The continued-fraction evaluation of α against the stepwise recursion,
/// on random 100-step sequences.
pub fn gcf_recursion_suite(kind: AlgebraKind, n: usize, seed: u64) -> SuiteReport {
    const STEPS: usize = 100;
    let mut rng = rng_for("gcf-recursion", kind, seed);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let factors: Vec<FactorResult> = (0..STEPS)
            .map(|_| factor_normal(&random_lambda(&mut rng, 0.1), kind).expect("inside chart"))
            .collect();
        let via_gcf = gcf_alpha(&factors, kind).expect("away from singular set");
        let mut cumulative = GroupElement::identity(kind);
        for f in &factors {
            cumulative = f.group_element(kind).compose(&cumulative).unwrap();
        }
        worst = worst.max((via_gcf - cumulative.alpha).norm());
    }
    SuiteReport {
        name: "gcf-recursion",
        algebra: kind,
        samples: n,
        seed,
        max_residual: worst,
        tolerance: 1e-12,
    }
}

/// Every suite for one algebra.
pub fn run_all(kind: AlgebraKind, n: usize, seed: u64) -> Vec<SuiteReport> {
    vec![
        factor_normal_suite(kind, n, seed),
        factor_antinormal_suite(kind, n, seed),
        antinormal_reflection_suite(kind, n, seed),
        compose_oracle_suite(kind, n, seed),
        inverse_oracle_suite(kind, n, seed),
        associativity_suite(kind, n, seed),
        inverse_roundtrip_suite(kind, n, seed),
        unitarity_closure_suite(kind, n, seed),
        gcf_recursion_suite(kind, n, seed),
    ]
}
