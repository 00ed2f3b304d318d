//! Step-size behavior of the splitting on the sech-pulse drive.

use num_complex::Complex64;
use riccati_core::bloch::{bre_drive, SechPulse};
use riccati_core::propagator::{beta_gamma_quadrature, evolve, riccati_residual, Sampling};

fn pulse() -> SechPulse {
    SechPulse { omega0: 10.0, chi: 2.5, mu: 2.0, t0: 20.0 }
}

#[test]
fn residual_bound_at_n8000() {
    // Measured 5.714e-4 for this run; the bound keeps a margin for platform
    // rounding differences while pinning the C·τ² scale (C ≈ 23).
    let drive = bre_drive(pulse(), 3.0);
    let traj = evolve(&drive, 40.0, 8000, Sampling::Midpoint).unwrap();
    let residual = riccati_residual(&traj, &drive);
    assert!(residual <= 6.5e-4, "residual {residual:.3e}");
}

#[test]
fn quadrature_error_constant_is_stable_over_halvings() {
    // e(τ) = C·τ² means e/τ² is flat; require the fitted C to move < 10%
    // across τ, τ/2, τ/4.
    let drive = bre_drive(pulse(), 3.0);
    let mut c_beta = Vec::new();
    let mut c_gamma = Vec::new();
    for n in [1000usize, 2000, 4000] {
        let traj = evolve(&drive, 40.0, n, Sampling::Midpoint).unwrap();
        let (log_beta_q, gamma_q) = beta_gamma_quadrature(&traj, &drive);
        let worst = |quad: &[Complex64], rec: &[Complex64]| {
            quad.iter().zip(rec).map(|(a, b)| (a - b).norm()).fold(0.0f64, f64::max)
        };
        let tau_sq = traj.tau * traj.tau;
        c_beta.push(worst(&log_beta_q, &traj.log_beta_samples()) / tau_sq);
        c_gamma.push(worst(&gamma_q, &traj.gamma_samples()) / tau_sq);
    }
    for c in [&c_beta, &c_gamma] {
        let max = c.iter().fold(0.0f64, |a, &b| a.max(b));
        let min = c.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        assert!(max / min < 1.1, "fitted constants spread too far: {c:?}");
    }
}

#[test]
fn sampling_conventions_pin_the_sample_times() {
    // A pure-center drive linear in t makes the sampled times visible in
    // ln β = −i·τ·Σ η_c(t_sample): endpoint sums jτ, midpoint sums (j−½)τ.
    use riccati_core::propagator::Drive;
    use riccati_core::AlgebraKind;
    let drive = Drive::new(AlgebraKind::Su2, |_| Complex64::ZERO, |t| t);
    let n = 4usize;
    let tau = 0.25f64;
    let endpoint = evolve(&drive, 1.0, n, Sampling::Endpoint).unwrap();
    let midpoint = evolve(&drive, 1.0, n, Sampling::Midpoint).unwrap();
    let sum_endpoint: f64 = (1..=n).map(|j| j as f64 * tau).sum();
    let sum_midpoint: f64 = (1..=n).map(|j| (j as f64 - 0.5) * tau).sum();
    let expect = |s: f64| Complex64::new(0.0, -tau * s);
    assert!((endpoint.final_element().log_beta - expect(sum_endpoint)).norm() < 1e-15);
    assert!((midpoint.final_element().log_beta - expect(sum_midpoint)).norm() < 1e-15);
}
