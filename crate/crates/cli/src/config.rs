//! JSON run configurations. Unknown keys are rejected so typos fail loudly.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use riccati_core::algebra::AlgebraKind;
use riccati_core::bloch::{bre_drive, SechPulse, SweepConfig};
use riccati_core::propagator::{Drive, Sampling};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingChoice {
    Midpoint,
    Endpoint,
}

impl From<SamplingChoice> for Sampling {
    fn from(choice: SamplingChoice) -> Sampling {
        match choice {
            SamplingChoice::Midpoint => Sampling::Midpoint,
            SamplingChoice::Endpoint => Sampling::Endpoint,
        }
    }
}

fn default_tolerance() -> f64 {
    5e-3
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseConfig {
    pub omega0: f64,
    pub chi: f64,
    pub mu: f64,
    /// Pulse center; defaults to t_final/2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
}

/// Configuration for the `sweep` subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFileConfig {
    pub pulse: PulseConfig,
    pub detuning_min: f64,
    pub detuning_max: f64,
    pub n_points: usize,
    pub t_final: f64,
    pub n_steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingChoice>,
    /// Gate on max |numeric − analytic|; exit code 1 when exceeded.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl SweepFileConfig {
    pub fn to_sweep_config(&self, sampling_override: Option<Sampling>) -> Result<SweepConfig, CliError> {
        let config = SweepConfig {
            pulse: SechPulse {
                omega0: self.pulse.omega0,
                chi: self.pulse.chi,
                mu: self.pulse.mu,
                t0: self.pulse.t0.unwrap_or(self.t_final / 2.0),
            },
            detuning_min: self.detuning_min,
            detuning_max: self.detuning_max,
            n_points: self.n_points,
            t_final: self.t_final,
            n_steps: self.n_steps,
            sampling: sampling_override
                .or(self.sampling.map(Sampling::from))
                .unwrap_or_default(),
        };
        config.validate().map_err(|e| CliError::Config(e.to_string()))?;
        if !(self.tolerance > 0.0) {
            return Err(CliError::Config("tolerance must be positive".into()));
        }
        Ok(config)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum DriveConfig {
    /// Time-independent coefficients: η₊ = eta_plus, center scalar = center.
    Constant { eta_plus: [f64; 2], center: f64 },
    /// Sech-pulse drive of the Bloch–Riccati equation (su2 only).
    Sech { omega0: f64, chi: f64, mu: f64, t0: Option<f64>, detuning: f64 },
}

/// Configuration for the `evolve` subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveFileConfig {
    pub algebra: String,
    pub drive: DriveConfig,
    pub t_final: f64,
    pub n_steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingChoice>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl EvolveFileConfig {
    pub fn algebra(&self) -> Result<AlgebraKind, CliError> {
        self.algebra.parse().map_err(|e: riccati_core::algebra::ParseAlgebraError| {
            CliError::Config(e.to_string())
        })
    }

    pub fn to_drive(&self) -> Result<Drive, CliError> {
        let kind = self.algebra()?;
        if self.n_steps < 1 {
            return Err(CliError::Config("n_steps must be at least 1".into()));
        }
        if !(self.t_final > 0.0) {
            return Err(CliError::Config("t_final must be positive".into()));
        }
        match self.drive {
            DriveConfig::Constant { eta_plus, center } => {
                Ok(Drive::constant(kind, Complex64::new(eta_plus[0], eta_plus[1]), center))
            }
            DriveConfig::Sech { omega0, chi, mu, t0, detuning } => {
                if kind != AlgebraKind::Su2 {
                    return Err(CliError::Config(
                        "the sech drive realizes an su2 Hamiltonian; set \"algebra\": \"su2\""
                            .into(),
                    ));
                }
                let pulse =
                    SechPulse { omega0, chi, mu, t0: t0.unwrap_or(self.t_final / 2.0) };
                pulse.validate().map_err(|e| CliError::Config(e.to_string()))?;
                Ok(bre_drive(pulse, detuning))
            }
        }
    }

    pub fn sampling(&self, sampling_override: Option<Sampling>) -> Sampling {
        sampling_override.or(self.sampling.map(Sampling::from)).unwrap_or_default()
    }
}

pub fn load<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_config_round_trips() {
        let config = SweepFileConfig {
            pulse: PulseConfig { omega0: 10.0, chi: 2.5, mu: 2.0, t0: Some(20.0) },
            detuning_min: -15.0,
            detuning_max: 15.0,
            n_points: 300,
            t_final: 40.0,
            n_steps: 8000,
            sampling: Some(SamplingChoice::Midpoint),
            tolerance: 5e-3,
            output: Some(PathBuf::from("out.csv")),
        };
        let text = serde_json::to_string(&config).unwrap();
        let back: SweepFileConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn evolve_config_round_trips() {
        let config = EvolveFileConfig {
            algebra: "so21".into(),
            drive: DriveConfig::Constant { eta_plus: [0.3, 0.1], center: 0.5 },
            t_final: 1.0,
            n_steps: 100,
            sampling: None,
            output: None,
        };
        let text = serde_json::to_string(&config).unwrap();
        let back: EvolveFileConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{
            "pulse": {"omega0": 10.0, "chi": 2.5, "mu": 2.0},
            "detuning_min": -15.0, "detuning_max": 15.0, "n_points": 10,
            "t_final": 40.0, "n_steps": 100, "typo_field": 1
        }"#;
        assert!(serde_json::from_str::<SweepFileConfig>(text).is_err());
    }

    #[test]
    fn sech_drive_demands_su2() {
        let config = EvolveFileConfig {
            algebra: "su11".into(),
            drive: DriveConfig::Sech { omega0: 10.0, chi: 2.5, mu: 2.0, t0: None, detuning: 0.0 },
            t_final: 40.0,
            n_steps: 100,
            sampling: None,
            output: None,
        };
        assert!(matches!(config.to_drive(), Err(CliError::Config(_))));
    }
}
