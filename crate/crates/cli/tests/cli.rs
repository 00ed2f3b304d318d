//! End-to-end checks of the binary: exit codes, CSV schemas, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_riccati"))
}

fn write_config(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn small_sweep_config(extra: &str) -> String {
    format!(
        r#"{{
            "pulse": {{ "omega0": 10.0, "chi": 2.5, "mu": 2.0, "t0": 20.0 }},
            "detuning_min": -6.0,
            "detuning_max": 6.0,
            "n_points": 5,
            "t_final": 40.0,
            "n_steps": 400{extra}
        }}"#
    )
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn sweep_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "sweep.json", &small_sweep_config(""));
    let out = dir.path().join("rows.csv");
    let result = bin().args(["sweep", "--config"]).arg(&config).arg("--out").arg(&out).output().unwrap();
    assert!(result.status.success(), "{result:?}");
    assert!(stdout(&result).starts_with("max_abs_error="), "{result:?}");
    assert!(stdout(&result).contains(" max_unitarity="));

    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "detuning,numeric_mz,analytic_mz,abs_error,max_unitarity_residual,riccati_residual"
    );
    assert_eq!(lines.count(), 5);
}

#[test]
fn sweep_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "sweep.json", &small_sweep_config(""));
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for out in [&a, &b] {
        let result =
            bin().args(["sweep", "--config"]).arg(&config).arg("--out").arg(out).output().unwrap();
        assert!(result.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn sweep_rejects_invalid_step_count() {
    let dir = tempfile::tempdir().unwrap();
    let text = small_sweep_config("").replace("\"n_steps\": 400", "\"n_steps\": 0");
    let config = write_config(dir.path(), "sweep.json", &text);
    let result = bin().args(["sweep", "--config"]).arg(&config).output().unwrap();
    assert_eq!(result.status.code(), Some(2), "{result:?}");
}

#[test]
fn sweep_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "sweep.json",
        &small_sweep_config(",\n\"not_a_field\": true"),
    );
    let result = bin().args(["sweep", "--config"]).arg(&config).output().unwrap();
    assert_eq!(result.status.code(), Some(2), "{result:?}");
}

#[test]
fn sweep_missing_config_flag_is_a_usage_error() {
    let result = bin().arg("sweep").output().unwrap();
    assert_eq!(result.status.code(), Some(2), "{result:?}");
}

#[test]
fn coarse_stepping_trips_a_tight_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let text = small_sweep_config(",\n\"tolerance\": 1e-9")
        .replace("\"n_steps\": 400", "\"n_steps\": 100");
    let config = write_config(dir.path(), "sweep.json", &text);
    let out = dir.path().join("rows.csv");
    let result =
        bin().args(["sweep", "--config"]).arg(&config).arg("--out").arg(&out).output().unwrap();
    assert_eq!(result.status.code(), Some(1), "{result:?}");
    // The CSV is still produced; the gate decides only the exit code.
    assert!(out.exists());
}

#[test]
fn shipped_inversion_config_passes_its_gate() {
    let dir = tempfile::tempdir().unwrap();
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/fig1_mu2.json");
    let out = dir.path().join("rows.csv");
    let result =
        bin().args(["sweep", "--config"]).arg(&config).arg("--out").arg(&out).output().unwrap();
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 301);
}

#[test]
fn evolve_zero_drive_dumps_zero_columns() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "evolve.json",
        r#"{
            "algebra": "su2",
            "drive": { "type": "constant", "eta_plus": [0.0, 0.0], "center": 0.0 },
            "t_final": 1.0,
            "n_steps": 10
        }"#,
    );
    let out = dir.path().join("traj.csv");
    let result =
        bin().args(["evolve", "--config"]).arg(&config).arg("--out").arg(&out).output().unwrap();
    assert!(result.status.success(), "{result:?}");
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,re_alpha,im_alpha,re_logbeta,im_logbeta,re_gamma,im_gamma,unitarity_modulus,unitarity_center,unitarity_phase"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 11);
    for row in rows {
        for field in row.split(',').skip(1) {
            assert_eq!(field.parse::<f64>().unwrap(), 0.0);
        }
    }
}

#[test]
fn evolve_sech_drive_keeps_residual_columns_small() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "evolve.json",
        r#"{
            "algebra": "su2",
            "drive": { "type": "sech", "omega0": 10.0, "chi": 2.5, "mu": 2.0, "t0": 20.0, "detuning": 3.0 },
            "t_final": 40.0,
            "n_steps": 2000
        }"#,
    );
    let out = dir.path().join("traj.csv");
    let result =
        bin().args(["evolve", "--config"]).arg(&config).arg("--out").arg(&out).output().unwrap();
    assert!(result.status.success(), "{result:?}");
    let csv = std::fs::read_to_string(&out).unwrap();
    for line in csv.lines().skip(1) {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert!(fields.iter().all(|v| v.is_finite()));
        assert!(fields[7] < 1e-9 && fields[8] < 1e-9 && fields[9] < 1e-9, "{line}");
    }
}

#[test]
fn evolve_constant_drive_final_row_matches_factor_output() {
    // Group closure: the N-step constant evolution ends at the single
    // factorized exponential that `factor` prints for lambda = -i*t*eta.
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "evolve.json",
        r#"{
            "algebra": "su2",
            "drive": { "type": "constant", "eta_plus": [0.4, 0.3], "center": 0.8 },
            "t_final": 1.0,
            "n_steps": 64
        }"#,
    );
    let out = dir.path().join("traj.csv");
    let evolve_result =
        bin().args(["evolve", "--config"]).arg(&config).arg("--out").arg(&out).output().unwrap();
    assert!(evolve_result.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    let last: Vec<f64> =
        csv.lines().last().unwrap().split(',').map(|f| f.parse().unwrap()).collect();

    // lambda = -i * 1.0 * (0.4+0.3i, 0.8, 0.4-0.3i) = (0.3-0.4i, -0.8i, -0.3-0.4i)
    let factor_result = bin()
        .args([
            "factor",
            "--algebra",
            "su2",
            "--lambda-plus",
            "0.3,-0.4",
            "--lambda-c",
            "0,-0.8",
            "--lambda-minus",
            "-0.3,-0.4",
        ])
        .output()
        .unwrap();
    assert!(factor_result.status.success(), "{factor_result:?}");
    let text = stdout(&factor_result);
    let normal_line = text.lines().find(|l| l.starts_with("normal")).unwrap();
    let grab = |key: &str| -> (f64, f64) {
        let field = normal_line.split_whitespace().find(|f| f.starts_with(key)).unwrap();
        let value = field.strip_prefix(key).unwrap();
        let (re, im) = value.split_once(',').unwrap();
        (re.parse().unwrap(), im.parse().unwrap())
    };
    let plus = grab("plus=");
    let center = grab("ln_center=");
    let minus = grab("minus=");
    assert!((last[1] - plus.0).abs() < 1e-12 && (last[2] - plus.1).abs() < 1e-12);
    assert!((last[3] - center.0).abs() < 1e-12 && (last[4] - center.1).abs() < 1e-12);
    assert!((last[5] - minus.0).abs() < 1e-12 && (last[6] - minus.1).abs() < 1e-12);
}

#[test]
fn factor_reports_oracle_defects() {
    let result = bin()
        .args(["factor", "--algebra", "so21", "--lambda-plus", "0.2,0.1", "--lambda-c", "0.3", "--lambda-minus", "-0.1,0.15"])
        .output()
        .unwrap();
    assert!(result.status.success(), "{result:?}");
    let text = stdout(&result);
    for line in text.lines().filter(|l| l.contains("oracle_defect=")) {
        let value: f64 =
            line.split("oracle_defect=").nth(1).unwrap().trim().parse().unwrap();
        assert!(value < 1e-12, "{line}");
    }
}

#[test]
fn verify_passes_for_each_algebra() {
    for algebra in ["su2", "so21"] {
        let result = bin()
            .args(["verify", "--algebra", algebra, "--n", "1000", "--seed", "42"])
            .output()
            .unwrap();
        assert_eq!(result.status.code(), Some(0), "{result:?}");
        let text = stdout(&result);
        assert!(text.lines().all(|l| l.ends_with("PASS")));
        assert!(text.contains("gcf-recursion"));
    }
}

#[test]
fn verify_rejects_unknown_algebra() {
    let result = bin().args(["verify", "--algebra", "su3"]).output().unwrap();
    assert_eq!(result.status.code(), Some(2), "{result:?}");
}
