//! Command-line front end: detuning sweeps, trajectory dumps, one-shot
//! factorizations and the randomized verification suites.
//!
//! Exit codes: 0 success, 1 tolerance violation, 2 configuration error,
//! 3 numerical/solver error.

mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use thiserror::Error;

use riccati_core::algebra::{AlgebraKind, CoefficientTriple};
use riccati_core::bloch::{sweep, InversionRow};
use riccati_core::factorization::{factor_antinormal, factor_normal, nu};
use riccati_core::oracle;
use riccati_core::propagator::{evolve, Sampling};
use riccati_core::verify;

use config::{load, EvolveFileConfig, SweepFileConfig};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Solver(String),
    #[error("{0}")]
    Tolerance(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Tolerance(_) => 1,
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SamplingArg {
    Midpoint,
    Endpoint,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgebraArg {
    Su11,
    Su2,
    So21,
    All,
}

impl AlgebraArg {
    fn kinds(self) -> Vec<AlgebraKind> {
        match self {
            AlgebraArg::Su11 => vec![AlgebraKind::Su11],
            AlgebraArg::Su2 => vec![AlgebraKind::Su2],
            AlgebraArg::So21 => vec![AlgebraKind::So21],
            AlgebraArg::All => AlgebraKind::ALL.to_vec(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "riccati",
    version,
    about = "Time evolution of su(1,1)/su(2)/so(2,1) Hamiltonians and the complex Riccati equations they solve"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON configuration file (sweep, evolve).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output path; overrides the config's "output".
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Hamiltonian sampling point per step; overrides the config.
    #[arg(long, global = true, value_enum)]
    sampling: Option<SamplingArg>,

    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the sech-pulse spin inversion over detuning and write a CSV.
    Sweep,
    /// Propagate one drive and dump the trajectory as CSV.
    Evolve,
    /// Factorize a single group exponential and check it against the 2x2 oracle.
    Factor {
        #[arg(long, value_enum)]
        algebra: AlgebraArgSingle,
        /// Ladder-raising coefficient, as "re" or "re,im".
        #[arg(long, value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
        lambda_plus: Complex64,
        /// Center coefficient, as "re" or "re,im".
        #[arg(long, value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
        lambda_c: Complex64,
        /// Ladder-lowering coefficient, as "re" or "re,im".
        #[arg(long, value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
        lambda_minus: Complex64,
    },
    /// Run the seeded randomized residual suites.
    Verify {
        #[arg(long, value_enum, default_value_t = AlgebraArg::All)]
        algebra: AlgebraArg,
        /// Samples per suite.
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgebraArgSingle {
    Su11,
    Su2,
    So21,
}

impl From<AlgebraArgSingle> for AlgebraKind {
    fn from(arg: AlgebraArgSingle) -> AlgebraKind {
        match arg {
            AlgebraArgSingle::Su11 => AlgebraKind::Su11,
            AlgebraArgSingle::Su2 => AlgebraKind::Su2,
            AlgebraArgSingle::So21 => AlgebraKind::So21,
        }
    }
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err("expected \"re\" or \"re,im\"".into()),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let sampling = cli.sampling.map(|s| match s {
        SamplingArg::Midpoint => Sampling::Midpoint,
        SamplingArg::Endpoint => Sampling::Endpoint,
    });
    match cli.command {
        Command::Sweep => cmd_sweep(&cli, sampling),
        Command::Evolve => cmd_evolve(&cli, sampling),
        Command::Factor { algebra, lambda_plus, lambda_c, lambda_minus } => {
            cmd_factor(algebra.into(), lambda_plus, lambda_c, lambda_minus)
        }
        Command::Verify { algebra, n } => cmd_verify(algebra, n, cli.seed),
    }
}

/// Full double precision (17 significant digits) so independent
/// implementations can diff CSV output meaningfully.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_out(path: Option<&PathBuf>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, contents)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}"))),
    }
}

fn require_config(cli: &Cli) -> Result<&PathBuf, CliError> {
    cli.config.as_ref().ok_or_else(|| CliError::Config("--config <path> is required".into()))
}

fn cmd_sweep(cli: &Cli, sampling: Option<Sampling>) -> Result<(), CliError> {
    let file: SweepFileConfig = load(require_config(cli)?)?;
    let config = file.to_sweep_config(sampling)?;

    let outcomes = sweep(&config);
    let mut rows: Vec<InversionRow> = Vec::with_capacity(outcomes.len());
    let mut row_errors = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(row) => rows.push(row),
            Err(err) => row_errors.push(err),
        }
    }
    for err in &row_errors {
        eprintln!("error: {err}");
    }

    let mut csv = String::from(
        "detuning,numeric_mz,analytic_mz,abs_error,max_unitarity_residual,riccati_residual\n",
    );
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt17(row.detuning),
            fmt17(row.numeric_mz),
            fmt17(row.analytic_mz.unwrap_or(f64::NAN)),
            fmt17(row.abs_error().unwrap_or(f64::NAN)),
            fmt17(row.max_unitarity_residual),
            fmt17(row.riccati_residual),
        ));
    }
    let out_path = cli.out.as_ref().or(file.output.as_ref());
    write_out(out_path, &csv)?;

    let max_abs_error =
        rows.iter().filter_map(InversionRow::abs_error).fold(f64::NAN, |a, b| b.max(a));
    let max_unitarity =
        rows.iter().map(|r| r.max_unitarity_residual).fold(0.0f64, f64::max);
    let summary =
        format!("max_abs_error={} max_unitarity={}", fmt17(max_abs_error), fmt17(max_unitarity));
    if out_path.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }

    if !row_errors.is_empty() {
        return Err(CliError::Solver(format!("{} sweep row(s) failed", row_errors.len())));
    }
    if max_abs_error > file.tolerance {
        return Err(CliError::Tolerance(format!(
            "max_abs_error={max_abs_error:.6e} exceeds tolerance={:.6e}",
            file.tolerance
        )));
    }
    Ok(())
}

fn cmd_evolve(cli: &Cli, sampling: Option<Sampling>) -> Result<(), CliError> {
    let file: EvolveFileConfig = load(require_config(cli)?)?;
    let drive = file.to_drive()?;
    let trajectory = evolve(&drive, file.t_final, file.n_steps, file.sampling(sampling))
        .map_err(|e| CliError::Solver(e.to_string()))?;

    let mut csv = String::from(
        "t,re_alpha,im_alpha,re_logbeta,im_logbeta,re_gamma,im_gamma,unitarity_modulus,unitarity_center,unitarity_phase\n",
    );
    let grid = trajectory.grid();
    let identity = riccati_core::GroupElement::identity(trajectory.kind);
    for (t, element) in grid.iter().zip(std::iter::once(&identity).chain(&trajectory.cumulative)) {
        let report = element.unitarity();
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            fmt17(*t),
            fmt17(element.alpha.re),
            fmt17(element.alpha.im),
            fmt17(element.log_beta.re),
            fmt17(element.log_beta.im),
            fmt17(element.gamma.re),
            fmt17(element.gamma.im),
            fmt17(report.r_modulus),
            fmt17(report.r_center),
            fmt17(report.r_phase),
        ));
    }
    write_out(cli.out.as_ref().or(file.output.as_ref()), &csv)
}

fn cmd_factor(
    kind: AlgebraKind,
    lambda_plus: Complex64,
    lambda_c: Complex64,
    lambda_minus: Complex64,
) -> Result<(), CliError> {
    let lambda = CoefficientTriple::new(lambda_plus, lambda_c, lambda_minus);
    let fmt_c = |z: Complex64| format!("{},{}", fmt17(z.re), fmt17(z.im));
    println!("algebra    {kind}");
    println!("lambda     plus={} center={} minus={}", fmt_c(lambda.plus), fmt_c(lambda.center), fmt_c(lambda.minus));
    println!("nu         {}", fmt_c(nu(&lambda, kind)));

    let direct = oracle::exp_linear(&lambda, kind);

    let normal = factor_normal(&lambda, kind).map_err(|e| CliError::Solver(e.to_string()))?;
    let normal_defect =
        oracle::exp_factored(&normal.group_element(kind)).max_abs_diff(&direct);
    println!(
        "normal     plus={} ln_center={} minus={} oracle_defect={:.3e}",
        fmt_c(normal.coeffs.plus),
        fmt_c(normal.log_center),
        fmt_c(normal.coeffs.minus),
        normal_defect
    );

    let anti = factor_antinormal(&lambda, kind).map_err(|e| CliError::Solver(e.to_string()))?;
    let anti_defect = oracle::exp_antinormal_product(&anti, kind).max_abs_diff(&direct);
    println!(
        "antinormal plus={} ln_center={} minus={} oracle_defect={:.3e}",
        fmt_c(anti.coeffs.plus),
        fmt_c(anti.log_center),
        fmt_c(anti.coeffs.minus),
        anti_defect
    );
    Ok(())
}

fn cmd_verify(algebra: AlgebraArg, n: usize, seed: u64) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Config("--n must be at least 1".into()));
    }
    let mut failures = Vec::new();
    for kind in algebra.kinds() {
        for report in verify::run_all(kind, n, seed) {
            let status = if report.passed() { "PASS" } else { "FAIL" };
            println!(
                "{:5} {:26} max_residual={:.3e} tolerance={:.0e} {status}",
                kind.name(),
                report.name,
                report.max_residual,
                report.tolerance
            );
            if !report.passed() {
                failures.push(format!("{} on {} (seed {})", report.name, kind, seed));
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Tolerance(format!("suite(s) failed: {}", failures.join(", "))))
    }
}
