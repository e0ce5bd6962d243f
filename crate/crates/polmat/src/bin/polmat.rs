//! Command-line front end for the polarization-matrix library.
//!
//! Exit codes: 0 on success, 1 when `validate` finds a failing check,
//! 2 on configuration errors, 3 on input/output errors. All angles are
//! radians; point radii are read in units of 1/k.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use polmat::cli::{
    self, load_points, parse_mode_list, CliFailure, FieldSource, GpmConfig, MatrixConfig,
    OutputFormat, ProfileConfig, Table, DEFAULT_BASELINE, DEFAULT_PRECISION, MAX_PRECISION,
    MIN_PRECISION,
};
use polmat::fieldsrc::{MultipoleKind, MultipoleMode};
use polmat::validate;

#[derive(Parser)]
#[command(
    name = "polmat",
    version,
    about = "Polarization matrices and zero-point field densities",
    long_about = "Evaluates the general polarization matrix of electromagnetic fields and \
                  the angular-momentum decomposition of zero-point oscillations. Angles are \
                  radians; point radii are interpreted in units of 1/k."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the general polarization matrix at field points.
    Gpm {
        /// Field source: "plane" (z-propagating, x-polarized, unit
        /// amplitude) or "multipole" (requires --lambda, --j, --m).
        #[arg(long)]
        source: String,
        /// Multipole family, E or M.
        #[arg(long)]
        lambda: Option<char>,
        /// Total angular momentum, at least 1.
        #[arg(long)]
        j: Option<u32>,
        /// Angular momentum projection, |m| <= j.
        #[arg(long)]
        m: Option<i32>,
        /// Wavenumber, must be positive.
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        /// Points file ("r,theta,phi" per line, '#' comments) or one
        /// inline "r,theta,phi" triple; radii in units of 1/k.
        #[arg(long)]
        points: String,
        /// Write the artifact to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Significant digits for floating-point output, 6 to 17.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
    /// Tabulate the zero-point density profile Z(x) of one mode family.
    ZpoProfile {
        /// Multipole family, E or M.
        #[arg(long)]
        lambda: char,
        /// Total angular momentum, at least 1.
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 0.0)]
        x_min: f64,
        #[arg(long, default_value_t = 20.0)]
        x_max: f64,
        /// Number of grid points, at least 2.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Constant reference level drawn next to the profile.
        #[arg(long, default_value_t = DEFAULT_BASELINE)]
        baseline: f64,
        /// Write the artifact to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Significant digits for floating-point output, 6 to 17.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
    /// Exact vacuum energy ratio of selected modes to two plane-wave
    /// polarizations.
    ZpoRatio {
        /// Comma-separated mode list such as "E1" or "E1,M1".
        #[arg(long)]
        modes: String,
        /// Write the artifact to this file in addition to the stdout line.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Tabulate the zero-point polarization matrix of one mode family.
    ZpoMatrix {
        /// Multipole family, E or M.
        #[arg(long)]
        lambda: char,
        /// Total angular momentum, at least 1.
        #[arg(long)]
        j: u32,
        /// Wavenumber, must be positive.
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        /// Points file ("r,theta,phi" per line, '#' comments) or one
        /// inline "r,theta,phi" triple; radii in units of 1/k.
        #[arg(long)]
        points: String,
        /// Write the artifact to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Significant digits for floating-point output, 6 to 17.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
    /// Run the numerical self-check suite and report a pass/fail table.
    Validate,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> Result<i32, CliFailure> {
    match command {
        Command::Gpm {
            source,
            lambda,
            j,
            m,
            k,
            points,
            out,
            format,
            precision,
        } => {
            let config = GpmConfig {
                source: resolve_source(&source, lambda, j, m, k)?,
                points: load_points(&points)?,
                precision: checked_precision(precision)?,
            };
            emit(&cli::run_gpm(&config)?, format, out.as_deref())?;
            Ok(0)
        }
        Command::ZpoProfile {
            lambda,
            j,
            x_min,
            x_max,
            samples,
            baseline,
            out,
            format,
            precision,
        } => {
            let config = ProfileConfig {
                kind: parse_lambda(lambda)?,
                j,
                x_min,
                x_max,
                samples,
                baseline,
                precision: checked_precision(precision)?,
            };
            emit(&cli::run_zpo_profile(&config)?, format, out.as_deref())?;
            Ok(0)
        }
        Command::ZpoRatio { modes, out, format } => {
            let parsed = parse_mode_list(&modes)?;
            let (table, line) = cli::run_zpo_ratio(&parsed)?;
            println!("{line}");
            if let Some(path) = out.as_deref() {
                write_artifact(path, &table.render(format))?;
            }
            Ok(0)
        }
        Command::ZpoMatrix {
            lambda,
            j,
            k,
            points,
            out,
            format,
            precision,
        } => {
            let config = MatrixConfig {
                kind: parse_lambda(lambda)?,
                j,
                k,
                points: load_points(&points)?,
                precision: checked_precision(precision)?,
            };
            emit(&cli::run_zpo_matrix(&config)?, format, out.as_deref())?;
            Ok(0)
        }
        Command::Validate => {
            let report = validate::run_all();
            print!("{}", report.render_table());
            if report.all_passed() {
                println!("all checks passed");
                Ok(0)
            } else {
                println!("failed checks: {}", report.failures().join(", "));
                Ok(1)
            }
        }
    }
}

fn parse_lambda(lambda: char) -> Result<MultipoleKind, CliFailure> {
    MultipoleKind::from_char(lambda)
        .map_err(|_| CliFailure::Config(format!("--lambda must be E or M, got \"{lambda}\"")))
}

fn checked_precision(precision: usize) -> Result<usize, CliFailure> {
    if (MIN_PRECISION..=MAX_PRECISION).contains(&precision) {
        Ok(precision)
    } else {
        Err(CliFailure::Config(format!(
            "--precision must lie in {MIN_PRECISION}..={MAX_PRECISION}, got {precision}"
        )))
    }
}

fn resolve_source(
    source: &str,
    lambda: Option<char>,
    j: Option<u32>,
    m: Option<i32>,
    k: f64,
) -> Result<FieldSource, CliFailure> {
    match source {
        "plane" => {
            if lambda.is_some() || j.is_some() || m.is_some() {
                return Err(CliFailure::Config(
                    "--source plane takes no --lambda, --j or --m".into(),
                ));
            }
            if !(k.is_finite() && k > 0.0) {
                return Err(CliFailure::Config(format!("--k must be positive, got {k}")));
            }
            Ok(FieldSource::Plane { k })
        }
        "multipole" => {
            let lambda = lambda.ok_or_else(|| {
                CliFailure::Config("--source multipole requires --lambda".into())
            })?;
            let j = j.ok_or_else(|| {
                CliFailure::Config("--source multipole requires --j".into())
            })?;
            let m = m.ok_or_else(|| {
                CliFailure::Config("--source multipole requires --m".into())
            })?;
            let mode = MultipoleMode::new(parse_lambda(lambda)?, k, j, m)
                .map_err(|error| CliFailure::Config(error.to_string()))?;
            Ok(FieldSource::Multipole { mode })
        }
        other => Err(CliFailure::Config(format!(
            "--source must be \"plane\" or \"multipole\", got \"{other}\""
        ))),
    }
}

fn emit(table: &Table, format: OutputFormat, out: Option<&std::path::Path>) -> Result<(), CliFailure> {
    let rendered = table.render(format);
    match out {
        Some(path) => write_artifact(path, &rendered),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn write_artifact(path: &std::path::Path, rendered: &str) -> Result<(), CliFailure> {
    std::fs::write(path, rendered)
        .map_err(|error| CliFailure::Io(format!("cannot write {}: {error}", path.display())))
}
