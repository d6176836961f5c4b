//! Command-line front end. `main.rs` only parses arguments and maps
//! [`CliError`] to an exit code; everything else is here so it can be tested.

pub mod commands;
pub mod csv;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::coarse_grain::{QuadratureRule, QuadratureSpec, DEFAULT_PANELS};
use crate::error::Error;
use crate::quantum_numbers::HalfInt;
use crate::sge::SgeConfig;
use crate::wigner_d::WignerD;
use commands::{FigureParams, Method, Model};
use csv::CsvDocument;

/// Exit status for argument errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for failures while computing or writing.
pub const EXIT_RUNTIME: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ParseHalfInt(_)
            | Error::NegativeJ(_)
            | Error::InvalidState { .. }
            | Error::NonIntegerJ(_)
            | Error::NonFinite(_)
            | Error::InvalidParameter(_)
            | Error::UnsupportedM { .. } => CliError::Usage(e.to_string()),
            Error::FactorialCapacity { .. }
            | Error::CapacityExceeded { .. }
            | Error::TooFewEntries(_) => CliError::Runtime(e.to_string()),
        }
    }
}

/// Rotation angle in radians, or one of `pi`, `pi/2`, `pi/3`, `pi/4`, `pi/6`
/// (optionally negated).
pub fn parse_beta(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.as_str()),
    };
    let token = match body {
        "pi" => Some(PI),
        "pi/2" => Some(FRAC_PI_2),
        "pi/3" => Some(FRAC_PI_3),
        "pi/4" => Some(FRAC_PI_4),
        "pi/6" => Some(FRAC_PI_6),
        _ => None,
    };
    if let Some(v) = token {
        return Ok(if neg { -v } else { v });
    }
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!(
            "`{s}` is not a finite angle in radians or one of pi, pi/2, pi/3, pi/4, pi/6"
        )),
    }
}

fn parse_halfint(s: &str) -> Result<HalfInt, String> {
    s.parse::<HalfInt>().map_err(|e| e.to_string())
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("`{s}` is not a positive finite number")),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "wigcl",
    version,
    about = "Wigner rotation probabilities, coarse-grained densities and classical limits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Sum,
    Jacobi,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FigureArg {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModelArg {
    Pib,
    Sho,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RuleArg {
    Trapezoid,
    Midpoint,
}

#[derive(Debug, clap::Args)]
pub struct QuadArgs {
    /// Composite quadrature rule for local averages.
    #[arg(long, value_enum, default_value = "trapezoid")]
    pub rule: RuleArg,
    /// Panels per averaging window.
    #[arg(long, default_value_t = DEFAULT_PANELS)]
    pub panels: usize,
}

impl QuadArgs {
    fn spec(&self) -> Result<QuadratureSpec, CliError> {
        let rule = match self.rule {
            RuleArg::Trapezoid => QuadratureRule::Trapezoid,
            RuleArg::Midpoint => QuadratureRule::Midpoint,
        };
        Ok(QuadratureSpec::new(rule, self.panels)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full d-matrix table: j, m_prime, m, beta, d, P.
    Dmat {
        #[arg(long, value_parser = parse_halfint, allow_hyphen_values = true)]
        j: HalfInt,
        #[arg(long, value_parser = parse_beta, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, value_enum, default_value = "sum")]
        method: MethodArg,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probability distribution over m_prime for one m (or the uniform ensemble).
    Prob {
        #[arg(long, value_parser = parse_halfint, allow_hyphen_values = true)]
        j: HalfInt,
        #[arg(long, value_parser = parse_halfint, allow_hyphen_values = true, required_unless_present = "ensemble")]
        m: Option<HalfInt>,
        #[arg(long, value_parser = parse_beta, allow_hyphen_values = true)]
        beta: f64,
        /// Average uniformly over every initial m.
        #[arg(long, conflicts_with = "m")]
        ensemble: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the CSV datasets behind a figure into a directory.
    Figure {
        #[arg(value_enum)]
        which: FigureArg,
        /// Output directory.
        #[arg(long, alias = "out-dir")]
        out: PathBuf,
        /// Angular momentum for fig3/fig6.
        #[arg(long, value_parser = parse_halfint)]
        j: Option<HalfInt>,
        /// Comma-separated rotation angles for fig3.
        #[arg(long, value_parser = parse_beta, value_delimiter = ',', allow_hyphen_values = true)]
        betas: Option<Vec<f64>>,
        /// Comma-separated levels for fig4/fig5.
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<u32>>,
        /// Averaging window width for fig4/fig5.
        #[arg(long, value_parser = parse_positive)]
        delta: Option<f64>,
        /// Box length for fig4.
        #[arg(long, value_parser = parse_positive, default_value_t = 1.0)]
        length: f64,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Quantum vs classical comparison for m = 0 or m = j.
    Compare {
        #[arg(long, value_parser = parse_halfint)]
        j: HalfInt,
        #[arg(long, value_parser = parse_halfint, allow_hyphen_values = true)]
        m: HalfInt,
        /// Two-point average over m_prime before comparing (m = 0 only).
        #[arg(long)]
        coarse: bool,
        #[arg(long, value_parser = parse_beta, default_value = "pi/2")]
        beta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stern–Gerlach peak separation and mass scaling.
    Sge {
        /// JSON file with apparatus constants; missing fields take defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_parser = parse_positive)]
        mass_factor: Option<f64>,
        /// Spatial resolution in metres.
        #[arg(long, value_parser = parse_positive)]
        resolution: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Raw, locally averaged and classical density for one box or oscillator level.
    Coarse {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_positive)]
        delta: f64,
        /// Box length (pib only).
        #[arg(long, value_parser = parse_positive, default_value_t = 1.0)]
        length: f64,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn evaluator() -> Result<WignerD<f64>, CliError> {
    Ok(WignerD::from_env()?)
}

fn emit(doc: &CsvDocument, out: Option<&Path>) -> Result<(), CliError> {
    let text = doc.render();
    match out {
        Some(path) => write_file(path, &text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Runtime(format!("writing to stdout: {e}")))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Runtime(format!("writing {}: {e}", path.display())))
}

/// Runs one parsed invocation.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Dmat {
            j,
            beta,
            method,
            out,
        } => {
            let method = match method {
                MethodArg::Sum => Method::Sum,
                MethodArg::Jacobi => Method::Jacobi,
            };
            let doc = commands::dmat(&evaluator()?, j, beta, method)?;
            emit(&doc, out.as_deref())
        }
        Command::Prob {
            j,
            m,
            beta,
            ensemble,
            out,
        } => {
            let m = if ensemble { None } else { m };
            let doc = commands::prob(&evaluator()?, j, m, beta)?;
            emit(&doc, out.as_deref())
        }
        Command::Figure {
            which,
            out,
            j,
            betas,
            n,
            delta,
            length,
            quad,
        } => {
            let mut params = FigureParams {
                length,
                delta,
                levels: n,
                quadrature: quad.spec()?,
                ..FigureParams::default()
            };
            if let Some(j) = j {
                params.j = j;
            }
            if let Some(betas) = betas {
                params.betas = betas;
            }
            let which = match which {
                FigureArg::Fig3 => commands::Figure::Fig3,
                FigureArg::Fig4 => commands::Figure::Fig4,
                FigureArg::Fig5 => commands::Figure::Fig5,
                FigureArg::Fig6 => commands::Figure::Fig6,
            };
            let docs = commands::figure(&evaluator()?, which, &params)?;
            fs::create_dir_all(&out)
                .map_err(|e| CliError::Runtime(format!("creating {}: {e}", out.display())))?;
            for (name, doc) in docs {
                write_file(&out.join(name), &doc.render())?;
            }
            Ok(())
        }
        Command::Compare {
            j,
            m,
            coarse,
            beta,
            out,
        } => {
            let doc = commands::compare(&evaluator()?, j, m, beta, coarse)?;
            emit(&doc, out.as_deref())
        }
        Command::Sge {
            config,
            mass_factor,
            resolution,
            out,
        } => {
            let config = match config {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| {
                        CliError::Runtime(format!("reading {}: {e}", path.display()))
                    })?;
                    SgeConfig::from_json(&text).map_err(|e| {
                        CliError::Usage(format!("invalid SGE config {}: {e}", path.display()))
                    })?
                }
                None => SgeConfig::default(),
            };
            let doc = commands::sge(
                &config,
                mass_factor.unwrap_or(commands::DEFAULT_MASS_FACTOR),
                resolution.unwrap_or(commands::DEFAULT_RESOLUTION),
            )?;
            emit(&doc, out.as_deref())
        }
        Command::Coarse {
            model,
            n,
            delta,
            length,
            quad,
            out,
        } => {
            let model = match model {
                ModelArg::Pib => Model::Box,
                ModelArg::Sho => Model::Oscillator,
            };
            let doc = commands::coarse(model, n, length, delta, &quad.spec()?)?;
            emit(&doc, out.as_deref())
        }
    }
}
