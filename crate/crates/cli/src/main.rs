//! `fermiwell`: bound states, half-bound states and level counts of the
//! symmetric Fermi well from the command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error,
//! 3 numerical failure.

mod commands;
mod output;
mod reference;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermiwell::DEFAULT_KAPPA2;
use thiserror::Error;

use output::Fmt;

#[derive(Debug, Parser)]
#[command(
    name = "fermiwell",
    version,
    about = "Bound states of the symmetric Fermi (Woods-Saxon) well"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// 2m/hbar^2 in MeV^-1 fm^-2
    #[arg(long, global = true, allow_hyphen_values = true, default_value_t = DEFAULT_KAPPA2)]
    kappa2: f64,

    /// Decimal places in printed numbers, or `full`
    #[arg(long, global = true, default_value = "4", value_parser = parse_precision)]
    precision: Precision,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy)]
struct Precision(Option<usize>);

fn parse_precision(s: &str) -> Result<Precision, String> {
    if s == "full" {
        return Ok(Precision(None));
    }
    match s.parse::<usize>() {
        Ok(d) if d <= 17 => Ok(Precision(Some(d))),
        _ => Err(format!("expected 0..=17 or `full`, got `{s}`")),
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct WellArgs {
    /// Depth V0, MeV
    #[arg(long = "v0", allow_hyphen_values = true)]
    pub v0: f64,
    /// Half-width a, fm
    #[arg(long = "a", allow_hyphen_values = true)]
    pub a: f64,
    /// Diffuseness b, fm
    #[arg(long = "b", allow_hyphen_values = true)]
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Wkb,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Potential,
    Eigenfunctions,
    Hbs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimensionless parameters, G and the predicted level count
    Info(WellArgs),
    /// Bound-state energies
    Spectrum {
        #[command(flatten)]
        well: WellArgs,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Critical strength beta_n for an n-node half-bound state
    Hbs {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        n: usize,
    },
    /// beta_1 .. beta_n at fixed alpha
    HbsScan {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        /// Largest node count
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// s-wave level count of a nucleus with a = r0 A^(1/3)
    Nuclear {
        /// Mass number A
        #[arg(long)]
        mass: u32,
        #[arg(long = "v0", allow_hyphen_values = true, default_value_t = 50.0)]
        v0: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.3)]
        r0: f64,
        #[arg(long = "b", allow_hyphen_values = true, default_value_t = 0.65)]
        b: f64,
    },
    /// Tab-separated curves for plotting
    PlotData {
        #[arg(long, value_enum)]
        kind: PlotKind,
        #[arg(long = "v0", allow_hyphen_values = true)]
        v0: Option<f64>,
        #[arg(long = "a", allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long = "b", allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 401)]
        points: usize,
    },
    /// Recompute a reference table and compare
    Reproduce {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        table: u8,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(fermiwell::Error),
    #[error("numerical failure: {0} is out of range")]
    NonFinite(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl From<fermiwell::Error> for CliError {
    fn from(e: fermiwell::Error) -> Self {
        match e {
            fermiwell::Error::InvalidParameter { .. } => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) | CliError::NonFinite(_) => 3,
        }
    }
}

/// Rendered output and whether every check it contains passed.
pub struct Outcome {
    pub text: String,
    pub verified: bool,
}

pub struct Ctx {
    pub kappa2: f64,
    pub fmt: Fmt,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let ctx = Ctx {
        kappa2: cli.kappa2,
        fmt: Fmt {
            digits: cli.precision.0,
        },
    };
    match cli.command {
        Command::Info(w) => commands::info(&ctx, w),
        Command::Spectrum { well, method, format } => commands::spectrum(&ctx, well, method, format),
        Command::Hbs { alpha, n } => commands::hbs(&ctx, alpha, n),
        Command::HbsScan { alpha, n, format } => commands::hbs_scan(&ctx, alpha, n, format),
        Command::Nuclear { mass, v0, r0, b } => commands::nuclear(&ctx, mass, v0, r0, b),
        Command::PlotData {
            kind,
            v0,
            a,
            b,
            alpha,
            beta,
            x_min,
            x_max,
            points,
        } => {
            let req = commands::PlotRequest {
                kind,
                v0,
                a,
                b,
                alpha,
                beta,
                x_min,
                x_max,
                points,
            };
            commands::plot_data(&ctx, req)
        }
        Command::Reproduce { table, format } => commands::reproduce(&ctx, table, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = run(cli).and_then(|o| {
        output::emit(&o.text, out.as_deref())?;
        Ok(o.verified)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("fermiwell: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("fermiwell: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
