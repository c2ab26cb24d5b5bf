//! `caloron`: index, η-invariants, Nahm rank profiles and Chern–Weil checks
//! for caloron boundary data.

mod commands;
mod config;
mod error;
mod output;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Outcome;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{append_ledger, emit, render, Format};

#[derive(Debug, Parser)]
#[command(name = "caloron", version, about, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// JSON boundary-data configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Shift parameter of the family `A - it dz`.
    #[arg(long = "t", global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    t: f64,
    #[arg(long, global = true, allow_negative_numbers = true)]
    t_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    t_max: Option<f64>,
    /// Cells per axis of 3D grids (overrides the config).
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the quadratures.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Degree of the clutching map for `degree`.
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    degree: i64,
    /// SVG step plot of the rank profile (`nahm` only).
    #[arg(long, global = true)]
    plot: Option<PathBuf>,
    /// Append numeric reports to this CSV file.
    #[arg(long, global = true)]
    ledger: Option<PathBuf>,
    /// Keep wall-clock times in printed reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// L2-index with its mode decomposition and the eta cross-check.
    Index,
    /// Fredholm test at the shift `--t`.
    Fredholm,
    /// Per-line eta invariants and their adiabatic limit.
    Eta,
    /// Piecewise-constant rank profile over `[--t-min, --t-max]`.
    Nahm,
    /// Degree of a clutching map by quadrature and preimage count.
    Degree,
    /// 4D Chern character integral of the configured field.
    Charge,
    /// All identity and numeric checks, with a pass/fail ledger.
    Verify,
}

fn load(common: &Common) -> CliResult<RunConfig> {
    let path = common
        .config
        .as_deref()
        .ok_or_else(|| CliError::Config("--config is required for this subcommand".into()))?;
    RunConfig::load(path)
}

fn run(cli: &Cli) -> CliResult<u8> {
    let c = &cli.common;
    if let Some(n) = c.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    let outcome: Outcome = match cli.command {
        Command::Index => commands::index(&load(c)?, c.t)?,
        Command::Fredholm => commands::fredholm(&load(c)?, c.t)?,
        Command::Eta => commands::eta(&load(c)?, c.t)?,
        Command::Nahm => {
            let (outcome, segments) = commands::nahm(&load(c)?, c.t_min, c.t_max)?;
            if let Some(path) = &c.plot {
                let svg = plot::step_plot_svg(&segments, "rank of the Nahm fibre");
                std::fs::write(path, svg).map_err(|e| CliError::io(path, e))?;
            }
            outcome
        }
        Command::Degree => {
            let cfg = c.config.as_deref().map(RunConfig::load).transpose()?;
            commands::degree(cfg.as_ref(), c.degree, c.grid, c.timings)?
        }
        Command::Charge => commands::charge(&load(c)?, c.grid, c.timings)?,
        Command::Verify => commands::verify(&load(c)?, c.t, c.grid, c.timings)?,
    };
    emit(&render(outcome.doc.as_ref(), c.format)?, c.out.as_deref())?;
    if let Some(path) = &c.ledger {
        if !outcome.reports.is_empty() {
            append_ledger(path, &outcome.reports.iter().collect::<Vec<_>>())?;
        }
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    // clap's own usage errors would exit with 2, which is reserved here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
