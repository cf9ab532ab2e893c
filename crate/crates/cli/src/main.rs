//! `ctqmc`: closed-form transition probabilities of open quantum walks.

mod commands;
mod config;
mod error;
mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Figure, Options, Outcome};
use config::{Format, ProbMode, RunConfig};
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "ctqmc", version, about = "Continuous-time open quantum walks on one-dimensional lattices")]
struct Cli {
    /// JSON run configuration; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Add per-eigenvalue kernel columns where supported.
    #[arg(long, short, global = true)]
    verbose: bool,
    /// Override the truncation half-width used by oracles.
    #[arg(long, global = true)]
    truncation: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Superoperator, eigenvalues and eigenbasis of the configured channel.
    ChannelInspect,
    /// Site or state probability along the time grid.
    Prob {
        #[arg(long, value_enum)]
        mode: Option<ProbMode>,
    },
    /// Return integral and recurrence classification of site `i`.
    Recurrence,
    /// Extremal initial states for reaching the goal state.
    Optimize,
    /// Orthogonality measures of the scalar generators.
    Measure,
    /// Closed forms against the matrix exponential and quadrature oracles.
    OracleCompare,
    /// Long-format data for a probability figure.
    Figure {
        #[arg(value_enum)]
        which: Figure,
    },
}

fn run(cli: &Cli) -> Result<Option<CliError>, CliError> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let resolved = cfg.resolve()?;
    let mut opts = Options { verbose: cli.verbose, truncation: cli.truncation, mode: None };
    let Outcome { report, failure } = match &cli.command {
        Command::ChannelInspect => commands::channel_inspect(&resolved, &opts)?,
        Command::Prob { mode } => {
            opts.mode = *mode;
            commands::prob(&resolved, &opts)?
        }
        Command::Recurrence => commands::recurrence(&resolved, &opts)?,
        Command::Optimize => commands::optimize(&resolved, &opts)?,
        Command::Measure => commands::measure(&resolved, &opts)?,
        Command::OracleCompare => commands::oracle_compare(&resolved, &opts)?,
        Command::Figure { which } => commands::figure(&resolved, *which, &opts)?,
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = report.render(format);
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(failure)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(e)) | Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
