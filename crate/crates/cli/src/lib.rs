//! Command-line front end: scenario files in, deterministic CSV out.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod units;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{Loaded, Outcome, Source};
use crate::config::ScenarioConfig;
pub use crate::error::CliError;
use crate::output::RunManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "cryolink", version, about = "Heat-load and noise analysis for cryogenic qubit control lines")]
pub struct Cli {
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Control-signal duty cycle in (0, 1]; overrides the scenario value (default 0.33).
    #[arg(long, global = true)]
    pub duty: Option<f64>,
    /// Directory for CSV files and manifest.json.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Format of results printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-stage passive and active heat load for one control line.
    Report {
        /// Use a builtin architecture instead of --config.
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Qubit noise against mean photocurrent for several amplifier noise figures.
    Sweep {
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Attenuator placement and minimum photocurrent.
    Optimize {
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Line capacity per stage for builtins and/or --config.
    Compare {
        /// Builtin names; all four when neither names nor --config are given.
        names: Vec<String>,
    },
    /// Print a builtin architecture as a scenario file.
    DumpBuiltin { name: String },
    /// Check a scenario file without running anything.
    Validate,
}

fn single_source(cli: &Cli, builtin: &Option<String>) -> Result<Source, CliError> {
    match (builtin, &cli.config) {
        (Some(_), Some(_)) => Err(CliError::Config("give either --builtin or --config, not both".into())),
        (Some(name), None) => Ok(Source::Builtin(name.clone())),
        (None, Some(path)) => Ok(Source::File(path.clone())),
        (None, None) => Err(CliError::Config("no scenario: pass --config <file> or --builtin <name>".into())),
    }
}

fn emit(cli: &Cli, command: &str, outcome: Outcome, stdout: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::io("stdout", e);
    let mut files = Vec::new();
    for t in &outcome.tables {
        let csv = t.to_csv(&outcome.digest)?;
        if let Some(dir) = &cli.out {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
            let path = dir.join(&t.file_name);
            std::fs::write(&path, &csv).map_err(|e| CliError::io(path.display(), e))?;
            files.push(t.file_name.clone());
        }
        match cli.format {
            Format::Csv => write!(stdout, "{csv}").map_err(io)?,
            Format::Table => write!(stdout, "{}", t.to_text()).map_err(io)?,
        }
        if outcome.tables.len() > 1 {
            writeln!(stdout).map_err(io)?;
        }
    }
    if let Some(dir) = &cli.out {
        let manifest = RunManifest::new(command, &outcome.digest, files);
        let json = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::io("manifest", e))?;
        let path = dir.join("manifest.json");
        std::fs::write(&path, json + "\n").map_err(|e| CliError::io(path.display(), e))?;
    }
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Runs one invocation, writing results to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    if let Some(d) = cli.duty {
        cryolink_core::thermal::check_duty(d)?;
    }
    match &cli.command {
        Command::Report { builtin } => {
            let l = Loaded::from_source(&single_source(cli, builtin)?)?;
            let outcome = commands::report(&l, l.duty(cli.duty))?;
            emit(cli, "report", outcome, stdout)
        }
        Command::Sweep { builtin } => {
            let l = Loaded::from_source(&single_source(cli, builtin)?)?;
            emit(cli, "sweep", commands::sweep(&l)?, stdout)
        }
        Command::Optimize { builtin } => {
            let l = Loaded::from_source(&single_source(cli, builtin)?)?;
            let outcome = commands::optimize(&l, l.duty(cli.duty))?;
            emit(cli, "optimize", outcome, stdout)
        }
        Command::Compare { names } => {
            let mut sources: Vec<Source> = names.iter().cloned().map(Source::Builtin).collect();
            if let Some(path) = &cli.config {
                sources.push(Source::File(path.clone()));
            }
            if sources.is_empty() {
                sources = commands::builtin_sources();
            }
            let loaded = sources.iter().map(Loaded::from_source).collect::<Result<Vec<_>, _>>()?;
            let duty = match (cli.duty, loaded.as_slice()) {
                (Some(d), _) => d,
                (None, [only]) => only.duty(None),
                _ => commands::DEFAULT_DUTY,
            };
            emit(cli, "compare", commands::compare(&loaded, duty)?, stdout)
        }
        Command::DumpBuiltin { name } => {
            let text = Loaded::from_source(&Source::Builtin(name.clone()))?.canonical;
            match &cli.out {
                Some(dir) => {
                    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
                    let path = dir.join(format!("{name}.toml"));
                    std::fs::write(&path, &text).map_err(|e| CliError::io(path.display(), e))
                }
                None => write!(stdout, "{text}").map_err(|e| CliError::io("stdout", e)),
            }
        }
        Command::Validate => {
            let path = cli
                .config
                .as_ref()
                .ok_or_else(|| CliError::Config("validate needs --config <file>".into()))?;
            let l = Loaded::from_source(&Source::File(path.clone()))?;
            let a = &l.scenario.architecture;
            writeln!(
                stdout,
                "ok: '{}' with {} links, {} components, {} attenuators{}",
                a.name,
                a.links.len(),
                a.actives.len(),
                a.attenuators.len(),
                if a.receiver.is_some() { ", photonic receiver" } else { "" }
            )
            .map_err(|e| CliError::io("stdout", e))
        }
    }
}

/// Parses a scenario from TOML text; convenience for library users.
pub fn parse_scenario(text: &str) -> Result<config::Scenario, CliError> {
    ScenarioConfig::from_toml(text)?.resolve(std::path::Path::new("."))
}
