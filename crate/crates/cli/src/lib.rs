//! Configuration-driven front end for the `depol` analyses: parses a run
//! configuration, executes one sweep and writes CSV, the resolved
//! configuration and a run manifest into a fresh output directory.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;

pub use commands::{run_sweep, Command};
pub use config::{parse_config, RunConfig};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "depol", version, about = "Stability of a dense dipolar gas with contact depolarization")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Run configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; must not exist yet.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Master seed, overriding `microsim.seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

fn manifest(cli: &Cli, config: &RunConfig, seconds: f64, workers: usize) -> String {
    let mut m = String::new();
    m.push_str(&format!("tool = \"depol {}\"\n", env!("CARGO_PKG_VERSION")));
    m.push_str(&format!("format_version = \"{}\"\n", output::FORMAT_VERSION));
    m.push_str(&format!("command = \"{}\"\n", cli.command.name()));
    m.push_str(&format!("seed = {}\n", config.microsim.seed));
    m.push_str(&format!("workers = {workers}\n"));
    m.push_str(&format!("wall_time_s = {seconds:e}\n"));
    m.push_str("\n[config]\n");
    m.push_str(&config.resolved());
    m
}

/// Runs one command and returns the process exit code.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let start = Instant::now();
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("missing required flag --config".into()))?;
    let mut config = parse_config(path)?;
    if let Some(seed) = cli.seed {
        config.microsim.seed = seed;
    }
    let out = cli
        .out
        .clone()
        .or_else(|| config.output_directory.clone())
        .ok_or_else(|| CliError::Config("no output directory: pass --out or set output.directory".into()))?;
    if let Some(k) = cli.workers {
        if k == 0 {
            return Err(CliError::Config("--workers must be positive".into()));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let out = output::create_output_dir(&out)?;
    fs::write(out.join("resolved_config.toml"), config.resolved())?;

    let result = run_sweep(&config, cli.command)?;
    fs::write(out.join(format!("{}.csv", cli.command.name())), result.to_csv(config.precision)?)?;
    let seconds = start.elapsed().as_secs_f64();
    fs::write(
        out.join("manifest.toml"),
        manifest(cli, &config, seconds, rayon::current_num_threads()),
    )?;
    log::info!("{} finished in {seconds:.2} s, output in {}", cli.command.name(), out.display());
    match result.worst_error {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
