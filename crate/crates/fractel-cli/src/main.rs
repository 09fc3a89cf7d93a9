//! `fractel` — solve time-fractional telegraph and Euler-Poisson-Darboux
//! problems by analytic, Laplace-domain and Monte Carlo routes, compare
//! outputs, and run the built-in validation suites.
//!
//! Exit codes: 0 success, 1 selftest failures, 2 configuration errors,
//! 3 numerical-convergence errors.

mod config;
mod csvio;
mod runner;

use clap::{Parser, Subcommand};
use config::RunConfig;
use fractel_core::CoreError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fractel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve by deterministic routes and write CSV fields plus a manifest.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo estimation; explicit seeds only, byte-reproducible.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the seed from the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the sample count from the config.
        #[arg(long)]
        n: Option<usize>,
        /// Worker threads (the estimate itself is worker-count independent).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Compare two CSV fields.
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, default_value = "abs")]
        mode: String,
        #[arg(long, default_value_t = 1e-8)]
        threshold: f64,
    },
    /// Run a built-in validation suite.
    Selftest {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Write the machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verbosity = std::env::var("FRACTEL_LOG").unwrap_or_default();
    let result = match cli.command {
        Command::Solve { config, out } => {
            load_config(&config).and_then(|cfg| runner::cmd_solve(&cfg, &out, &verbosity))
        }
        Command::Simulate {
            config,
            out,
            seed,
            n,
            workers,
        } => load_config(&config)
            .and_then(|cfg| runner::cmd_simulate(&cfg, &out, seed, n, workers, &verbosity)),
        Command::Compare {
            file_a,
            file_b,
            mode,
            threshold,
        } => return runner::cmd_compare(&file_a, &file_b, &mode, threshold),
        Command::Selftest { suite, json } => return runner::cmd_selftest(&suite, json.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn load_config(path: &PathBuf) -> fractel_core::Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CoreError::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    RunConfig::from_json(&text)
}
