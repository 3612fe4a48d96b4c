//! `lvqed` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a selftest or `--verify` comparison
//! fails, 2 on a usage, configuration or output error.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{CommonArgs, RunConfig, UsageError};

#[derive(Debug, Parser)]
#[command(
    name = "lvqed",
    version,
    about = "Sweeps and self-tests for Lorentz-violating QED"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Fault {
    Clifford,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Roots of the fermion dispersion quartic with residuals.
    Dispersion,
    /// Closed-form energies for purely timelike or purely spacelike b.
    Spectrum,
    /// Penning-trap frequencies and their b-induced shifts.
    Penning,
    /// Axial Zeeman shifts of spin-orbit coupled states.
    Zeeman,
    /// Chern-Simons birefringence: frequencies, group velocities, stability.
    Photon,
    /// Maxwell-Chern-Simons propagator identity and transversality residuals.
    Mcs,
    /// Induced Chern-Simons coefficients in 2+1 and 3+1 dimensions.
    LoopCheck,
    /// Run every invariant suite.
    Selftest {
        /// Emit machine-readable JSON.
        #[arg(long)]
        json: bool,
        /// Corrupt one building block before running (test hook).
        #[arg(long, hide = true)]
        inject_fault: Option<Fault>,
    },
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let cfg = RunConfig::resolve(&cli.common)?;
    let outcome = match &cli.command {
        Command::Dispersion => commands::dispersion(&cfg)?,
        Command::Spectrum => commands::spectrum(&cfg)?,
        Command::Penning => commands::penning(&cfg)?,
        Command::Zeeman => commands::zeeman(&cfg)?,
        Command::Photon => commands::photon(&cfg)?,
        Command::Mcs => commands::mcs(&cfg)?,
        Command::LoopCheck => commands::loop_check(&cfg)?,
        Command::Selftest { json, inject_fault } => {
            commands::selftest(&cfg, *json, matches!(inject_fault, Some(Fault::Clifford)))
        }
    };
    output::emit(&outcome.text, cfg.out.as_deref())?;
    if !outcome.passed {
        eprintln!("lvqed: verification failed");
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            if err.downcast_ref::<UsageError>().is_some() {
                eprintln!("lvqed: usage: {err}");
            } else {
                eprintln!("lvqed: {err}");
            }
            ExitCode::from(2)
        }
    }
}
