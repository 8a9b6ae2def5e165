//! `afm`: spectra, closed-form level tables, comparisons, and level-count
//! calibration from the command line.
//!
//! Exit status: 0 on success, 2 for configuration problems (the message names
//! the offending field), 1 for downstream computation errors (the message
//! carries a module-qualified code).

mod config;
mod render;
mod run;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

use config::{Command, CommonArgs};

#[derive(Parser, Debug)]
#[command(
    name = "afm",
    version,
    about = "Bound-state spectra of power-law radial potentials: numeric tables, \
             closed-form approximations, and their calibration"
)]
struct Cli {
    /// JSON run configuration; command-line flags override its fields
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<CmdLine>,
}

#[derive(Subcommand, Debug)]
enum CmdLine {
    /// Numeric eigenvalue table from the finite-difference solver
    Spectrum(CommonArgs),
    /// Closed-form approximate levels under a chosen level-count model
    Afm(CommonArgs),
    /// Joined numeric/approximate table with deviations and their mean square
    Compare(CommonArgs),
    /// Refit the level-count curves b(β) and c(β) for one family
    Fit(CommonArgs),
    /// Mean-square deviation summary tables for the calibrated families
    Tables(CommonArgs),
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = Cli::parse();
    let (name, args) = match cli.command {
        Some(CmdLine::Spectrum(a)) => (Some(Command::Spectrum), a),
        Some(CmdLine::Afm(a)) => (Some(Command::Afm), a),
        Some(CmdLine::Compare(a)) => (Some(Command::Compare), a),
        Some(CmdLine::Fit(a)) => (Some(Command::Fit), a),
        Some(CmdLine::Tables(a)) => (Some(Command::Tables), a),
        None => (None, CommonArgs::default()),
    };
    let file = match cli.config.as_deref().map(config::load_file).transpose() {
        Ok(f) => f.unwrap_or_default(),
        Err(e) => {
            eprintln!("config error: {e}");
            return 2;
        }
    };
    let cfg = match config::assemble(name, &args, file) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return 2;
        }
    };
    let body = match run::run(&cfg) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if let Err(e) = render::emit(&cfg, &body) {
        eprintln!("error: io: {e}");
        return 1;
    }
    0
}
