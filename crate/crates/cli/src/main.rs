//! `leibconf`: batch checks on algebra definition files.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! usage or parse errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use leibconf::io::Report;

#[derive(Parser)]
#[command(name = "leibconf", version, about = "Exact checks for Leibniz algebras, dialgebras and their conformal representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Algebra definition file (JSON).
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock timings in the report (makes it nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variety {
    Leibniz,
    Lie,
    Associative,
    Custom,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    Trivial,
    Adjoint,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnvelopeCheck {
    Pbw,
    Faithful,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Check the identities of a variety on an algebra or dialgebra.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        variety: Variety,
        /// Identity file for `--variety custom`.
        #[arg(long, required_if_eq("variety", "custom"))]
        sigma: Option<PathBuf>,
    },
    /// Build the conformal representation of a Leibniz algebra.
    Rep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = ModuleKind::Trivial)]
        module: ModuleKind,
        /// Dimension of the trivial module.
        #[arg(long, default_value_t = 1)]
        dim_v: usize,
    },
    /// Normal forms in the universal enveloping dialgebra.
    Envelope {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        /// Degree bound of the PBW truncation; defaults to --max-length.
        #[arg(long)]
        truncation: Option<usize>,
        #[arg(long, value_enum, default_value_t = EnvelopeCheck::Pbw)]
        check: EnvelopeCheck,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Run every check on a Leibniz algebra.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn emit(report: &Report, common: &Common) -> Result<(), String> {
    let json = serde_json::to_string_pretty(report).expect("reports serialize");
    match common.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{json}"),
    }
    if let Some(path) = &common.out {
        std::fs::write(path, format!("{json}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Check { common, variety, sigma } => (common, commands::check(common, *variety, sigma.as_deref())),
        Command::Rep { common, module, dim_v } => (common, commands::rep(common, *module, *dim_v)),
        Command::Envelope { common, max_length, truncation, check, seed, samples } => (
            common,
            commands::envelope(common, *max_length, truncation.unwrap_or(*max_length), *check, *seed, *samples),
        ),
        Command::Verify { common, max_length, seed, samples } => {
            (common, commands::verify(common, *max_length, *seed, *samples))
        }
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&report, common) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        if let Some(f) = report.first_failure() {
            eprintln!("failed: {}", f.name);
        }
        ExitCode::from(1)
    }
}
