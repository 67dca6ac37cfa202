//! The `springer` command-line tool: dimensions, generic elements and
//! verification reports for the Springer submodules R_μ(k;l).

mod commands;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use springer_core::tableaux::Partition;
use springer_core::Error;

pub use report::{Check, Report};

/// Largest m for quotient computations without `--allow-large`.
pub const DEFAULT_LIMIT: usize = springer_core::springer::DEFAULT_QUOTIENT_LIMIT;
/// Largest m with `--allow-large`.
pub const LARGE_LIMIT: usize = springer_core::poly::MAX_VARS;

#[derive(Debug, Parser)]
#[command(
    name = "springer",
    version,
    about = "Exact isomorphisms between induced modules and Springer submodules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graded dimensions of R_μ and dimensions of R_μ(k;l).
    Dims {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        output: Output,
    },
    /// Runs the generic-element procedure on R_μ(k;l).
    Generic {
        #[command(flatten)]
        target: Target,
        /// Residue k (taken mod l); all residues when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Verifies the character identities and both isomorphisms.
    Verify {
        #[command(flatten)]
        target: Target,
        /// Residue k (taken mod l); all residues when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// The two-row closed form for μ = (n,n), l = 2.
    TwoRows {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Parity i of the generic element f^(i); both when omitted.
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..2))]
        k: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Invariant suites over every l-partition with m ≤ 5.
    Selftest {
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
pub struct Target {
    /// Partition as comma-separated parts, e.g. 2,2,1.
    #[arg(long, value_parser = parse_partition)]
    pub mu: Partition,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub l: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Lift the m ≤ 6 guard on quotient computations (up to m = 8).
    #[arg(long)]
    pub allow_large: bool,
}

impl Output {
    pub fn limit(&self) -> usize {
        if self.allow_large {
            LARGE_LIMIT
        } else {
            DEFAULT_LIMIT
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

impl Command {
    pub fn output(&self) -> &Output {
        match self {
            Command::Dims { output, .. }
            | Command::Generic { output, .. }
            | Command::Verify { output, .. }
            | Command::TwoRows { output, .. }
            | Command::Selftest { output } => output,
        }
    }
}

/// Process exit status for a failed run.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidPartition(_) | Error::NotLPartition { .. } | Error::InvalidTwoRowIndex { .. } => 2,
        Error::GuardExceeded { .. } => 3,
        _ => 4,
    }
}

/// Runs a command and returns its report.
pub fn run(command: &Command) -> Result<Report, Error> {
    let limit = command.output().limit();
    match command {
        Command::Dims { target, .. } => commands::dims(&target.mu, target.l as usize, limit),
        Command::Generic { target, k, .. } => commands::generic(&target.mu, target.l as usize, *k, limit),
        Command::Verify { target, k, .. } => commands::verify(&target.mu, target.l as usize, *k, limit),
        Command::TwoRows { n, k, .. } => commands::two_rows(*n as usize, k.map(|k| k as usize), limit),
        Command::Selftest { .. } => commands::selftest(),
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.render_json(),
        Format::Table => report.render_table(),
    }
}
