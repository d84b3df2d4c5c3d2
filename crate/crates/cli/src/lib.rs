//! Command-line front end for `primdeg`: file I/O, analysis reports, family
//! construction, exponent sets, oracle cross-checks and exploratory scans.

pub mod commands;
pub mod format;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{OutputFormat, Record, RunReport};

/// Environment variable overriding the dense-tensor cell cap.
pub const CELL_CAP_ENV: &str = "PRIMDEG_CELL_CAP";

#[derive(Debug, Parser)]
#[command(name = "primdeg", version, about = "Primitivity and primitive degrees of nonnegative tensors")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide primitivity and compute all column degrees of a tensor or matrix file.
    Analyze(AnalyzeArgs),
    /// Build a family member, verify its degree and write it to a file.
    Construct(ConstructArgs),
    /// Build and verify a witness for every degree in [1, (n-1)^2+1].
    ExponentSet(ExponentSetArgs),
    /// Cross-check the pattern iteration against dense references on random tensors.
    OracleCheck(OracleCheckArgs),
    /// Sample degrees for 3 <= m < n. Exploratory; asserts nothing.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub path: PathBuf,
    /// Per-column step budget (default (n-1)^2+1, which is always conclusive).
    #[arg(long)]
    pub max_k: Option<usize>,
    /// Also list every state S_1, S_2, ... of each column.
    #[arg(long)]
    pub per_column: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Wielandt,
    A0,
    Ak,
    Bt,
    SmallMatrix,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: FamilyArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExponentSetArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    /// Write each witness B_t as a pattern file into this directory.
    #[arg(long)]
    pub emit_witnesses: Option<PathBuf>,
    /// Refuse n above this.
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct OracleCheckArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of steps compared per column.
    #[arg(long, default_value_t = 5)]
    pub max_k: usize,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Exit codes: success, input or range problems, failed verification.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 1;
    pub const VERIFICATION: u8 = 2;

    /// Exit code for an error that aborted a command.
    pub fn for_error(e: &anyhow::Error) -> u8 {
        match e.downcast_ref::<primdeg::Error>() {
            Some(primdeg::Error::Verification(_)) => VERIFICATION,
            _ => INPUT,
        }
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn verification_errors_map_to_two() {
            let e = anyhow::Error::from(primdeg::Error::Verification("bad witness".into()));
            assert_eq!(for_error(&e.context("constructing")), VERIFICATION);
            let e = anyhow::Error::from(primdeg::Error::Precondition("n >= 3".into()));
            assert_eq!(for_error(&e), INPUT);
            assert_eq!(for_error(&anyhow::anyhow!("io")), INPUT);
        }
    }
}
