//! Command-line front end: coalition enumeration, coalition count grids,
//! access structures, dealing, recovery and the exhaustive audit.

pub mod commands;
pub mod docs;
pub mod output;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::run;

pub const EXIT_OK: i32 = 0;
pub const EXIT_AUDIT_FAILED: i32 = 1;
pub const EXIT_PARAMETER: i32 = 2;
pub const EXIT_UNAUTHORIZED: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn param(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARAMETER,
            message: message.into(),
        }
    }

    pub fn io(context: &str, err: std::io::Error) -> Self {
        CliError {
            code: EXIT_AUDIT_FAILED,
            message: format!("{context}: {err}"),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<privshare_core::Error> for CliError {
    fn from(err: privshare_core::Error) -> Self {
        use privshare_core::Error as E;
        let code = match &err {
            E::Unauthorized { .. } => EXIT_UNAUTHORIZED,
            E::Capacity(_) => EXIT_CAPACITY,
            E::Internal(_) => EXIT_AUDIT_FAILED,
            E::Parameter(_)
            | E::ModulusMismatch(..)
            | E::DivisionByZero(_)
            | E::InconsistentShares => EXIT_PARAMETER,
        };
        let message = match &err {
            E::Unauthorized { subset, j } => {
                let ids: Vec<String> = subset.iter().map(u64::to_string).collect();
                format!(
                    "subset {{{}}} is not authorized for j = {j}",
                    ids.join(", ")
                )
            }
            _ => err.to_string(),
        };
        CliError { code, message }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "privshare",
    version,
    about = "Privileged coalitions and multi-secret sharing over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List (t, j)-privileged coalitions over the identities 1..=N.
    Enumerate(EnumerateArgs),
    /// Grid of minimal privileged coalition counts per prime and index.
    Table(TableArgs),
    /// Minimal authorized sets for every secret.
    AccessStructure(AccessArgs),
    /// Deal shares of t-1 secrets.
    Deal(DealArgs),
    /// Recover one secret from a subset of a shares file.
    Recover(RecoverArgs),
    /// Exhaustively check correctness and secrecy on a small instance.
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    FullField,
    AllNonzero,
    Unrestricted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConditioningArg {
    Computable,
    AllSubsets,
}

#[derive(Debug, Clone, Args)]
pub struct Participants {
    /// Comma-separated participant identities.
    #[arg(long, value_delimiter = ',', conflicts_with = "n")]
    pub ids: Option<Vec<u64>>,
    /// Shorthand for identities 1..=n.
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub j: usize,
    /// Coalition length; omit to sweep every valid length.
    #[arg(long, conflicts_with = "shortest")]
    pub r: Option<usize>,
    #[arg(long)]
    pub p: u64,
    /// Largest candidate identity.
    #[arg(long = "N")]
    pub n: u64,
    /// Keep only coalitions with no privileged proper sub-track.
    #[arg(long)]
    pub minimal: bool,
    /// Report only the shortest length that has coalitions.
    #[arg(long)]
    pub shortest: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Print each coalition in descending order (text and csv).
    #[arg(long)]
    pub descending: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 7)]
    pub t: usize,
    #[arg(long = "N", default_value_t = 13)]
    pub n: u64,
    /// Comma-separated primes, one row each.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,
    /// Comma-separated indices; defaults to 1..=t-2.
    #[arg(long, value_delimiter = ',')]
    pub j: Option<Vec<usize>>,
    /// One row per (p, j, r) instead of aggregating over r.
    #[arg(long)]
    pub per_length: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AccessArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub p: u64,
    #[command(flatten)]
    pub participants: Participants,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DealArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub p: u64,
    #[command(flatten)]
    pub participants: Participants,
    /// Comma-separated s_0..s_{t-2}.
    #[arg(
        long,
        value_delimiter = ',',
        requires = "blinding",
        conflicts_with = "seed"
    )]
    pub secrets: Option<Vec<u64>>,
    /// Nonzero top coefficient a_{t-1}.
    #[arg(long, requires = "secrets")]
    pub blinding: Option<u64>,
    /// Draw secrets and blinding from a ChaCha20 stream with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Echo the dealt coefficients to stderr.
    #[arg(long)]
    pub show_secrets: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RecoverArgs {
    #[arg(long)]
    pub shares: PathBuf,
    /// Comma-separated participants pooling shares; defaults to all.
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<u64>>,
    #[arg(long)]
    pub j: usize,
    /// Also print how the value was reconstructed.
    #[arg(long)]
    pub explain: bool,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub p: u64,
    #[command(flatten)]
    pub participants: Participants,
    #[arg(long, value_enum, default_value = "full-field")]
    pub domain: DomainArg,
    /// Which other secrets a subset is assumed to know.
    #[arg(long, value_enum, default_value = "computable")]
    pub conditioning: ConditioningArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}
