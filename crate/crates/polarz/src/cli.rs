//! Command-line surface: flags, subcommands, and shared options.
//!
//! Every subcommand accepts the global `--backend {float,rational}` and
//! `--atom-cap N` options. The process exit codes are part of the contract
//! and are repeated in `--help`:
//!
//! * `0` success,
//! * `1` usage or input error,
//! * `2` resource limit or I/O error,
//! * `3` verification failure.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::channel_arg::ChannelArg;

const EXIT_CODE_HELP: &str = "Exit codes:
  0  success
  1  usage or input error
  2  resource limit or I/O error
  3  verification failure";

/// Top-level command line.
#[derive(Debug, Parser)]
#[command(
    name = "polarz",
    version,
    about = "Exact reliability tables for polar bit-channels",
    after_help = EXIT_CODE_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Arithmetic backend for the density evolution.
    #[arg(long, global = true, value_enum, default_value_t = BackendChoice::Float)]
    pub backend: BackendChoice,

    /// Interior atom budget for the evolution engine.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub atom_cap: u64,
}

/// The available subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a reliability table and select an information set.
    Construct(ConstructArgs),
    /// Cross-check closed forms, the evolution engine, and the brute-force
    /// oracle against each other.
    Verify(VerifyArgs),
    /// Tabulate bit-channel reliabilities over a channel-parameter grid.
    Sweep(SweepArgs),
    /// Compute a reliability table and store it as a JSON cache file.
    Cache(CacheArgs),
    /// Load a cache file, validate it, and print a summary.
    LoadCache(LoadCacheArgs),
}

/// Arguments for `construct`.
#[derive(Debug, Args)]
#[command(group = ArgGroup::new("criterion").required(true).multiple(false))]
pub struct ConstructArgs {
    /// Channel: bsc:P, bec:E, or @FILE with a JSON description.
    #[arg(long, value_parser = ChannelArg::parse)]
    pub channel: ChannelArg,

    /// Polarization level k; the table has 2^k rows.
    #[arg(long)]
    pub level: u32,

    /// Select indices with z strictly below this threshold.
    #[arg(long, group = "criterion")]
    pub gamma: Option<f64>,

    /// Select the floor(R * 2^k) smallest-z indices, ties to smaller index.
    #[arg(long, group = "criterion")]
    pub rate: Option<f64>,

    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Arguments for `verify`.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict the closed-form comparison to this level (3 or 4).
    ///
    /// When omitted and no --channel is given, both closed-form levels and
    /// the oracle check all run.
    #[arg(long)]
    pub level: Option<u32>,

    /// Channel for the oracle-equivalence check; repeatable.
    ///
    /// When given, the oracle check runs on exactly these channels. When
    /// omitted alongside --level, only the closed-form check runs; when both
    /// flags are omitted, the oracle check runs on a standard channel list.
    #[arg(long = "channel", value_parser = ChannelArg::parse)]
    pub channels: Vec<ChannelArg>,

    /// Write the JSON report to this path instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// Arguments for `sweep`.
#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Channel family whose parameter is swept.
    #[arg(long, value_enum)]
    pub family: FamilyChoice,

    /// Number of evenly spaced interior grid points.
    #[arg(long, default_value_t = 20)]
    pub grid: u32,

    /// Polarization level k; each grid point contributes 2^k rows.
    #[arg(long)]
    pub level: u32,

    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Arguments for `cache`.
#[derive(Debug, Args)]
pub struct CacheArgs {
    /// Channel: bsc:P, bec:E, or @FILE with a JSON description.
    #[arg(long, value_parser = ChannelArg::parse)]
    pub channel: ChannelArg,

    /// Polarization level k; the table has 2^k rows.
    #[arg(long)]
    pub level: u32,

    /// Cache file to write.
    #[arg(long)]
    pub out: PathBuf,
}

/// Arguments for `load-cache`.
#[derive(Debug, Args)]
pub struct LoadCacheArgs {
    /// Cache file to read.
    pub path: PathBuf,
}

/// Arithmetic backend selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendChoice {
    /// IEEE double precision.
    Float,
    /// Arbitrary-precision rationals.
    Rational,
}

impl BackendChoice {
    /// The name recorded in table metadata.
    pub fn name(self) -> &'static str {
        match self {
            BackendChoice::Float => "float",
            BackendChoice::Rational => "rational",
        }
    }
}

/// Channel family selector for `sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyChoice {
    /// Binary symmetric channels, parameter p in (0, 1/2).
    Bsc,
    /// Binary erasure channels, parameter eps in (0, 1).
    Bec,
}
