//! Flag definitions for the three subcommands.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use trpower::NormalizationKind;

#[derive(Parser, Debug)]
#[command(
    name = "trpower",
    version,
    about = "Relative power statistics of time-reversal precoding over maximum-diversity massive MIMO channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one ensemble and write empirical CCDF/CDF curves as CSV.
    Simulate(SimulateArgs),
    /// Tabulate tail quantiles in dB against the antenna count.
    Sweep(SweepArgs),
    /// Check ensemble moments against the closed-form moment table.
    Verify(VerifyArgs),
}

#[derive(clap::Args, Debug)]
pub struct SimulateArgs {
    /// Base station antenna count M.
    #[arg(long)]
    pub antennas: usize,

    /// Channel tap count N.
    #[arg(long)]
    pub taps: usize,

    /// Ensemble size R.
    #[arg(long, default_value_t = 1_000_000)]
    pub realizations: u64,

    /// RNG seed; identical seeds reproduce identical output.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Normalisations to simulate.
    #[arg(long, value_delimiter = ',', default_values_t = [KindArg::Tr, KindArg::Dtr, KindArg::Pi])]
    pub kinds: Vec<KindArg>,

    /// Output directory for the CSV files.
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,

    /// Curve resolution: probability levels per curve, log-spaced.
    #[arg(long, default_value_t = 512)]
    pub points: usize,
}

#[derive(clap::Args, Debug)]
pub struct SweepArgs {
    /// Channel tap count N.
    #[arg(long)]
    pub taps: usize,

    /// Antenna counts to sweep.
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 4, 8, 16, 32, 64, 128])]
    pub m_list: Vec<usize>,

    /// Tail probability of the reported quantiles.
    #[arg(long, default_value_t = 1e-4)]
    pub probability: f64,

    /// Ensemble size R per antenna count.
    #[arg(long, default_value_t = 1_000_000)]
    pub realizations: u64,

    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output CSV path.
    #[arg(long, default_value = "sweep.csv")]
    pub out: PathBuf,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Base station antenna count M.
    #[arg(long)]
    pub antennas: usize,

    /// Channel tap count N.
    #[arg(long)]
    pub taps: usize,

    /// Ensemble size R.
    #[arg(long, default_value_t = 1_000_000)]
    pub realizations: u64,

    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Exit nonzero if any check fails.
    #[arg(long)]
    pub strict: bool,

    /// Also write the report as CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// CLI spelling of the normalisation kinds.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Tr,
    Dtr,
    Pi,
}

impl KindArg {
    pub fn to_kind(self) -> NormalizationKind {
        match self {
            KindArg::Tr => NormalizationKind::Tr,
            KindArg::Dtr => NormalizationKind::Dtr,
            KindArg::Pi => NormalizationKind::Pi,
        }
    }
}

impl std::fmt::Display for KindArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.to_kind().label())
    }
}
