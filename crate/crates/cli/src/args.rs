use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "sectorial-means",
    version,
    about = "Resolvent averages and A#H-means of positive definite and accretive matrices",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 domain precondition \
                  failure, 3 input or configuration error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a weighted mean of matrices read from JSON files.
    Mean(MeanArgs),
    /// Run the verification campaign and persist a report.
    Verify(VerifyArgs),
    /// Certify the sectorial angle of an accretive matrix.
    Angle {
        /// Matrix JSON file.
        input: PathBuf,
    },
    /// Principal matrix power.
    Power {
        /// Matrix JSON file.
        input: PathBuf,
        /// Exponent.
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
    },
    /// Generate a random test matrix.
    Gen(GenArgs),
    /// List the verification checks.
    List {
        /// Emit the catalog as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeanKind {
    /// Weighted arithmetic mean.
    Arith,
    /// Weighted harmonic mean.
    Harm,
    /// Weighted geometric mean A #_λ B of exactly two matrices.
    Geom,
    /// Resolvent average, needs --mu >= 0 (or inf).
    Resolvent,
    /// A#H-mean, needs --mu (any value, inf or -inf).
    Ah,
}

#[derive(Debug, Args)]
pub struct MeanArgs {
    pub kind: MeanKind,
    /// Matrix JSON files.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Positive weights, one per input; normalized if they do not sum to 1.
    /// Defaults to uniform weights.
    #[arg(long, num_args = 1..)]
    pub weights: Option<Vec<f64>>,
    /// Weight of the second argument for `geom`.
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// Shift parameter: a real number, `inf` or `-inf`.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Campaign configuration JSON; flags given on the command line override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Matrix sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Samples per check and size.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Master seed. Without this flag or a config value, SECTORIAL_MEANS_SEED is used.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Only run these check ids, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub checks: Option<Vec<String>>,
    /// Skip exploratory checks.
    #[arg(long)]
    pub required_only: bool,
    /// Report destination [default: sectorial-means-report.json or .csv].
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum)]
    pub format: Option<ReportFormat>,
    /// Record per-check wall time in the report.
    #[arg(long)]
    pub timings: bool,
    /// Run samples on all cores. The report is identical either way.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Hermitian positive definite with spectrum in [h, k].
    Pd,
    /// Accretive with numerical range in the sector of half-angle alpha.
    Sectorial,
    /// Haar-distributed unitary.
    Unitary,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    /// Matrix size.
    pub n: usize,
    /// Lower spectral bound for `pd`.
    #[arg(long, default_value_t = 1.0)]
    pub h: f64,
    /// Upper spectral bound for `pd`.
    #[arg(long, default_value_t = 4.0)]
    pub k: f64,
    /// Sector half-angle in radians for `sectorial`.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Seed; defaults to SECTORIAL_MEANS_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
}
