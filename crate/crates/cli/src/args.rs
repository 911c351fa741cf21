//! Command-line grammar.
//!
//! Polynomials use the shared text grammar: `--q 9 --modulus [1,0,1]` fixes
//! the field and `--base` takes a little-endian coefficient list such as
//! `[0,1]` or an expression such as `T^2 + 1`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "trunclab", version, about = "Statistics of prime and irreducible truncations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Global {
    #[arg(long, value_enum, default_value = "table", global = true)]
    pub format: Format,
    /// Worker threads (default: all cores). Never changes the output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Largest population an exhaustive scan may visit.
    #[arg(long, global = true)]
    pub scan_ceiling: Option<u64>,
    /// Largest x accepted by the prime counter.
    #[arg(long, global = true)]
    pub sieve_ceiling: Option<u64>,
    /// Candidate budget for chain enumeration.
    #[arg(long, global = true)]
    pub node_budget: Option<u64>,
    /// Skip one-digit truncations in polynomial statistics and chains.
    #[arg(long, global = true)]
    pub strict_def: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact mean of the prime truncation count over n < b^ℓ.
    IntAvg(IntArgs),
    /// Exact variance of the prime truncation count over n < b^ℓ.
    IntVar(IntArgs),
    /// Correlation sum over pairs sharing their low digits.
    IntCorr(IntCorrArgs),
    /// Exact mean of the irreducible truncation count over deg f < mℓ.
    PolyAvg(PolyArgs),
    /// Exact variance of the irreducible truncation count over deg f < mℓ.
    PolyVar(PolyArgs),
    /// Polynomial correlation sum.
    PolyCorr(PolyCorrArgs),
    /// Enumerate left-truncatable primes or irreducibles.
    Chains(TargetArgs),
    /// Largest truncation count over a full range, with witnesses.
    MaxScan(ScanArgs),
    /// Exact model distribution, tail probabilities and Monte Carlo.
    Model(ModelArgs),
    /// Predicted order of the maximal truncation count.
    PredictMax(ModelTarget),
    /// Partial sums of the Borel–Cantelli series.
    BcSum(BcArgs),
    /// Empirical statistics next to every prediction.
    Compare(ScanArgs),
    /// Re-parse a JSON report and check its invariants.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IntArgs {
    #[arg(long)]
    pub base: u64,
    #[arg(long)]
    pub digits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntWeight {
    Prime,
    VonMangoldt,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IntCorrArgs {
    #[arg(long)]
    pub base: u64,
    #[arg(long)]
    pub h1: u32,
    #[arg(long)]
    pub h2: u32,
    #[arg(long, value_enum, default_value = "prime")]
    pub weight: IntWeight,
    /// Restrict the first variable to [b^h1, y1).
    #[arg(long)]
    pub y1: Option<u64>,
    /// Restrict the second variable to [b^h2, y2).
    #[arg(long)]
    pub y2: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FieldArgs {
    /// Field order, a prime power.
    #[arg(long)]
    pub q: u32,
    /// Defining polynomial of an extension field, as a coefficient list.
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PolyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub base: String,
    #[arg(long)]
    pub digits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolyWeightArg {
    Irreducible,
    VonMangoldt,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PolyCorrArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub base: String,
    #[arg(long)]
    pub h1: u32,
    #[arg(long)]
    pub h2: u32,
    #[arg(long, value_enum, default_value = "irreducible")]
    pub weight: PolyWeightArg,
}

/// An integer base, or a polynomial base when `--q` is given or `--base`
/// is a full `q=..;f=..` specification.
#[derive(Debug, Clone, Args, Serialize)]
pub struct TargetArgs {
    #[arg(long)]
    pub base: String,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, requires = "q")]
    pub modulus: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub target: TargetArgs,
    #[arg(long)]
    pub digits: u32,
}

/// Integer model with `--base`, or polynomial model with `--q` and `--m`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelTarget {
    #[arg(long, conflicts_with_all = ["q", "m"], required_unless_present = "q")]
    pub base: Option<u64>,
    #[arg(long, requires = "m")]
    pub q: Option<u64>,
    #[arg(long, requires = "q")]
    pub m: Option<u32>,
    #[arg(long)]
    pub digits: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub target: ModelTarget,
    /// Monte Carlo sample count; 0 skips sampling.
    #[arg(long, default_value_t = 0)]
    pub samples: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BcArgs {
    #[arg(long)]
    pub digits: u32,
    /// Largest base (or field order) in the partial sums.
    #[arg(long)]
    pub limit: u64,
    /// Sum over field orders q with base degree m instead of integer bases.
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ValidateArgs {
    /// JSON report written by `--format json`.
    pub input: PathBuf,
}
