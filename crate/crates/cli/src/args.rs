//! Command-line flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "vcdim",
    version,
    about = "Shattering checks and VC dimension estimates through ERM oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a class shatters a point set.
    Shatter(ShatterArgs),
    /// Estimate the VC dimension of a class by sampling.
    Vcdim(VcdimArgs),
    /// Exact VC dimension of a concept matrix.
    Exact(ExactArgs),
    /// Half-space VC estimates and timings across ambient dimensions.
    Bench(BenchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Threshold,
    Interval,
    Rectangle,
    HalfspaceLp,
    HalfspacePerceptron,
    Finite,
}

#[derive(Args, Debug, Clone)]
pub struct ClassArgs {
    #[arg(long, value_enum)]
    pub class: ClassKind,
    /// Ambient dimension for rectangles and half-spaces.
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Perceptron update budget.
    #[arg(long, default_value_t = vcdim_core::classes::DEFAULT_PERCEPTRON_BUDGET)]
    pub budget: usize,
    /// Concept matrix file for the finite class.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ShatterArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Points as `(x,y);(x,y)`; for one-dimensional points `a,b,c` also works.
    #[arg(long, conflicts_with = "points_file")]
    pub points: Option<String>,
    /// File with one point per line.
    #[arg(long)]
    pub points_file: Option<PathBuf>,
    /// Check only half the labelings when the class is closed under complement.
    #[arg(long)]
    pub complement_symmetry: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplerChoice {
    /// Uniform over the box `[lo, hi]^dim`.
    Box,
    /// Uniform random column subsets of a finite domain.
    Uniform,
    /// Every column subset of a finite domain.
    Exhaustive,
}

#[derive(Args, Debug, Clone)]
pub struct EstimateArgs {
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 32)]
    pub d_max: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Draw all m sets at every size even after one is shattered.
    #[arg(long)]
    pub no_early_break: bool,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hi: f64,
}

#[derive(Args, Debug, Clone)]
pub struct VcdimArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[command(flatten)]
    pub estimate: EstimateArgs,
    /// Defaults to `box` for real-valued classes and `uniform` for finite ones.
    #[arg(long, value_enum)]
    pub sampler: Option<SamplerChoice>,
    /// Exit with status 4 unless the estimate equals this value.
    #[arg(long)]
    pub expect: Option<usize>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Per-size table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ExactArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    /// Also print the first shattered subset of this size.
    #[arg(long)]
    pub witness: Option<usize>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfspaceOracle {
    Lp,
    Perceptron,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    /// Ambient dimensions, as a list (`1,2,3`) or a range (`1-4`).
    #[arg(long, default_value = "1-3")]
    pub dims: String,
    #[arg(long, value_enum, default_value_t = HalfspaceOracle::Lp)]
    pub oracle: HalfspaceOracle,
    #[arg(long, default_value_t = vcdim_core::classes::DEFAULT_PERCEPTRON_BUDGET)]
    pub budget: usize,
    #[command(flatten)]
    pub estimate: EstimateArgs,
    /// `n,vc,elapsed_s` table; printed to stdout when omitted.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Line chart of seconds against dimension.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    pub report: Option<PathBuf>,
}
