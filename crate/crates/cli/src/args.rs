use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cwsoc::verification::Suite;

#[derive(Debug, Parser)]
#[command(name = "cwsoc", version, about = "Curie-Weiss self-organized criticality: sampling and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run Metropolis chains and write samples.csv and manifest.json.
    Simulate(SimulateArgs),
    /// Query the quartic limit law.
    Limit(LimitArgs),
    /// Run the verification suite and write report.json.
    Verify(VerifyArgs),
    /// KS distance to the limit law and T_n/n statistics over a list of n.
    Convergence(ConvergenceArgs),
    /// Histogram of a samples.csv column, with the limit density alongside.
    Plotdata(PlotdataArgs),
    /// KS statistic of numbers read from a file or stdin against the limit law.
    Ks(KsArgs),
    /// Rerun a simulate or convergence run from its manifest.json.
    Replay(ReplayArgs),
}

/// Sampler flags shared by simulate and convergence. Unset flags fall back to
/// the config file, then (seed only) CWSOC_SEED, then built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct SamplerArgs {
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long = "burn-in")]
    pub burn_in: Option<u64>,
    #[arg(long)]
    pub thin: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "proposal-scale")]
    pub proposal_scale: Option<f64>,
    /// key=value file consulted for flags not given on the command line.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Sweeps per chain, burn-in included.
    #[arg(long)]
    pub sweeps: Option<u64>,
    #[arg(long)]
    pub chains: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub sampler: SamplerArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub density: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub cdf: Vec<f64>,
    #[arg(long)]
    pub quantile: Vec<f64>,
    /// Number of draws to print.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    /// Orders for the normalization bound, e.g. "5-30" or "5,8,13".
    #[arg(long = "n-list")]
    pub n_list: Option<String>,
    /// Tolerance override, e.g. --tol inversion=5e-4 (repeatable).
    #[arg(long = "tol")]
    pub tol: Vec<String>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergenceArgs {
    /// Comma-separated orders, e.g. "32,64,128,256".
    #[arg(long = "n-list")]
    pub n_list: Option<String>,
    /// Recorded samples per n.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub sampler: SamplerArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PlotdataArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 50)]
    pub bins: usize,
    /// Fill the density_limit column from the quartic law.
    #[arg(long = "overlay-limit")]
    pub overlay_limit: bool,
    /// σ of the overlaid law; defaults to the one in the manifest next to the input, else 1.
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long, default_value = "s_scaled")]
    pub column: String,
    /// Output directory for histogram.csv; defaults to the input's directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct KsArgs {
    /// File of whitespace-separated numbers; stdin when absent or "-".
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Pass threshold; defaults to the asymptotic 5% value 1.36/√N.
    #[arg(long)]
    pub critical: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}
