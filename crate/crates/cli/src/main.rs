//! `ida`: possible causal effects from a CSV of observational data.
//!
//! Every flag can also be set through an environment variable named
//! `IDA_<FLAG>` (upper case, dashes as underscores), e.g. `IDA_ALPHA=0.05`.
//!
//! Exit codes: 0 success, 1 output i/o failure, 2 configuration error,
//! 3 input data error, 4 numerical failure, 5 resource limit.

mod commands;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ida", version, about = "Possible causal effects from observational Gaussian data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the CPDAG and the multiset of possible effects of every covariate.
    Estimate(EstimateArgs),
    /// Bootstrap causal scores, ranked.
    Score(ScoreArgs),
    /// Choose the significance level by BIC.
    Tune(TuneArgs),
    /// Run a simulation study and write per-replicate errors.
    Simulate(SimulateArgs),
}

#[derive(Args, Clone)]
pub struct DataArgs {
    /// Comma-separated input with a header row.
    #[arg(long, env = "IDA_INPUT")]
    pub input: PathBuf,
    /// Name of the response column.
    #[arg(long, env = "IDA_RESPONSE")]
    pub response: String,
    /// Use the raw columns instead of centring and scaling them.
    #[arg(long, env = "IDA_NO_STANDARDIZE")]
    pub no_standardize: bool,
    #[arg(long, env = "IDA_OUT")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0, env = "IDA_SEED")]
    pub seed: u64,
}

#[derive(Args, Clone, Copy)]
pub struct EffectArgs {
    /// Report exact zeros when no directed path to the response is possible.
    #[arg(long, env = "IDA_MOD_ZERO_PATH")]
    pub mod_zero_path: bool,
    /// Adjust only for parents and siblings connected to the response.
    #[arg(long, env = "IDA_MOD_PRUNE_Y")]
    pub mod_prune_y: bool,
    /// Largest number of undirected edges per component the global method enumerates.
    #[arg(long, default_value_t = 12, env = "IDA_MAX_ENUM")]
    pub max_enum: usize,
    /// Largest sibling set the local method expands.
    #[arg(long, default_value_t = 25, env = "IDA_MAX_SIB")]
    pub max_sib: usize,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum MethodArg {
    Local,
    Global,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum SimMethodArg {
    Local,
    Global,
    Both,
}

#[derive(Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub effects: EffectArgs,
    #[arg(long, default_value_t = 0.01, env = "IDA_ALPHA")]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Local, env = "IDA_METHOD")]
    pub method: MethodArg,
}

#[derive(Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub effects: EffectArgs,
    #[arg(long, default_value_t = 0.01, env = "IDA_ALPHA")]
    pub alpha: f64,
    /// Number of bootstrap resamples.
    #[arg(long, default_value_t = 10, env = "IDA_BOOTSTRAP")]
    pub bootstrap: usize,
    /// Report the median ambiguity over resamples instead of the full-data ambiguity.
    #[arg(long, env = "IDA_BOOTSTRAP_AMBIGUITY")]
    pub bootstrap_ambiguity: bool,
}

#[derive(Args)]
pub struct TuneArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Candidate significance levels, comma-separated.
    #[arg(long, value_delimiter = ',', required = true, env = "IDA_ALPHAS")]
    pub alphas: Vec<f64>,
}

#[derive(Args)]
pub struct SimulateArgs {
    /// Number of variables including the response.
    #[arg(long, default_value_t = 10, env = "IDA_P_PLUS_1")]
    pub p_plus_1: usize,
    /// Expected neighbourhood size.
    #[arg(long, default_value_t = 4.0, env = "IDA_EN")]
    pub en: f64,
    /// Sample size per replicate.
    #[arg(long, default_value_t = 2000, env = "IDA_N")]
    pub n: usize,
    #[arg(long, default_value_t = 100, env = "IDA_REPS")]
    pub reps: usize,
    /// Split the variables into this many disconnected blocks.
    #[arg(long, env = "IDA_BLOCKS")]
    pub blocks: Option<usize>,
    /// Draw edge weights with a random sign.
    #[arg(long, env = "IDA_SIGNED_WEIGHTS")]
    pub signed_weights: bool,
    #[arg(long, default_value_t = 0.01, env = "IDA_ALPHA")]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = SimMethodArg::Both, env = "IDA_METHOD")]
    pub method: SimMethodArg,
    #[command(flatten)]
    pub effects: EffectArgs,
    #[arg(long, default_value_t = 0, env = "IDA_SEED")]
    pub seed: u64,
    #[arg(long, env = "IDA_OUT")]
    pub out: PathBuf,
    /// Fill the runtime column. Runtimes vary between runs.
    #[arg(long, env = "IDA_TIMINGS")]
    pub timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Estimate(a) => commands::estimate(&a),
        Command::Score(a) => commands::score(&a),
        Command::Tune(a) => commands::tune(&a),
        Command::Simulate(a) => commands::simulate(&a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ida: {e}");
            e.exit_code()
        }
    }
}
