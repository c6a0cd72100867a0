//! `doubling`: generators, solvers, reductions, verifiers and benchmarks.
//!
//! Exit status: 0 solved or verified, 1 infeasible or refuted, 2 error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "doubling", version, about = "Doubling-parameterized additive combinatorics solvers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Root seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Failure exponent for randomized steps.
    #[arg(long, global = true, default_value_t = 1)]
    pub gamma: u32,
    /// Largest DP table layer.
    #[arg(long = "cap-table", global = true)]
    pub cap_table: Option<usize>,
    /// Largest enumeration (GAP points, brute-force candidates).
    #[arg(long = "cap-enum", global = true)]
    pub cap_enum: Option<u128>,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Auto)]
    pub backend: BackendArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Auto,
    Fft,
    Hash,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance family.
    Generate(GenerateArgs),
    /// Compute and certify a Freiman cover of a set.
    Freiman {
        #[arg(long)]
        input: PathBuf,
    },
    #[command(subcommand)]
    Ilp(IlpCommand),
    #[command(subcommand, name = "subset-sum")]
    SubsetSum(SubsetSumCommand),
    /// k distinct elements summing to the target.
    Ksum {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
        /// Fixed number of random colorings instead of the default family.
        #[arg(long)]
        partitions: Option<usize>,
    },
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Run a benchmark suite.
    Bench(BenchArgs),
}

#[derive(Args)]
pub struct GenerateArgs {
    /// JSON instance spec; overrides the flags below.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub start: i64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub step: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, default_value_t = 1000, allow_hyphen_values = true)]
    pub hi: i64,
    /// Attach a subset-sum target to the output.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Ap,
    Sidon,
    RandomDense,
    RandomRange,
}

#[derive(Subcommand)]
pub enum IlpCommand {
    /// Solve a BILP, bounded ILP or HBILP instance (detected from its fields).
    Solve {
        #[arg(long)]
        input: PathBuf,
    },
    /// Reduce between problem forms; the output carries its decoder.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        from: Problem,
        #[arg(long, value_enum)]
        to: Problem,
        /// Add unusable dummy elements above the target (hbilp → ss).
        #[arg(long)]
        pad: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Bilp,
    Hbilp,
    Ss,
}

#[derive(Subcommand)]
pub enum SubsetSumCommand {
    /// Solve a bounded or unbounded instance.
    Solve {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum VerifyCommand {
    /// {"domain": [...], "image": [...], "s": 2, "modulus": null}
    Iso {
        #[arg(long)]
        input: PathBuf,
    },
    /// {"m": 5, "freqs": [1], "eps": "1/4"}
    Bohr {
        #[arg(long)]
        input: PathBuf,
    },
    /// {"y": [...], "z": [...], "x": [...]}
    Cover {
        #[arg(long)]
        input: PathBuf,
    },
    /// {"gap": {...}, "set": [...]}
    GapContains {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "foursum-scaling")]
    pub suite: String,
    /// Comma-separated sizes; powers of two from 2^8 to 2^14 by default.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 4)]
    pub partitions: usize,
    /// Include wall-clock times (output is then not reproducible).
    #[arg(long)]
    pub timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global.clone();
    let result = match cli.command {
        Command::Generate(args) => commands::generate(&g, &args),
        Command::Freiman { input } => commands::freiman(&g, &input),
        Command::Ilp(IlpCommand::Solve { input }) => commands::ilp_solve(&g, &input),
        Command::Ilp(IlpCommand::Reduce { input, from, to, pad }) => commands::ilp_reduce(&g, &input, from, to, pad),
        Command::SubsetSum(SubsetSumCommand::Solve { input }) => commands::subset_sum(&g, &input),
        Command::Ksum { k, input, partitions } => commands::ksum(&g, &input, k, partitions),
        Command::Verify(v) => commands::verify(&g, v),
        Command::Bench(args) => commands::bench(&g, &args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
