//! `polyconv`: convert coefficient files between polynomial bases, time the
//! fast and direct methods, and print rank profiles of the Hankel parts.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyconv::Basis;

mod commands;
mod file;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    RankCap(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::RankCap(_) => 3,
        }
    }
}

impl From<polyconv::Error> for CliError {
    fn from(e: polyconv::Error) -> Self {
        match e {
            polyconv::Error::RankCapExceeded { .. } => CliError::RankCap(e.to_string()),
            polyconv::Error::ContractViolation(_) => CliError::Parse(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "polyconv", version, about = "Fast conversions between orthogonal polynomial bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a coefficient file from one basis to another.
    Convert(ConvertArgs),
    /// Time the fast and direct methods on seeded random vectors (CSV).
    Bench(BenchArgs),
    /// Pivoted Cholesky rank of the Hankel part at each size (CSV).
    RankProfile(RankProfileArgs),
}

/// Bases are written `chebyshev`, `legendre`, `ultraspherical:<λ>`,
/// `jacobi:<α>,<β>` or `laguerre:<α>`.
#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Input file, text or PXF1 binary.
    pub input: String,
    /// Source basis; defaults to the one named in the file header.
    #[arg(long)]
    pub from: Option<String>,
    /// Target basis.
    #[arg(long)]
    pub to: String,
    /// Relative tolerance of the low-rank compression.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Fail with exit status 3 if a factorisation needs more terms.
    #[arg(long)]
    pub max_rank: Option<usize>,
    /// Write PXF1 binary instead of text.
    #[arg(long)]
    pub binary: bool,
    /// Output path; standard output if omitted.
    #[arg(long, short)]
    pub output: Option<String>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    /// Comma-separated degrees N.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Entry n of the random input is scaled by (n+1)^(-decay).
    #[arg(long, default_value_t = 1.5)]
    pub decay: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Largest degree for which the direct method (and so the error
    /// column) is computed.
    #[arg(long, default_value_t = 16384)]
    pub max_direct: usize,
    /// Timed repetitions per method; the minimum is reported.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, short)]
    pub output: Option<String>,
}

#[derive(Debug, Args)]
pub struct RankProfileArgs {
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    /// Comma-separated degrees N; the Hankel part has size N+1.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Relative tolerance; defaults to machine epsilon.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, short)]
    pub output: Option<String>,
}

pub fn parse_basis(spec: &str) -> Result<Basis, CliError> {
    spec.parse::<Basis>().map_err(CliError::from)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    // commands run single-threaded
    let _ = rayon::ThreadPoolBuilder::new().num_threads(1).build_global();
    let result = match cli.command {
        Command::Convert(args) => commands::convert(&args),
        Command::Bench(args) => commands::bench(&args),
        Command::RankProfile(args) => commands::rank_profile(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("polyconv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
