//! `causex`: causal explanations from the command line.
//!
//! Exit codes: 0 success, 2 validation error, 3 capacity error,
//! 4 internal invariant violation.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Failure, Format};

/// Environment variable overriding the worker-thread count. It never
/// changes results, only how fast they are produced.
const WORKERS_ENV: &str = "CAUSEX_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "causex", version, about = "Minimal causes and power indices for binary decisions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Minimal,
    QuasiMinimal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the minimal (or quasi-minimal) causes of a game or causal model.
    Enumerate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "minimal")]
        kind: FamilyArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact power indices.
    Index {
        file: PathBuf,
        /// An index kind, or `all`.
        #[arg(long, default_value = "all")]
        kind: String,
        /// `raw` (with the 1/2^(n-1) factor) or `per-cause`.
        #[arg(long, default_value = "raw")]
        scale: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Sampling estimates of responsibility, Holler-Packel, Deegan-Packel or Johnston.
    Estimate {
        file: PathBuf,
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Fixed sample count, overriding the bound from epsilon and delta.
        #[arg(long, conflicts_with = "exhaustive")]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Visit every coalition once (2^n samples) instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Randomized checks of the axioms characterizing an index.
    VerifyAxioms {
        /// e.g. `responsibility`, `deegan-packel`, `alternate-johnston`, `sampled-johnston`.
        #[arg(long)]
        index: String,
        /// Comma-separated axiom codes; defaults to the characterizing set.
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<String>,
        #[arg(long, default_value_t = 200)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Subset-sum reduction games with their expected cause counts.
    PartitionVectors {
        /// An explicit multiset, e.g. `1,1,2`; otherwise random multisets are drawn.
        #[arg(long, value_delimiter = ',')]
        values: Vec<u64>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 20)]
        max_value: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn configure_workers() -> Result<(), Failure> {
    let Ok(text) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let workers: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| Failure::Validation(format!("{WORKERS_ENV} must be a positive integer, got {text:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Failure::Internal(format!("cannot start {workers} workers: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| {
        configure_workers()?;
        report::run(&cli.command)
    });
    match outcome {
        Ok(Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Err(failure)) => {
            eprintln!("causex: {failure}");
            ExitCode::from(failure.exit_code())
        }
        Err(_) => {
            eprintln!("causex: internal invariant violated");
            ExitCode::from(4)
        }
    }
}
