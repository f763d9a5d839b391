//! `fln`: batch front end for graded fuzzy logic with hedges.
//!
//! Exit codes: 0 pass, 1 violation or contradiction, 2 parse/input error,
//! 3 budget exhausted, 4 search-space guard exceeded.

mod commands;
mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "fln", version, about = "Graded fuzzy logic with truth-stressing and truth-depressing hedges")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Opts {
    /// Signature file (`mode`, `stressers`, `depressers`)
    #[arg(long, global = true)]
    pub sig: Option<PathBuf>,
    /// Theory file (`grade : formula` lines)
    #[arg(long, global = true)]
    pub theory: Option<PathBuf>,
    /// Hedge-model file
    #[arg(long, global = true)]
    pub hedges: Option<PathBuf>,
    /// Structure file
    #[arg(long, global = true)]
    pub structure: Option<PathBuf>,
    /// Goal formula
    #[arg(long, global = true)]
    pub goal: Option<String>,
    /// Granularity k of the chain Ł_k
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub chain: u32,
    /// Largest domain size enumerated
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_domain: u64,
    /// Widening rounds of the formula universe
    #[arg(long, global = true, default_value_t = 1)]
    pub depth: usize,
    /// Maximum number of grade raises during saturation
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Print formulas in primitive form
    #[arg(long, global = true)]
    pub no_sugar: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical form of a formula
    Parse {
        /// Formula text (alternative to --goal)
        formula: Option<String>,
    },
    /// Lower bound on the provability degree of the goal, with a proof
    Prove,
    /// Recompute the value of a proof
    CheckProof {
        /// Proof file
        proof: PathBuf,
    },
    /// Truth value of the goal in a structure
    Eval,
    /// Semantic consequence degree over enumerated structures
    SemDegree,
    /// Tautology degree over enumerated structures
    Tautology,
    /// Check hedge functions against shape, axioms and envelopes
    ValidateHedges,
    /// Search for a contradiction in the theory
    Consistency,
    /// Tabulate the hedge envelopes of a dual hedge model
    Boundaries,
}

/// A command outcome that is not plain success.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match commands::run(&cli, &mut out) {
        Ok(code) => code,
        Err(f) => {
            print!("{out}");
            out.clear();
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    print!("{out}");
    ExitCode::from(code)
}
