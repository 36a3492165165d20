//! `anchain`: command-line front end.
//!
//! Exit codes: 0 ran and the system is solvable, 3 ran and it is unsolvable,
//! 1 usage or input error, 2 decision paths disagree.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_SOLVABLE: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DISAGREEMENT: u8 = 2;
pub const EXIT_UNSOLVABLE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "anchain",
    version,
    about = "Span-membership checks for PGL(m) obstruction classes on A_n degenerations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide one configuration with every available path.
    Check(CheckArgs),
    /// Sweep a parameter grid and compare all decision paths.
    Scan(ScanArgs),
    /// Print the dual graph of the resolution in DOT.
    Graph(GraphArgs),
    /// Smith normal form of a JSON matrix.
    Snf(SnfArgs),
    /// Solve A x = c over the integers, or modulo --mod.
    Solve(SolveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fiber {
    Irreducible,
    Reducible,
}

impl From<Fiber> for anchain_core::FiberType {
    fn from(f: Fiber) -> Self {
        match f {
            Fiber::Irreducible => anchain_core::FiberType::Irreducible,
            Fiber::Reducible => anchain_core::FiberType::Reducible,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FiberSet {
    Both,
    Irreducible,
    Reducible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum CheckFormat {
    #[default]
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum ScanFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    t: i64,
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    #[arg(long, value_enum)]
    fiber: Fiber,
    #[arg(long, value_enum, default_value_t)]
    format: CheckFormat,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, allow_negative_numbers = true)]
    n_min: i64,
    #[arg(long, allow_negative_numbers = true)]
    n_max: i64,
    #[arg(long, allow_negative_numbers = true)]
    m_min: i64,
    #[arg(long, allow_negative_numbers = true)]
    m_max: i64,
    #[arg(long, value_enum, default_value = "both")]
    fibers: FiberSet,
    #[arg(long, default_value_t = anchain_core::DEFAULT_ORACLE_CAP)]
    oracle_cap: u64,
    #[arg(long, value_enum, default_value_t)]
    format: ScanFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    t: i64,
    #[arg(long, value_enum)]
    fiber: Fiber,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SnfArgs {
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    vector: PathBuf,
    /// Modulus; accepts integers wider than 64 bits.
    #[arg(long = "mod", allow_negative_numbers = true)]
    modulus: Option<String>,
}

/// A failure that maps to an exit code and a message on stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Check(args) => commands::check(args),
        Command::Scan(args) => commands::scan(args),
        Command::Graph(args) => commands::graph(args),
        Command::Snf(args) => commands::snf(args),
        Command::Solve(args) => commands::solve(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
