mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "amocnf",
    version,
    about = "Build, verify and analyze CNF encodings of at-most-one and exactly-one"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Largest variable count for truth-table enumeration.
    #[arg(long, global = true, default_value_t = 24, value_parser = clap::value_parser!(u64).range(1..=63))]
    pub enumeration_cap: u64,
    /// Largest variable count for backtracking satisfiability checks.
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u64).range(1..))]
    pub search_cap: u64,
    /// Seed recorded in JSON reports.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl GlobalArgs {
    pub fn limits(&self) -> amocnf::Limits {
        amocnf::Limits {
            enumeration: self.enumeration_cap as usize,
            search: self.search_cap as usize,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated encoding as extended DIMACS.
    Generate(GenerateArgs),
    /// Check an encoding and print a JSON report (exit 1 when the check fails).
    Verify(VerifyArgs),
    /// Report Q-sets, regular form, stars and 2-CNF diagnostics.
    Analyze(AnalyzeArgs),
    /// Rewrite a prime p-encoding into regular form.
    Reduce(ReduceArgs),
    /// Tabulate lower bounds against constructed sizes.
    Bounds(BoundsArgs),
    /// Exhaustive search for a smallest formula without auxiliaries.
    Search(SearchArgs),
    /// Generate every construction over a range of n and compare with the bounds.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenerateArgs {
    /// One of pairwise-amo, prime-exone, sequential-amo, tree-amo, product-amo,
    /// exone-wrap, amo-wrap, nonpc-exone, partition-fixture.
    #[arg(long)]
    pub kind: String,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Block sizes a,b,c,d for partition-fixture.
    #[arg(long)]
    pub blocks: Option<String>,
    /// Inner construction for the wrappers.
    #[arg(long)]
    pub inner: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionArg {
    Amo,
    Eo,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Enc,
    P,
    InputPc,
    FullPc,
    Prime,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = FunctionArg::Auto)]
    pub function: FunctionArg,
    #[arg(long, value_enum, default_value_t = ModeArg::InputPc)]
    pub mode: ModeArg,
    pub file: PathBuf,
    /// Include the propagation trace behind a failure.
    #[arg(long)]
    pub trace: bool,
    /// Largest input count for the exhaustive input-level check.
    #[arg(long, default_value_t = 12)]
    pub max_inputs: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReduceArgs {
    pub file: PathBuf,
    /// Output DIMACS; the rule trace goes to the same path with `.trace` appended.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BoundsArgs {
    #[arg(long)]
    pub from: usize,
    #[arg(long)]
    pub to: usize,
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchFunctionArg {
    Amo,
    Eo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RequireArg {
    Enc,
    P,
    InputPc,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchArgs {
    #[arg(long, value_enum)]
    pub function: SearchFunctionArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = RequireArg::InputPc)]
    pub require: RequireArg,
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
    /// Allow budgets above 4, where a result without auxiliaries is not a
    /// minimality certificate.
    #[arg(long)]
    pub unsafe_no_aux: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 3)]
    pub from: usize,
    #[arg(long)]
    pub to: usize,
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
    #[arg(long)]
    pub json: bool,
    /// Also run the exhaustive input-level PC check (n ≤ 9).
    #[arg(long)]
    pub verify_pc: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Generate(a) => commands::generate(a, g),
        Command::Verify(a) => commands::verify(a, g),
        Command::Analyze(a) => commands::analyze(a, g),
        Command::Reduce(a) => commands::reduce(a, g),
        Command::Bounds(a) => commands::bounds(a, g),
        Command::Search(a) => commands::search(a, g),
        Command::Bench(a) => commands::bench(a, g),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
