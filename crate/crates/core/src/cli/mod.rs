//! The `hecke` command line: `verify`, `eval` and `table`.
//!
//! Exit codes: 0 success, 1 an identity failed, 2 bad input, 3 a
//! mathematical precondition was violated, 4 I/O failure.

mod eval;
mod suites;
mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::error::Error;
use crate::hecke::{HeckeCharacter, Mutation};
use crate::root_system::{CartanType, Coweight, Family, RootDatum};
use crate::spherical::Formula;

pub use suites::Suite;

/// Directory for `table` output when `--out-dir` is not given.
pub const OUTPUT_DIR_ENV: &str = "HECKE_OUTPUT_DIR";

pub const CHARACTER_NAMES: [&str; 4] = ["triv", "sign", "neg-long", "neg-short"];

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Exact Hecke-module actions, alternator formulas and identity checks")]
pub struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check identities over a grid of types, characters and monomials.
    Verify(VerifyArgs),
    /// Evaluate one formula.
    Eval(EvalArgs),
    /// Write a CSV/JSON table of formula values.
    Table(TableArgs),
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// Cartan types, e.g. `A2,B2`. Defaults to every type up to `--max-rank`.
    #[arg(long = "type", value_delimiter = ',')]
    types: Vec<String>,
    #[arg(long, default_value_t = 2)]
    max_rank: usize,
    /// Restrict to one character.
    #[arg(long)]
    character: Option<String>,
    #[arg(long, value_delimiter = ',')]
    suite: Vec<Suite>,
    /// Coordinates of test monomials range over `[-box, box]`.
    #[arg(long = "box", default_value_t = 2)]
    radius: i32,
    /// At most this many monomials per type.
    #[arg(long, default_value_t = 200)]
    cap: usize,
    /// Height bound for dominant coweights in the closed-form suites.
    #[arg(long, default_value_t = 3)]
    height: u32,
    /// Break one ingredient on purpose (negative control).
    #[arg(long, value_parser = parse_mutation)]
    mutate: Option<Mutation>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
}

#[derive(clap::Args, Debug)]
struct EvalArgs {
    #[arg(long = "type")]
    cartan: String,
    /// Defaults to the character a closed form belongs to, else `triv`.
    #[arg(long)]
    character: Option<String>,
    /// Comma-separated coordinates; defaults to zero.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, value_parser = parse_formula)]
    formula: Formula,
    /// One-based reduced word for `iwahori-image`, e.g. `1,2`.
    #[arg(long)]
    word: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
}

#[derive(clap::Args, Debug)]
struct TableArgs {
    #[arg(long = "type", value_delimiter = ',', required = true)]
    types: Vec<String>,
    /// Restrict to one character; defaults to all of them.
    #[arg(long)]
    character: Option<String>,
    #[arg(long, default_value_t = 3)]
    height: u32,
    /// Falls back to `$HECKE_OUTPUT_DIR`, then the current directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Base name of the written files.
    #[arg(long, default_value = "table")]
    name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Domain(Error),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
    #[error("{0} identity check(s) failed")]
    Failed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    fn io(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Io { context, source }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ParseType(_)
            | Error::ParseCoweight(_)
            | Error::InadmissibleType { .. }
            | Error::RankMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::Malformed(_) => CliError::Parse(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_formula(s: &str) -> Result<Formula, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_datum(s: &str) -> Result<RootDatum, CliError> {
    Ok(RootDatum::parse(s.trim())?)
}

fn parse_character(datum: &RootDatum, name: &str) -> Result<HeckeCharacter, CliError> {
    if !CHARACTER_NAMES.contains(&name) {
        return Err(CliError::Parse(format!(
            "unknown character {name:?}; expected one of {}",
            CHARACTER_NAMES.join(", ")
        )));
    }
    Ok(HeckeCharacter::by_name(&datum.roots, name)?)
}

fn parse_lambda(datum: &RootDatum, s: Option<&str>) -> Result<Coweight, CliError> {
    match s {
        None => Ok(Coweight::zero(datum.rank())),
        Some(s) => Ok(Coweight::parse_with_rank(s, datum.rank())?),
    }
}

/// Every admissible type of rank at most `max_rank`, ordered by rank and
/// then family.
pub fn types_up_to(max_rank: usize) -> Vec<CartanType> {
    let families = [Family::A, Family::B, Family::C, Family::D, Family::F, Family::G];
    (1..=max_rank).flat_map(|rank| families.into_iter().filter_map(move |f| CartanType::new(f, rank).ok())).collect()
}

/// Parse and run with the process arguments; returns the exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            if !matches!(e, CliError::Failed(_)) {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    }
}

/// Run a parsed command, writing the report to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::Parse(format!("--jobs: {e}")))?;
    let mut buf = Vec::new();
    let result = pool.install(|| match cli.command {
        Command::Verify(args) => suites::run_verify(&args, &mut buf),
        Command::Eval(args) => eval::run_eval(&args, &mut buf),
        Command::Table(args) => table::run_table(&args, &mut buf),
    });
    out.write_all(&buf).and_then(|()| out.flush()).map_err(CliError::io("writing output"))?;
    result
}
