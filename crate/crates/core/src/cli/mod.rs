//! Command-line interface.
//!
//! Every command is deterministic. Output goes to `--out`, or to
//! `$GABIDULIN_HULL_OUT_DIR/<command>.<ext>` when that variable is set, or
//! to stdout. Exit codes: 0 success, 1 failed verification, 2 usage or
//! configuration error.

mod commands;
mod config;
mod render;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gabidulin::DualConvention;

pub use config::{merge_config, parse_config};

pub const OUT_DIR_ENV: &str = "GABIDULIN_HULL_OUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "gabidulin-hull",
    version,
    about = "Self-dual bases, Gabidulin codes and their e-Galois hulls",
    args_override_self = true
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Refuse to run any randomized code path. All commands are
    /// deterministic, so this only documents the guarantee.
    #[arg(long, global = true)]
    pub seedless: bool,
    /// key = value file whose entries act as default flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a self-dual basis by congruence-reducing a Gram matrix.
    SelfdualBasis(FieldArgs),
    /// Hull dimensions: closed form against the rank oracle.
    Hull(HullArgs),
    /// Audit the hull formula over all small admissible fields.
    VerifySweep(SweepArgs),
    /// Entanglement-assisted quantum code parameters.
    EaqeccTable(TableArgs),
    /// Generator of the e-Galois dual, checked against the kernel route.
    DualGen(DualGenArgs),
    /// LCD / self-orthogonal / self-dual classification with G·Gᵀ tests.
    Classify(HullArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SelfdualBasis(_) => "selfdual-basis",
            Command::Hull(_) => "hull",
            Command::VerifySweep(_) => "verify-sweep",
            Command::EaqeccTable(_) => "eaqecc-table",
            Command::DualGen(_) => "dual-gen",
            Command::Classify(_) => "classify",
        }
    }
}

pub const SUBCOMMANDS: [&str; 6] = [
    "selfdual-basis",
    "hull",
    "verify-sweep",
    "eaqecc-table",
    "dual-gen",
    "classify",
];

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Base field GF(q) with q = p^h.
    #[arg(long, default_value_t = 1)]
    pub h: usize,
    /// Extension degree: the code alphabet is GF(q^m).
    #[arg(long)]
    pub m: usize,
    /// Irreducible polynomial of degree h·m over GF(p), e.g. x^4+x+1 or
    /// [1,1,0,0,1]; the least irreducible one by default.
    #[arg(long)]
    pub modulus: Option<String>,
    /// Basis elements separated by ';' (polynomials in x or w), or a JSON
    /// list of coefficient lists.
    #[arg(long)]
    pub basis: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct HullArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Dimensions, e.g. 2, 1..3 or 1,3 (default: 1..m-1).
    #[arg(long)]
    pub k: Option<String>,
    /// Galois exponents, e.g. 0..3 (default: 0..m-1).
    #[arg(long)]
    pub e: Option<String>,
    #[arg(long, default_value_t = DualConvention::Theorem)]
    pub dual_convention: DualConvention,
    /// Include an explicit hull basis in each report.
    #[arg(long)]
    pub with_basis: bool,
}

#[derive(Args, Debug, Clone)]
pub struct DualGenArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub e: usize,
    #[arg(long, default_value_t = DualConvention::Theorem)]
    pub dual_convention: DualConvention,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Largest field order q^m included.
    #[arg(long, default_value_t = crate::sweep::DEFAULT_MAX_FIELD_ORDER)]
    pub max_field_order: u128,
    /// Largest number of minors enumerated per MDS check.
    #[arg(long, default_value_t = crate::gabidulin::DEFAULT_MINOR_BUDGET)]
    pub max_minors: u128,
    /// Restrict to these base field sizes, e.g. 2,3,4.
    #[arg(long)]
    pub q: Option<String>,
    /// Restrict m, e.g. 2..10.
    #[arg(long)]
    pub m: Option<String>,
    /// Skip the all-minors MDS checks.
    #[arg(long)]
    pub no_mds: bool,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    /// The four reference families over GF(2^100) and GF(3^67).
    #[arg(long)]
    pub paper_table1: bool,
    /// A family q,m,e,k-range such as 2,100,2,21..98; repeatable.
    #[arg(long)]
    pub row: Vec<String>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub e: Option<usize>,
    /// Dimension or range of dimensions.
    #[arg(long)]
    pub k: Option<String>,
}

/// What a command produced, before formatting decides how to show it.
pub(crate) struct Outcome {
    pub text: String,
    pub json: String,
    pub csv: Option<String>,
    /// A summary for stderr when stdout carries JSON or CSV.
    pub note: Option<String>,
    pub verified: bool,
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInvariantViolation(_) | Error::FactorizationFailed(_) => {
                CliError::Failure(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

/// Entry point shared by the binary and the tests.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let raw: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let merged = match merge_config(&raw) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(&merged) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let outcome = match &cli.command {
        Command::SelfdualBasis(a) => commands::selfdual_basis(a)?,
        Command::Hull(a) => commands::hull(a)?,
        Command::Classify(a) => commands::classify(a)?,
        Command::DualGen(a) => commands::dual_gen(a)?,
        Command::VerifySweep(a) => commands::verify_sweep(a)?,
        Command::EaqeccTable(a) => commands::eaqecc_table(a)?,
    };
    let body = match cli.format {
        Format::Text => outcome.text,
        Format::Json => outcome.json,
        Format::Csv => outcome.csv.ok_or_else(|| {
            CliError::Usage(format!(
                "csv output is not available for {}",
                cli.command.name()
            ))
        })?,
    };
    let target = cli.out.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(|dir| {
            PathBuf::from(dir).join(format!("{}.{}", cli.command.name(), cli.format.extension()))
        })
    });
    match target {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, &body)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{body}"),
    }
    if let Some(note) = outcome.note.filter(|_| cli.format != Format::Text) {
        eprint!("{note}");
    }
    Ok(outcome.verified)
}
