//! Command-line front end: builds D from a field and subset description (or a
//! named recipe) and reports PDS certificates, code data, blocking-set checks
//! and secret-sharing structure.

mod commands;
mod input;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mincodes::{Exec, QuadricKind};

use crate::commands::{CmdError, Outcome};

#[derive(Parser)]
#[command(
    name = "mincodes",
    version,
    about = "Minimal linear codes from partial difference sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify that D is an F_q^*-invariant partial difference set.
    Pds(Common),
    /// Weight distribution and minimality verdicts of C(M_D).
    Code(CodeArgs),
    /// Cutting vectorial blocking-set check.
    Blocking(BlockingArgs),
    /// Secret sharing based on the dual of C(M_D).
    Sss(SssArgs),
}

#[derive(Args, Clone)]
pub struct Common {
    /// Field spec as a JSON file path or inline JSON.
    #[arg(long)]
    pub field: Option<String>,
    /// Subset spec as a JSON file path or inline JSON.
    #[arg(long)]
    pub subset: Option<String>,
    /// Named instance; --field and --subset override its parts.
    #[arg(long)]
    pub recipe: Option<String>,
    /// Quadric kind for the example-3.3 recipe.
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Characteristic for the example-3.3 recipe.
    #[arg(long)]
    pub p: Option<u32>,
    /// Extension degree for the example-3.3 recipe.
    #[arg(long)]
    pub m: Option<u32>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args)]
pub struct CodeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated: cover,heng,snc,pds,latin,cyclotomic,all.
    #[arg(long, default_value = "all")]
    pub methods: String,
    /// Largest code size q^k the enumerating methods accept.
    #[arg(long)]
    pub guard_codewords: Option<u64>,
    /// Also write the generator matrix as text.
    #[arg(long)]
    pub generator: Option<PathBuf>,
}

#[derive(Args)]
pub struct BlockingArgs {
    #[command(flatten)]
    pub common: Common,
    /// Set under test: the complement of D (default) or D itself.
    #[arg(long, value_enum, default_value_t = Target::Dbar)]
    pub target: Target,
}

#[derive(Args)]
pub struct SssArgs {
    #[command(flatten)]
    pub common: Common,
    /// Dealer coordinate by discrete log.
    #[arg(long, conflicts_with = "x1")]
    pub x1_log: Option<u64>,
    /// Dealer coordinate: the first element of D or of its complement.
    #[arg(long, value_enum)]
    pub x1: Option<Side>,
    /// Access sets checked for secret recovery against a generator of the dual code.
    #[arg(long, default_value_t = 4)]
    pub spot_check: usize,
    /// Largest code size q^k the minimality check accepts.
    #[arg(long)]
    pub guard_codewords: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Hyperbolic,
    Elliptic,
}

impl From<KindArg> for QuadricKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Hyperbolic => QuadricKind::Hyperbolic,
            KindArg::Elliptic => QuadricKind::Elliptic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Dbar,
    D,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    #[value(name = "in-D")]
    InD,
    #[value(name = "in-Dbar")]
    InDbar,
}

fn exec_for(workers: Option<usize>) -> Result<Exec, CmdError> {
    match workers {
        Some(0) => Err(CmdError::Config("--workers must be positive".into())),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CmdError::Internal(e.to_string()))?;
            Ok(Exec::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Exec::Sequential),
        None => Ok(Exec::default()),
    }
}

fn run(cli: Cli) -> Result<Outcome, CmdError> {
    let common = match &cli.command {
        Command::Pds(c) => c,
        Command::Code(a) => &a.common,
        Command::Blocking(a) => &a.common,
        Command::Sss(a) => &a.common,
    };
    let exec = exec_for(common.workers)?;
    let outcome = match &cli.command {
        Command::Pds(c) => commands::pds(c, exec)?,
        Command::Code(a) => commands::code(a, exec)?,
        Command::Blocking(a) => commands::blocking(a, exec)?,
        Command::Sss(a) => commands::sss(a, exec)?,
    };
    let text = match common.format {
        Format::Json => {
            serde_json::to_string_pretty(&outcome.json)
                .map_err(|e| CmdError::Internal(e.to_string()))?
                + "\n"
        }
        Format::Table => outcome.table.clone(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CmdError::Config(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
