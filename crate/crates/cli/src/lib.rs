//! Command-line front end: every analysis of `avw-core` as a scriptable command
//! with exact, deterministic JSON/CSV reports.

mod args;
mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use avw_core::algebra::AlgebraSpec;
use avw_core::analyzer::Direction;
use avw_core::catalog::ModuleSpec;
use clap::{Parser, Subcommand};
use thiserror::Error;

pub use args::{Range, SourceArgs, VermaArgs};
pub use report::{companion_path, Format, Report};

use args::spec_arg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    fn io(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }

    fn csv(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "avw", version, about = "Exact computations with weight modules of the affine-Virasoro algebra")]
pub struct Cli {
    /// write the report to this file instead of stdout
    #[arg(long, global = true)]
    pub emit: Option<PathBuf>,
    /// report format (default: csv for `.csv` paths, json otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// seed for randomized steps
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Antisymmetry, Jacobi identity and closure over a degree range, or one bracket
    Jacobi {
        #[arg(long, default_value = "L")]
        algebra: AlgebraSpec,
        #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
        range: Range,
        /// print the single bracket `x,y` instead of sweeping
        #[arg(long)]
        bracket: Option<String>,
    },
    /// Exhaustive module-axiom check on basis labels and generator degrees
    ModuleCheck {
        #[arg(long, value_parser = spec_arg)]
        module: ModuleSpec,
        /// generator degrees
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
        range: Range,
        /// basis label offsets
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
        labels: Range,
        /// use the shifted e-action `e_n v_i = v_{n+i}` (T2 modules only)
        #[arg(long)]
        nontrivial_e: bool,
    },
    /// Action matrices of a catalog module, a single action, or an sl₂ irrep
    Catalog {
        #[arg(long, value_parser = spec_arg)]
        module: Option<ModuleSpec>,
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        window: Range,
        /// act with this generator on one basis vector
        #[arg(long)]
        gen: Option<String>,
        /// offset of the basis vector acted on
        #[arg(long, allow_hyphen_values = true)]
        label: Option<i64>,
        /// fiber index of the basis vector acted on
        #[arg(long, default_value_t = 0)]
        fiber: u32,
        /// show the sl₂ irrep of this highest weight
        #[arg(long)]
        sl2: Option<i64>,
    },
    /// Simplicity verdict with its reason
    Simple {
        #[arg(long, value_parser = spec_arg)]
        module: ModuleSpec,
    },
    /// Composition structure of a reducible module
    Structure {
        #[arg(long, value_parser = spec_arg)]
        module: ModuleSpec,
    },
    /// Weight-space dimensions of a loop module over a window
    LoopDims {
        #[arg(long, value_parser = spec_arg)]
        module: ModuleSpec,
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
        window: Range,
    },
    /// Weight-space dimension table (CSV) and singular vectors (JSON) of a truncated highest-weight module
    Verma {
        #[command(flatten)]
        verma: VermaArgs,
    },
    /// Singular vectors of a highest-weight module, or extremal vectors of a windowed module
    Singular {
        #[command(flatten)]
        source: SourceArgs,
        /// largest depth searched for singular vectors (default N − 2)
        #[arg(long)]
        max_depth: Option<i64>,
        #[arg(long, default_value = "highest")]
        direction: Direction,
    },
    /// Kernel of d_i ⊕ d_{i+1} ⊕ e_i ⊕ f_i ⊕ h_i on V_k
    Injectivity {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
    },
    /// One-dimensional submodules visible in the window
    Witness {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Identify windowed data with a catalog module
    Match {
        #[command(flatten)]
        source: SourceArgs,
        /// apply a random change of basis (from --seed) before matching
        #[arg(long)]
        scramble: bool,
    },
    /// Weight labels (d₀, h₀) occurring in the window
    Support {
        #[command(flatten)]
        source: SourceArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Jacobi { .. } => "jacobi",
            Command::ModuleCheck { .. } => "module-check",
            Command::Catalog { .. } => "catalog",
            Command::Simple { .. } => "simple",
            Command::Structure { .. } => "structure",
            Command::LoopDims { .. } => "loop-dims",
            Command::Verma { .. } => "verma",
            Command::Singular { .. } => "singular",
            Command::Injectivity { .. } => "injectivity",
            Command::Witness { .. } => "witness",
            Command::Match { .. } => "match",
            Command::Support { .. } => "support",
        }
    }
}

pub const COMMANDS: [&str; 12] = [
    "jacobi",
    "module-check",
    "catalog",
    "simple",
    "structure",
    "loop-dims",
    "verma",
    "singular",
    "injectivity",
    "witness",
    "match",
    "support",
];

/// Runs one command line and returns its exit code. Reports go to `out`
/// unless `--emit` is given; diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match commands::execute(&cli).and_then(|r| r.write(cli.format, cli.emit.as_deref(), out).map(|_| r.exit_code)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "avw {}: {e}", cli.command.name());
            EXIT_USAGE
        }
    }
}
