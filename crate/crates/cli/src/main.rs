//! `logres`: analyze plane arrangements from the command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 an
//! internal invariant was violated.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use logres_core::restriction::MapKind;

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "logres",
    version,
    about = "Logarithmic derivations of plane arrangements and their restriction maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// Input document (JSON); `-` reads standard input.
    #[arg(value_name = "FILE", conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// Use a built-in arrangement instead of a file.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    /// Print the canonical JSON report instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full analysis: every cokernel at every plane, freeness, presentation, checks.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Only show this plane (index or displayed form, e.g. "x - z").
        #[arg(long, value_name = "K")]
        hyperplane: Option<String>,
        /// Degree cap for stabilization and presentations (default 2|A|+4).
        #[arg(long, value_name = "N")]
        cap: Option<u32>,
        /// Skip the minimal free presentation.
        #[arg(long)]
        skip_presentation: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Characteristic polynomial and its reduction.
    Charpoly {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Graded cokernel of one restriction map.
    Coker {
        #[command(flatten)]
        source: Source,
        /// rho, pi or rho2.
        #[arg(long, value_name = "MAP")]
        map: MapKind,
        /// Plane to restrict to (index or displayed form); all planes if absent.
        #[arg(long, value_name = "K")]
        hyperplane: Option<String>,
        #[arg(long, value_name = "N")]
        cap: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Freeness verdict, with an explicit basis when free.
    Freeness {
        #[command(flatten)]
        source: Source,
        /// Do not search for a Saito basis.
        #[arg(long)]
        no_basis: bool,
        #[arg(long, value_name = "N")]
        cap: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Degrees of minimal generators and relations of D(A).
    Presentation {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "N")]
        cap: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Check every identity and inequality, plus known values. With no
    /// target, checks the whole built-in registry.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Random corpus SEED,COUNT[,MAX_PLANES[,BOUND[,P]]] (defaults 8, 3, rationals).
        #[arg(long, value_name = "SPEC", conflicts_with_all = ["file", "builtin"])]
        corpus: Option<String>,
        /// Require a named quantity to take a value, e.g. `rho[z]=2`.
        #[arg(long = "expect", value_name = "KEY=VALUE")]
        expect: Vec<String>,
        #[arg(long, value_name = "N")]
        cap: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Print an arrangement in the input format.
    Export {
        #[command(flatten)]
        source: Source,
    },
    /// Names of the built-in arrangements.
    ListBuiltins {
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
