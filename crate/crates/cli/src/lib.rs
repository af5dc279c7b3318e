//! Scenario files, report encoding and the `tolkit` commands.

pub mod codec;
pub mod commands;
pub mod error;
pub mod scenario;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{Laws, Output, RunOptions};
pub use error::{CliError, CliResult};
pub use scenario::{Scenario, ScenarioFile};

#[derive(Debug, Parser)]
#[command(name = "tolkit", version, about = "Lattice-based model transformation toolkit")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Enumeration budget for systems and lattice law checks.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Override the scenario's grid denominator.
    #[arg(long, global = true)]
    pub grid: Option<u32>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run law checks and report witnesses for failures.
    Check {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        laws: Laws,
    },
    /// Carry a named model to another formalism through the properties domain.
    Transform {
        scenario: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Skip checking both connections first.
        #[arg(long)]
        no_verify: bool,
    },
    /// Run the scenario's pipeline and print a trace.
    Pipeline { scenario: PathBuf },
    /// Emit the Hasse diagram of a named lattice as DOT.
    Hasse {
        scenario: PathBuf,
        #[arg(long)]
        lattice: String,
    },
    /// Two-terminal reliability range over the systems the properties describe.
    Bound {
        scenario: PathBuf,
        #[arg(long)]
        source: String,
        #[arg(long)]
        sink: String,
    },
    /// Meet every model's concretization and report conflicts.
    Consistency { scenario: PathBuf },
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let opts = RunOptions {
        budget: cli.budget,
        timing: cli.timing,
    };
    let load = |path: &PathBuf| Scenario::load(path, cli.grid);
    match &cli.command {
        Command::Check { scenario, laws } => commands::check(&load(scenario)?, *laws, &opts),
        Command::Transform {
            scenario,
            from,
            to,
            no_verify,
        } => commands::transform_cmd(&load(scenario)?, from, to, *no_verify, &opts),
        Command::Pipeline { scenario } => commands::pipeline(&load(scenario)?, &opts),
        Command::Hasse { scenario, lattice } => commands::hasse(&load(scenario)?, lattice),
        Command::Bound { scenario, source, sink } => commands::bound(&load(scenario)?, source, sink, &opts),
        Command::Consistency { scenario } => commands::consistency(&load(scenario)?),
    }
}
