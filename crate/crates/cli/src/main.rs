mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Homology and coalgebra structure of configuration spaces of graphs.
#[derive(Debug, Parser)]
#[command(name = "grapeshot", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Int,
    Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// Graph description in JSON.
    #[arg(long)]
    pub graph: PathBuf,
    /// Largest weight (number of points) to compute.
    #[arg(long, default_value_t = 4)]
    pub max_weight: usize,
    /// Largest homological degree; defaults to the number of vertex factors.
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = RingArg::Int)]
    pub ring: RingArg,
    /// Root override as `VERTEX:EDGE`.
    #[arg(long)]
    pub root: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads.
    #[arg(long, env = "GRAPESHOT_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers and torsion for every (degree, weight) in range.
    Homology(Common),
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated: coalgebra, sl, primitivity, formality, oracle, or all.
        #[arg(long, default_value = "all")]
        suites: String,
    },
    /// Primitive classes per slice, with the predicted spanning set.
    Primitives(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Homology(c) | Command::Primitives(c) => c,
        Command::Verify { common, .. } => common,
    };
    if let Some(n) = common.jobs {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} worker threads: {err}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
