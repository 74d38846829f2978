//! `sitalian`: generate Sierpiński graphs, build and verify Italian
//! dominating functions, and solve for exact domination numbers.
//!
//! Exit codes: 0 valid / proven, 1 invalid / unproven, 2 usage or input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sierpinski_italian::{Engine, Variant};

#[derive(Parser, Debug)]
#[command(name = "sitalian", version, about = "Italian domination on Sierpinski graphs S(K_n,t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate S(K_n,t) as graph JSON or DOT.
    Gen {
        n: u32,
        t: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build the optimal dominating function for S(K_n,t) and check it.
    Construct {
        n: u32,
        t: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::Perfect)]
        variant: VariantArg,
        /// Where to write the weight JSON (stdout if absent).
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Also write the graph JSON the weights are bound to.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Check a weight file against a graph file.
    Verify {
        graph: PathBuf,
        weights: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Italian)]
        variant: VariantArg,
    },
    /// Compute an exact domination number.
    Solve {
        #[command(flatten)]
        instance: commands::InstanceArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Italian)]
        variant: VariantArg,
        #[arg(long, value_enum)]
        engine: Option<EngineArg>,
        /// Branch-and-bound node budget.
        #[arg(long)]
        budget: Option<u64>,
        /// Largest vertex count for the exhaustive engine.
        #[arg(long)]
        exhaustive_limit: Option<usize>,
        /// Only search for functions of at most this weight.
        #[arg(long)]
        cutoff: Option<u64>,
        /// Seed branch-and-bound with the explicit construction (Sierpinski instances).
        #[arg(long)]
        seed_construction: bool,
    },
    /// Closed forms, constructions and solver optima over a grid of (n,t).
    Table {
        /// Inclusive range such as 3..5, or a single value.
        #[arg(long)]
        n: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        csv: bool,
        /// Node budget per solver run.
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
        /// Skip the solver above this many vertices.
        #[arg(long, default_value_t = 64)]
        solve_max_vertices: usize,
    },
    /// Convert a graph JSON file to DOT, optionally coloured by a weight file.
    Export {
        graph: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VariantArg {
    Italian,
    Perfect,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Italian => Variant::Italian,
            VariantArg::Perfect => Variant::Perfect,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum EngineArg {
    Exhaustive,
    PathDp,
    BranchBound,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Exhaustive => Engine::Exhaustive,
            EngineArg::PathDp => Engine::PathDp,
            EngineArg::BranchBound => Engine::BranchBound,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(verdict) => verdict.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
