use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod files;
mod report;

#[derive(Parser)]
#[command(name = "universo", version, about = "Induced-universal graph constructions and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower bounds: the family table and the growth-constant solver.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Clique packings.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Almost-equitable coloring of one graph.
    Color {
        #[arg(long)]
        graph: PathBuf,
        /// Path decomposition (JSON); the interval heuristic when omitted.
        #[arg(long)]
        decomp: Option<PathBuf>,
        #[arg(long)]
        k: usize,
    },
    /// Build a host graph and verify it.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Check a stored host against a family.
    Verify {
        /// Host graph in graph6; embeddings are read from the sidecar.
        #[arg(long)]
        universal: PathBuf,
        #[arg(long)]
        family: PathBuf,
        /// Defaults to the host path with a `.json` extension.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Exhaustive searches for tiny instances.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Generate family directories.
    #[command(subcommand)]
    Family(FamilyCmd),
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Recompute the growth-constant and conflicting-family tables.
    Table {
        /// Print an aligned table instead of the JSON report.
        #[arg(long)]
        text: bool,
    },
    /// Solve `x^x / (x-1)^(x-1) = g`.
    Solve {
        #[arg(long)]
        g: f64,
    },
}

#[derive(Subcommand)]
enum DesignCmd {
    /// Best constructive packing of k-blocks on s points.
    Build {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
    },
    /// Exact packing number by branch and bound.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
struct Output {
    /// Write the host (graph6) here and its sidecar next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Host for all unions of cliques of size at most k on n vertices.
    CliqueUnion {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Block-design host for a family directory.
    Universal {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        k: usize,
        /// Deleted vertices per member.
        #[arg(long)]
        p: usize,
        /// Number of groups; chosen as for `sqrt` when omitted.
        #[arg(long)]
        s: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Block-design host with about 15/14·k·sqrt(t) groups.
    Sqrt {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    max_host: Option<usize>,
    #[arg(long)]
    max_seconds: Option<f64>,
    /// Overrides UNIVERSO_BUDGET_STATES.
    #[arg(long)]
    max_states: Option<u64>,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Smallest induced-universal host of a family.
    MinUniversal {
        #[arg(long)]
        family: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Smallest deletion set leaving an equitably k-colorable graph.
    MinDeletion {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Minimum hosts of the clique-union families G_1..G_j for j <= k.
    LowerBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    Tree,
    Caterpillar,
    /// Forests whose halves form an equitable 2-coloring (n must be even).
    BalancedForest,
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Random members with sidecars, written as `G0001.g6`, ...
    Random {
        #[arg(long, value_enum)]
        kind: RandomKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (name, outcome) = commands::run(cli.command);
    match outcome {
        Ok(commands::Printed::Report(report)) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(commands::Printed::Text(text, pass)) => {
            print!("{text}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let err = serde_json::json!({
                "report_version": report::REPORT_VERSION,
                "command": name,
                "error": format!("{e:#}"),
            });
            eprintln!("{err}");
            ExitCode::from(2)
        }
    }
}
