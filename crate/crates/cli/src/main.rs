//! `markgame`: generate lattices, play and solve marking games, check
//! marking schemes, and run the play service.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 infeasible or failed
//! validation, 3 node budget exhausted.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Node cap for exact solving when neither `--budget` nor `MARKGAME_BUDGET` is set.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Parser)]
#[command(name = "markgame", version, about = "Vertex-edge marking game toolkit")]
pub struct Cli {
    /// Write the JSON artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph JSON file; `-` or absent reads stdin.
    #[arg(long, short = 'g', default_value = "-")]
    pub graph: String,
}

#[derive(Debug, Args)]
pub struct BudgetArg {
    /// Node expansions per threshold.
    #[arg(long, env = "MARKGAME_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a lattice window or an Apollonian network as graph JSON.
    Gen {
        /// T, R, C, H, T-prime, apollonian, or D(X) for a centred X.
        family: String,
        #[arg(long)]
        rows: Option<u32>,
        #[arg(long)]
        cols: Option<u32>,
        /// Apollonian insertions.
        #[arg(long)]
        insertions: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Faces to centre for D(X): all-faces, gray-only, triangular-faces.
        #[arg(long)]
        centers: Option<String>,
    },
    /// Play one match.
    Play {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        alice: String,
        #[arg(long)]
        bob: String,
        /// Seed for the seeded strategies.
        #[arg(long)]
        seed: Option<u64>,
        /// Stop after this many rounds.
        #[arg(long)]
        rounds: Option<usize>,
    },
    /// Compute the game value exactly.
    Solve {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        budget: BudgetArg,
        /// Split the search across threads.
        #[arg(long)]
        parallel: bool,
        /// Evaluate every threshold up to the maximum degree.
        #[arg(long)]
        all_thresholds: bool,
        /// Print wall-clock time to stderr.
        #[arg(long)]
        timing: bool,
    },
    /// Check the marking scheme against the five hypotheses.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        /// Search for a scheme when the file carries none.
        #[arg(long)]
        derive: bool,
    },
    /// Bracket the game value from degree, orientation and subgraph bounds.
    Bounds {
        #[command(flatten)]
        graph: GraphArg,
        /// Subgraph JSON files, solved exactly for lower bounds.
        #[arg(long = "sub")]
        subgraphs: Vec<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Render the graph.
    Export {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Play many seeded matches and report the score histogram.
    Tourney {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        alice: String,
        #[arg(long)]
        bob: String,
        #[arg(long, default_value_t = 100)]
        games: u64,
        /// Game i uses seed `seed + i`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        rounds: Option<usize>,
    },
    /// Start the HTTP play service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Restrict CORS to this origin.
        #[arg(long)]
        origin: Option<String>,
    },
}

/// A failed run and its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Infeasible(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Infeasible(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Infeasible(m) | Failure::Budget(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("markgame: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
