mod commands;
mod error;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zerosum_core::lab::Convention;
use zerosum_core::RandomModel;

/// Zero-sum subsequences via weighted graph pebbling, plus a threshold lab.
///
/// Exit codes: 0 ok, 2 usage or parse error, 3 negative result,
/// 4 flagged result, 5 budget exhausted.
#[derive(Debug, Parser)]
#[command(name = "zerosum", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct GlobalArgs {
    /// Group as prime powers, e.g. `3^2*5`, or `Z45`.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Seed for every randomized command (required there).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte Carlo trials per estimate.
    #[arg(long, global = true, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, global = true, value_parser = parse_model)]
    pub model: Option<RandomModel>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Search budget (expanded states) for solvers.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads for trials; default is all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn parse_model(s: &str) -> Result<RandomModel, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structure of a group: factors, invariants, lattice size.
    Info,
    /// Find a small-cross H-sum subsequence through the pebbling reduction.
    Extract {
        /// Sequence file, one element per line.
        file: PathBuf,
        /// Target subgroup levels, comma separated; default is the trivial subgroup.
        #[arg(long)]
        target: Option<String>,
    },
    /// Exact minimum-cross query.
    Oracle {
        /// Sequence file; omit with --all.
        file: Option<PathBuf>,
        #[arg(long)]
        target: Option<String>,
        /// Check every sequence of the given length.
        #[arg(long)]
        all: bool,
        /// Sequence length for --all; default is the group order.
        #[arg(long)]
        length: Option<usize>,
    },
    /// Decide root-solvability of a pebble configuration.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        /// Pebbles as `vertex:count,...`.
        #[arg(long)]
        config: String,
        /// Use the upward lattice planner toward the top vertex.
        #[arg(long)]
        upward: bool,
    },
    /// Estimate an event probability at each listed size.
    Sweep {
        #[command(flatten)]
        event: EventArgs,
        /// Sizes, e.g. `1,2,5` or `1..10`.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Smallest size where the event probability reaches 1/2.
    Halfpoint {
        #[command(flatten)]
        event: EventArgs,
        #[arg(long, default_value_t = 1)]
        start: usize,
        #[arg(long, default_value_t = 1 << 20)]
        max_t: usize,
    },
    /// Evaluate a closed-form threshold expression.
    Formula(FormulaArgs),
    /// Built-in checks at desk scale.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
    },
    /// Davenport constant: search, closed form and canonical construction.
    Davenport {
        #[arg(long, default_value_t = 64)]
        max_len: usize,
    },
}

#[derive(Debug, Args, Clone)]
pub struct FormulaArgs {
    #[arg(value_enum)]
    pub kind: FormulaKind,
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub n: Option<f64>,
    #[arg(long)]
    pub w: Option<f64>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Additive exponent constant.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    /// lg2-e, lg2-2 or natural.
    #[arg(long, default_value = "lg2-e")]
    pub convention: Convention,
}

#[derive(Debug, Args, Clone)]
pub struct GraphArgs {
    /// `path:3,5`, `complete:5`, `cube:3` or `lattice:3^2*5`; default is the
    /// lattice of --group.
    #[arg(long)]
    pub graph: Option<String>,
    /// Vertex index, `top` or `all`.
    #[arg(long)]
    pub root: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct EventArgs {
    #[arg(long, value_enum)]
    pub event: EventKind,
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Target levels for the extract event.
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EventKind {
    Good,
    Solvable,
    Extract,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormulaKind {
    /// Product-group bound; needs --primes and --k.
    F,
    /// Path threshold; needs --n and --w.
    Path,
    /// Single prime power; needs one --primes value and --k.
    PrimePower,
    /// Cube bounds; needs --d and --eps.
    Cube,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match cli.command {
        Command::Info => commands::info(g),
        Command::Extract { file, target } => commands::extract(g, &file, target.as_deref()),
        Command::Oracle {
            file,
            target,
            all,
            length,
        } => commands::oracle(g, file.as_deref(), target.as_deref(), all, length),
        Command::Solve {
            graph,
            config,
            upward,
        } => commands::solve(g, &graph, &config, upward),
        Command::Sweep { event, t } => commands::sweep(g, &event, &t),
        Command::Halfpoint {
            event,
            start,
            max_t,
        } => commands::halfpoint(g, &event, start, max_t),
        Command::Formula(args) => commands::formula(g, &args),
        Command::Verify { suite } => verify::run(g, suite),
        Command::Davenport { max_len } => commands::davenport(g, max_len),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
