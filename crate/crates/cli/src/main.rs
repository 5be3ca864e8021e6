//! `equlat`: calculators, demos and self-checks for the equivalence lattice.
//!
//! Report lines go to stdout prefixed with `# `, followed by the result in
//! the same text format the loaders read, so stdout can be fed back in.
//! With `--out FILE` the result goes to the file instead.
//!
//! Exit status: 0 on success, 1 when a check or verification fails, 2 on
//! bad input.

mod commands;
mod expr;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "equlat", version, about = "Lattice of equivalence relations on the naturals")]
pub struct Cli {
    /// Write the machine-readable result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand)]
pub enum Group {
    /// Explicit partitions of {0..n-1}.
    #[command(subcommand)]
    Partition(PartitionCmd),
    /// Automatic relations given by pair automata (file path or `corpus:NAME`).
    #[command(subcommand)]
    Automatic(AutomaticCmd),
    /// Relations given by decision procedures, written as expressions.
    #[command(subcommand)]
    Decider(DeciderCmd),
    /// Turing machines (file path or zoo name).
    #[command(subcommand)]
    Tm(TmCmd),
    /// Truncated singular families.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Self-checking demonstrations.
    #[command(subcommand)]
    Demo(DemoCmd),
    /// Run a property suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

#[derive(Subcommand)]
pub enum PartitionCmd {
    Meet { a: PathBuf, b: PathBuf },
    Join { a: PathBuf, b: PathBuf },
    /// Prints whether A refines B.
    Leq { a: PathBuf, b: PathBuf },
    /// Least-element complement.
    Complement { a: PathBuf },
    /// Exit 0 iff B is a complement of A.
    IsComplement { a: PathBuf, b: PathBuf },
    /// Atoms whose join is A.
    Atoms { a: PathBuf },
}

#[derive(Subcommand)]
pub enum AutomaticCmd {
    Decide { rel: String, m: u64, n: u64 },
    Meet { a: String, b: String },
    Join { a: String, b: String },
    /// Merge classes: groups of class indices like `0,2;1`.
    Coarsen { rel: String, groups: String },
    /// Reports format and each axiom separately; exit 0 iff all hold.
    Check { dfa: String },
    /// Least member of each class.
    Reps { rel: String },
    Minimize { dfa: String },
    /// Names available as `corpus:NAME`.
    Corpus,
}

#[derive(Subcommand)]
pub enum DeciderCmd {
    Decide { expr: String, m: u64, n: u64 },
    /// The induced partition on {0..n-1}.
    Restrict { expr: String, n: usize },
    /// Sampled axiom check on {0..bound-1}.
    Check {
        expr: String,
        #[arg(long, default_value_t = 64)]
        bound: u64,
    },
    /// Bounded search for an alternating chain from m to n.
    Join {
        a: String,
        b: String,
        m: u64,
        n: u64,
        #[arg(long)]
        universe: u64,
        #[arg(long)]
        chain: usize,
    },
}

#[derive(Subcommand)]
pub enum TmCmd {
    /// Lists the bundled machines.
    Zoo,
    /// Canonical text of a machine.
    Show { machine: String },
    Run {
        machine: String,
        #[arg(default_value = "")]
        input: String,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Halting through the join of the clocked relations.
    Probe {
        machine: String,
        #[arg(default_value = "")]
        input: String,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Natural-number code of a machine.
    Code { machine: String },
    /// Meet of the non-halting family up to K over machines (zoo by default).
    Nonhalt {
        #[arg(long)]
        k: u64,
        machines: Vec<String>,
    },
}

#[derive(Subcommand)]
pub enum FamilyCmd {
    /// Meet of the members 0..=k.
    Meet {
        /// `even`, `prime`, or `bitmask:FILE` (a string of 0s and 1s).
        #[arg(long)]
        pred: String,
        /// Comma-separated cuts; default 2,4,8,…
        #[arg(long, value_delimiter = ',')]
        cuts: Option<Vec<usize>>,
        #[arg(long)]
        k: usize,
    },
    Member {
        #[arg(long)]
        pred: String,
        #[arg(long, value_delimiter = ',')]
        cuts: Option<Vec<usize>>,
        #[arg(long)]
        i: usize,
    },
    /// Join of star atoms over a set.
    Atoms {
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
pub enum DemoCmd {
    JoinUndecidable {
        #[arg(long, default_value = "incrementer")]
        machine: String,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 50)]
        bound: u64,
    },
    AutomaticMeetGrowth {
        #[arg(long, default_value_t = 8)]
        k: u64,
    },
    FamilyMeet {
        #[arg(long, default_value = "even")]
        pred: String,
        #[arg(long, value_delimiter = ',')]
        cuts: Option<Vec<usize>>,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    NonhaltMeet {
        #[arg(long, default_value_t = 10)]
        k: u64,
    },
    Atoms {
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Lattice,
    Complements,
    Automatic,
    Tm,
    Constructions,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.group) {
        Ok(result) => match result.emit(cli.out.as_deref()) {
            Ok(()) if result.ok => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
