//! Turing machines, their clocked one-step relations and the non-halting
//! family.

mod clocked;
mod config;
mod encoding;
mod machine;
mod nonhalt;
mod probe;
pub mod zoo;

use thiserror::Error;

use crate::text::ParseError;

pub use clocked::{
    approx, approx_even, approx_odd, clocked_step, parity_root, parity_step, successor, Parity,
};
pub use config::{run, run_from, step, trajectory, Configuration, RunOutcome, Step};
pub use encoding::{cantor_pair, cantor_unpair, config_code, decode_config, pack, unpack, Point};
pub use machine::{Move, Rule, TmSpec};
pub use nonhalt::{decode_machine, halts_within, machine_code, nonhalt_eq, nonhalt_family_meet};
pub use probe::{chain_bound, halting_probe, probe_universe, ProbeResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TmError {
    #[error("symbol `{0}` is not in the machine's alphabet")]
    UnknownSymbol(char),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
