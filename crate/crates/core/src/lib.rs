//! Computable fragments of the lattice of equivalence relations on ℕ.
//!
//! - [`partition`]: explicit equivalences on `{0..n-1}` and small
//!   equivalences with a cofinal tail class.
//! - [`automatic`]: equivalences whose pair language `m□n` is regular.
//! - [`decider`]: equivalences given by total decision procedures.
//! - [`tm`]: a Turing machine interpreter and the clocked one-step relations.
//! - [`constructions`]: truncated infinite meets and joins.
//! - [`verify`]: self-checking property suites used by the CLI.

pub mod automatic;
pub mod constructions;
pub mod decider;
pub mod partition;
pub mod text;
pub mod tm;
pub mod verify;

pub use partition::{Atom, Partition, PartitionError, SmallEq};
pub use text::ParseError;
