//! Bounded shadow of the join `≈even ∨ ≈odd`.
//!
//! A computation from `c` halts iff `pack(0, c)` and the sink are related
//! by the join. The join itself is undecidable; the probe searches for a
//! chain inside the forward orbit of `pack(0, c)` under `→`, truncated
//! after `step_bound` steps, with at most `2 · step_bound + 2` links.

use num_bigint::BigUint;
use num_traits::Zero;

use super::clocked::{approx_even, approx_odd, successor};
use super::config::Configuration;
use super::encoding::{pack, unpack, Point};
use super::machine::TmSpec;
use super::TmError;
use crate::decider::{bounded_join_in, JoinChain, JoinSearch};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeResult {
    /// Halts after `steps` steps; `chain` links `pack(0, init)` to the sink,
    /// alternating between `≈even` and `≈odd`.
    HaltsInSteps { steps: u64, chain: JoinChain<BigUint> },
    NoHaltWithinBound,
}

impl ProbeResult {
    pub fn steps(&self) -> Option<u64> {
        match self {
            ProbeResult::HaltsInSteps { steps, .. } => Some(*steps),
            ProbeResult::NoHaltWithinBound => None,
        }
    }
}

pub fn chain_bound(step_bound: u64) -> usize {
    (2 * step_bound + 2) as usize
}

/// `pack(0, c), succ(pack(0, c)), …` for at most `step_bound` steps,
/// followed by the sink.
pub fn probe_universe(spec: &TmSpec, start: &Configuration, step_bound: u64) -> Vec<BigUint> {
    let mut points = vec![pack(spec, 0, start)];
    for _ in 0..=step_bound {
        match successor(spec, points.last().expect("non-empty")) {
            Some(next) if !next.is_zero() => points.push(next),
            _ => break,
        }
    }
    points.truncate(step_bound as usize + 1);
    points.push(BigUint::zero());
    points
}

pub fn halting_probe(spec: &TmSpec, input: &str, step_bound: u64) -> Result<ProbeResult, TmError> {
    let start = Configuration::initial(spec, input)?;
    let universe = probe_universe(spec, &start, step_bound);
    let (even, odd) = (approx_even(spec), approx_odd(spec));
    let from = pack(spec, 0, &start);
    let search = bounded_join_in(&even, &odd, &from, &BigUint::zero(), &universe, chain_bound(step_bound));
    let JoinSearch::RelatedWitness(chain) = search else {
        return Ok(ProbeResult::NoHaltWithinBound);
    };
    assert!(chain.verify(&even, &odd), "join chains are built from decided links");
    // The point before the sink is either the halting point or its
    // predecessor (the sink edge is shared by both parities).
    let last = &chain.points[chain.points.len() - 2];
    let Point::At { clock, config } = unpack(spec, last) else {
        unreachable!("universe points other than the sink are valid");
    };
    let steps = if config.is_halting(spec) { clock } else { clock + 1 };
    Ok(if steps <= step_bound {
        ProbeResult::HaltsInSteps { steps, chain }
    } else {
        ProbeResult::NoHaltWithinBound
    })
}
