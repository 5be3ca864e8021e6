//! The clocked one-step relation and its per-parity equivalence closures.
//!
//! `x → y` holds when `x = pack(n, c)` and either `y = pack(n + 1, step(c))`,
//! or `c` is halting and `y` is the sink. Every point has at most one
//! outgoing edge and clocks strictly increase along edges, so the graph is
//! a forest with the sink as one of its roots.
//!
//! Restricting to edges leaving an even (odd) clock gives `→even`
//! (`→odd`). Ordinary edges alternate parity, so a single-parity path has
//! at most one ordinary edge. The edge into the sink is kept under both
//! parities, which allows one more edge: `x → h → sink` with `h` halting.
//! The closure `≈parity` relates two points iff their single-parity paths
//! end at the same point.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use super::config::{step, Step};
use super::encoding::{pack, unpack, Point};
use super::machine::TmSpec;
use crate::decider::DeciderEq;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// The unique `→`-successor of `x`, if any.
pub fn successor(spec: &TmSpec, x: &BigUint) -> Option<BigUint> {
    edge(spec, x).map(|(_, y)| y)
}

/// Successor together with whether the edge is the sink edge (which
/// carries both parities).
fn edge(spec: &TmSpec, x: &BigUint) -> Option<(EdgeKind, BigUint)> {
    let Point::At { clock, config } = unpack(spec, x) else {
        return None;
    };
    match step(spec, &config) {
        Step::Halted => Some((EdgeKind::Final, BigUint::zero())),
        Step::Next(next) => {
            let clock1 = clock.checked_add(1)?;
            Some((EdgeKind::Ordinary(Parity::of(clock)), pack(spec, clock1, &next)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeKind {
    Ordinary(Parity),
    Final,
}

fn parity_successor(spec: &TmSpec, parity: Parity, x: &BigUint) -> Option<BigUint> {
    match edge(spec, x)? {
        (EdgeKind::Final, y) => Some(y),
        (EdgeKind::Ordinary(p), y) if p == parity => Some(y),
        _ => None,
    }
}

/// The clocked one-step relation as a predicate on naturals.
pub fn clocked_step(spec: &TmSpec) -> Arc<dyn Fn(&BigUint, &BigUint) -> bool + Send + Sync> {
    let spec = spec.clone();
    Arc::new(move |x, y| successor(&spec, x).as_ref() == Some(y))
}

/// Whether `x →parity y`.
pub fn parity_step(spec: &TmSpec, parity: Parity, x: &BigUint, y: &BigUint) -> bool {
    parity_successor(spec, parity, x).as_ref() == Some(y)
}

/// End of the single-parity path from `x`; the class key of `≈parity`.
pub fn parity_root(spec: &TmSpec, parity: Parity, x: &BigUint) -> BigUint {
    let mut cur = x.clone();
    while let Some(next) = parity_successor(spec, parity, &cur) {
        cur = next;
    }
    cur
}

pub fn approx(spec: &TmSpec, parity: Parity) -> DeciderEq<BigUint> {
    let spec = spec.clone();
    let name = match parity {
        Parity::Even => "even",
        Parity::Odd => "odd",
    };
    DeciderEq::from_key(
        move |x: &BigUint| parity_root(&spec, parity, x),
        format!("approx-{name}: decode, at most two steps, re-encode; linear in code length"),
    )
}

pub fn approx_even(spec: &TmSpec) -> DeciderEq<BigUint> {
    approx(spec, Parity::Even)
}

pub fn approx_odd(spec: &TmSpec) -> DeciderEq<BigUint> {
    approx(spec, Parity::Odd)
}
