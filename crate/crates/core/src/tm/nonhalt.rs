//! The family `E_n`: machines not halting within `n` steps on empty input
//! form one class, everything else is a singleton.
//!
//! Machines are coded by their canonical text read as a bijective base-256
//! numeral over its bytes. Naturals that do not decode to canonical text
//! are singletons.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::config::run;
use super::encoding::{bijective_digits, bijective_value};
use super::machine::TmSpec;
use crate::decider::DeciderEq;
use crate::partition::{Partition, PartitionError};

pub fn machine_code(spec: &TmSpec) -> BigUint {
    let digits: Vec<u32> = spec.to_string().bytes().map(|b| b as u32 + 1).collect();
    bijective_value(&digits, 256)
}

pub fn decode_machine(code: &BigUint) -> Option<TmSpec> {
    let bytes: Vec<u8> = bijective_digits(code, 256).into_iter().map(|d| (d - 1) as u8).collect();
    let text = String::from_utf8(bytes).ok()?;
    let spec = TmSpec::parse(&text).ok()?;
    (spec.to_string() == text).then_some(spec)
}

pub fn halts_within(spec: &TmSpec, n: u64) -> bool {
    run(spec, "", n).expect("empty input").halt_step().is_some()
}

pub fn nonhalt_eq(n: u64) -> DeciderEq<BigUint> {
    DeciderEq::from_key(
        move |x: &BigUint| match decode_machine(x) {
            Some(m) if !halts_within(&m, n) => BigUint::zero(),
            _ => x + BigUint::one(),
        },
        format!("nonhalt-{n}: decode then simulate at most {n} steps"),
    )
}

/// `E_1 ∧ … ∧ E_k` restricted to `machines`, indexed by position.
pub fn nonhalt_family_meet(k: u64, machines: &[TmSpec]) -> Result<Partition, PartitionError> {
    let codes: Vec<BigUint> = machines.iter().map(machine_code).collect();
    let mut acc = Partition::top(codes.len())?;
    for n in 1..=k {
        acc = acc.meet(&nonhalt_eq(n).restrict_to(&codes)?)?;
    }
    Ok(acc)
}
