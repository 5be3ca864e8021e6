//! Natural-number codes for configurations and clocked points.
//!
//! A configuration is written as a word over `g + q` digits: tape symbol `i`
//! is digit `i + 1`, state `j` is digit `g + 1 + j`, and the state digit sits
//! immediately before the head cell. The word is read in bijective base
//! `g + q`, so every natural number denotes exactly one word. Words that
//! are not well-formed configurations, or that carry redundant trailing
//! blanks, are invalid codes.
//!
//! A clocked point `(n, c)` is coded as `cantor(n, code(c)) + 1`; code 0 is
//! the sink.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::config::Configuration;
use super::machine::TmSpec;

/// A decoded natural under the clocked coding of one machine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Sink,
    At { clock: u64, config: Configuration },
    /// Not the code of any point; such codes form singleton classes.
    Invalid,
}

fn base(spec: &TmSpec) -> u32 {
    (spec.symbol_count() + spec.state_count()) as u32
}

fn digits(spec: &TmSpec, c: &Configuration) -> Vec<u32> {
    let g = spec.symbol_count() as u32;
    let mut out = Vec::with_capacity(c.tape().len() + 1);
    for (i, &s) in c.tape().iter().enumerate() {
        if i == c.head() {
            out.push(g + 1 + c.state() as u32);
        }
        out.push(s as u32 + 1);
    }
    out
}

/// Bijective base-`b` value of a digit word (digits in `1..=b`).
pub(crate) fn bijective_value(digits: &[u32], b: u32) -> BigUint {
    if b > 256 {
        return digits.iter().fold(BigUint::zero(), |n, &d| n * b + d);
    }
    // Rewrite as an ordinary base-b numeral: a digit equal to b becomes 0
    // with a carry into the next place.
    let mut le: Vec<u8> = Vec::with_capacity(digits.len() + 1);
    let mut carry = 0;
    for &d in digits.iter().rev() {
        let v = d + carry;
        carry = v / b;
        le.push((v % b) as u8);
    }
    if carry > 0 {
        le.push(carry as u8);
    }
    BigUint::from_radix_le(&le, b).expect("digits below the radix")
}

pub(crate) fn bijective_digits(n: &BigUint, b: u32) -> Vec<u32> {
    if b > 256 {
        let mut n = n.clone();
        let mut out = Vec::new();
        while !n.is_zero() {
            let r = (&n % b).to_u32().expect("below base");
            let d = if r == 0 { b } else { r };
            n = (n - d) / b;
            out.push(d);
        }
        out.reverse();
        return out;
    }
    if n.is_zero() {
        return Vec::new();
    }
    // Ordinary digits, then borrow to eliminate zeros.
    let mut le: Vec<i64> = n.to_radix_le(b).into_iter().map(i64::from).collect();
    for i in 0..le.len() {
        if le[i] <= 0 && i + 1 < le.len() {
            le[i] += b as i64;
            le[i + 1] -= 1;
        }
    }
    while le.last() == Some(&0) {
        le.pop();
    }
    le.into_iter().rev().map(|d| d as u32).collect()
}

pub fn config_code(spec: &TmSpec, c: &Configuration) -> BigUint {
    bijective_value(&digits(spec, c), base(spec))
}

/// Inverse of [`config_code`]; `None` for codes of malformed or
/// non-canonical words.
pub fn decode_config(spec: &TmSpec, code: &BigUint) -> Option<Configuration> {
    let g = spec.symbol_count() as u32;
    let ds = bijective_digits(code, base(spec));
    let mut state = None;
    let mut tape = Vec::with_capacity(ds.len());
    for d in ds {
        if d > g {
            if state.is_some() {
                return None;
            }
            state = Some(((d - g - 1) as usize, tape.len()));
        } else {
            tape.push((d - 1) as usize);
        }
    }
    let (state, head) = state?;
    let c = Configuration::normalized(state, head, tape.clone());
    (c.tape() == tape.as_slice()).then_some(c)
}

pub fn cantor_pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

pub fn cantor_unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = z - t;
    let a = w - &b;
    (a, b)
}

pub fn pack(spec: &TmSpec, clock: u64, c: &Configuration) -> BigUint {
    cantor_pair(&BigUint::from(clock), &config_code(spec, c)) + BigUint::one()
}

/// Decodes a natural; clocks beyond `u64` are treated as invalid.
pub fn unpack(spec: &TmSpec, x: &BigUint) -> Point {
    if x.is_zero() {
        return Point::Sink;
    }
    let (clock, code) = cantor_unpair(&(x - 1u32));
    match (clock.to_u64(), decode_config(spec, &code)) {
        (Some(clock), Some(config)) => Point::At { clock, config },
        _ => Point::Invalid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slow_digits(n: &BigUint, b: u32) -> Vec<u32> {
        let mut n = n.clone();
        let mut out = Vec::new();
        while !n.is_zero() {
            let r = (&n % b).to_u32().unwrap();
            let d = if r == 0 { b } else { r };
            n = (n - d) / b;
            out.push(d);
        }
        out.reverse();
        out
    }

    #[test]
    fn bijective_fast_path_matches_division() {
        for b in [2u32, 3, 7, 25, 256] {
            for x in (0u64..2000).chain([u64::MAX, u64::MAX - 1, 1 << 40]) {
                let n = BigUint::from(x);
                let ds = bijective_digits(&n, b);
                assert_eq!(ds, slow_digits(&n, b), "b={b} x={x}");
                assert!(ds.iter().all(|&d| (1..=b).contains(&d)));
                assert_eq!(bijective_value(&ds, b), n);
            }
        }
    }

    #[test]
    fn cantor_round_trip() {
        for a in 0u32..40 {
            for b in 0u32..40 {
                let z = cantor_pair(&a.into(), &b.into());
                assert_eq!(cantor_unpair(&z), (a.into(), b.into()));
            }
        }
        for z in 0u32..2000 {
            let (a, b) = cantor_unpair(&z.into());
            assert_eq!(cantor_pair(&a, &b), BigUint::from(z));
        }
    }
}
