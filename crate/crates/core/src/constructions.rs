//! Infinite meets and joins realized at a finite cut-off.
//!
//! A singular relation with an arbitrary class `I` is the meet of the small
//! singular relations `E_i` whose big class is `(I ∩ [0, f_i)) ∪ ↑f_i`, for
//! any strictly increasing cut sequence `f`. It is also the join of the
//! atoms `(min I, x)`. Both are computed here for finitely many terms.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::decider::is_prime;
use crate::partition::{join_atoms, Atom, Partition, PartitionError, SmallEq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("cut sequence is empty")]
    NoCuts,
    #[error("cut sequence is not strictly increasing at position {0}")]
    CutsNotIncreasing(usize),
    #[error("family index {index} beyond the {len} supplied cuts")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("predicate undefined at {0}")]
    PredicateUndefined(usize),
    #[error("a singular class needs at least two elements")]
    TooFewElements,
    #[error("invalid bitmask: {0}")]
    BadBitmask(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// Membership in the target class `I`. Only a prefix of ℕ needs to be
/// decided: a bitmask answers for its own length and no further.
#[derive(Clone)]
pub enum Predicate {
    Even,
    Prime,
    Bitmask(Vec<bool>),
    Custom {
        name: String,
        test: Arc<dyn Fn(usize) -> bool + Send + Sync>,
    },
}

impl Predicate {
    pub fn custom<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(usize) -> bool + Send + Sync + 'static,
    {
        Predicate::Custom {
            name: name.into(),
            test: Arc::new(f),
        }
    }

    /// `0`/`1` characters, whitespace ignored; position `x` answers for `x`.
    pub fn parse_bitmask(text: &str) -> Result<Self, ConstructionError> {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ConstructionError::BadBitmask(format!("unexpected `{other}`"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Predicate::Bitmask)
    }

    pub fn eval(&self, x: usize) -> Option<bool> {
        match self {
            Predicate::Even => Some(x % 2 == 0),
            Predicate::Prime => Some(is_prime(x as u64)),
            Predicate::Bitmask(bits) => bits.get(x).copied(),
            Predicate::Custom { test, .. } => Some(test(x)),
        }
    }

    /// Members of `I` below `bound`.
    pub fn members_below(&self, bound: usize) -> Result<Vec<usize>, ConstructionError> {
        let mut out = Vec::new();
        for x in 0..bound {
            if self.eval(x).ok_or(ConstructionError::PredicateUndefined(x))? {
                out.push(x);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Even => write!(f, "even"),
            Predicate::Prime => write!(f, "prime"),
            Predicate::Bitmask(bits) => {
                let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                write!(f, "bitmask({s})")
            }
            Predicate::Custom { name, .. } => write!(f, "{name}"),
        }
    }
}

/// A target class `I` and cuts `f_0 < f_1 < …`.
#[derive(Debug, Clone)]
pub struct SingularFamilySpec {
    predicate: Predicate,
    cuts: Vec<usize>,
}

impl SingularFamilySpec {
    pub fn new(predicate: Predicate, cuts: Vec<usize>) -> Result<Self, ConstructionError> {
        if cuts.is_empty() {
            return Err(ConstructionError::NoCuts);
        }
        if let Some(i) = (1..cuts.len()).find(|&i| cuts[i] <= cuts[i - 1]) {
            return Err(ConstructionError::CutsNotIncreasing(i));
        }
        Ok(SingularFamilySpec { predicate, cuts })
    }

    /// Cuts `f_i = 2^(i+1)` for `i = 0..=k`.
    pub fn with_default_cuts(predicate: Predicate, k: usize) -> Result<Self, ConstructionError> {
        let cuts = (0..=k)
            .map(|i| 1usize.checked_shl(i as u32 + 1).filter(|&c| c > 0))
            .collect::<Option<Vec<_>>>()
            .ok_or(ConstructionError::IndexOutOfRange { index: k, len: usize::BITS as usize - 1 })?;
        Self::new(predicate, cuts)
    }

    pub fn predicate(&self) -> &Predicate {
        &self.predicate
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn cut(&self, i: usize) -> Result<usize, ConstructionError> {
        self.cuts.get(i).copied().ok_or(ConstructionError::IndexOutOfRange {
            index: i,
            len: self.cuts.len(),
        })
    }
}

/// `E_i`: big class `(I ∩ [0, f_i)) ∪ ↑f_i`, threshold `f_i`.
pub fn family_member(spec: &SingularFamilySpec, i: usize) -> Result<SmallEq, ConstructionError> {
    let cut = spec.cut(i)?;
    let members = spec.predicate.members_below(cut)?;
    Ok(SmallEq::singular_with_tail(cut, &members)?)
}

/// `E_0 ∧ … ∧ E_k`.
pub fn truncated_family_meet(spec: &SingularFamilySpec, k: usize) -> Result<SmallEq, ConstructionError> {
    let mut acc = family_member(spec, 0)?;
    for i in 1..=k {
        acc = acc.meet(&family_member(spec, i)?);
    }
    Ok(acc)
}

/// The atoms `(min I, x)` for `x ∈ I ∖ {min I}`.
pub fn star_atoms(class: &[usize]) -> Result<Vec<Atom>, ConstructionError> {
    let mut sorted = class.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let (&least, rest) = sorted.split_first().ok_or(ConstructionError::TooFewElements)?;
    if rest.is_empty() {
        return Err(ConstructionError::TooFewElements);
    }
    Ok(rest
        .iter()
        .map(|&x| Atom::new(least, x).expect("distinct"))
        .collect())
}

/// Join of [`star_atoms`] on `{0..n-1}`: the singular partition with class `I`.
pub fn atoms_to_singular(class: &[usize], n: usize) -> Result<Partition, ConstructionError> {
    Ok(join_atoms(n, &star_atoms(class)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cuts_must_increase() {
        assert_eq!(
            SingularFamilySpec::new(Predicate::Even, vec![2, 2]).unwrap_err(),
            ConstructionError::CutsNotIncreasing(1)
        );
        assert_eq!(
            SingularFamilySpec::new(Predicate::Even, vec![]).unwrap_err(),
            ConstructionError::NoCuts
        );
        let d = SingularFamilySpec::with_default_cuts(Predicate::Even, 3).unwrap();
        assert_eq!(d.cuts(), &[2, 4, 8, 16]);
    }

    #[test]
    fn bitmask_is_partial() {
        let p = Predicate::parse_bitmask("10 1").unwrap();
        assert_eq!(p.eval(2), Some(true));
        assert_eq!(p.eval(3), None);
        let spec = SingularFamilySpec::new(p, vec![2, 5]).unwrap();
        assert!(family_member(&spec, 0).is_ok());
        assert_eq!(family_member(&spec, 1).unwrap_err(), ConstructionError::PredicateUndefined(3));
        assert!(Predicate::parse_bitmask("102").is_err());
    }

    #[test]
    fn star_needs_two_elements() {
        assert_eq!(star_atoms(&[3, 3]).unwrap_err(), ConstructionError::TooFewElements);
        let atoms = star_atoms(&[5, 1, 3]).unwrap();
        assert_eq!(atoms.iter().map(Atom::pair).collect::<Vec<_>>(), vec![(1, 3), (1, 5)]);
    }
}
