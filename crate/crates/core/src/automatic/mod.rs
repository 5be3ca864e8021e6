//! Automatic equivalence relations.
//!
//! An equivalence `~` on ℕ is automatic when the language
//! `{ binrep(m) □ binrep(n) : m ~ n }` is regular. We keep a minimal
//! one-way DFA over `{0, 1, □}` for it, with `binrep(0) = "0"` and no
//! leading zeros.
//!
//! Reading `binrep(m) □` from the start lands in a state whose remaining
//! language is exactly the class of `m`, so an automatic equivalence has
//! at most as many classes as its DFA has states. [`AutomaticEq`] caches
//! those classes together with their least members.

pub mod builders;
pub mod checks;
pub mod dfa;
pub mod nfa;
pub mod text;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::partition::{Partition, PartitionError};
use crate::text::ParseError;
use builders::{kernel_dfa, Classifier};
pub use checks::{check_format, check_reflexive, check_reflexive_sampled, check_symmetric, check_transitive};
pub use dfa::{binrep, pair_word, Dfa, Symbol};
pub use nfa::Nfa;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("accepts a word that is not `binrep □ binrep`: {0}")]
    BadFormat(String),
    #[error("relation is not reflexive")]
    NotReflexive,
    #[error("relation is not symmetric")]
    NotSymmetric,
    #[error("relation is not transitive")]
    NotTransitive,
    #[error("a class member does not fit in 64 bits")]
    Overflow,
    #[error("invalid grouping: {0}")]
    InvalidGrouping(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// How reflexivity is established when validating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReflexivityCheck {
    /// Transition-monoid enumeration.
    #[default]
    Exact,
    /// Only `m < bound` is tested. Unsound.
    UnsoundFast { bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ClassInfo {
    representative: u64,
    /// A pre-separator state of this class.
    state: usize,
}

/// A validated automatic equivalence relation.
#[derive(Debug, Clone)]
pub struct AutomaticEq {
    dfa: Dfa,
    classes: Vec<ClassInfo>,
    /// Class index of each pre-separator state reached by a canonical word.
    class_of_state: Vec<Option<usize>>,
}

/// An edge of the class intersection graph used by [`AutomaticEq::join`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JoinWitness {
    pub left_class: usize,
    pub right_class: usize,
    /// Least number in both classes.
    pub witness: u64,
}

impl AutomaticEq {
    /// Validates format and the three axioms exactly.
    pub fn new(dfa: Dfa) -> Result<Self, AutomatonError> {
        Self::with_check(dfa, ReflexivityCheck::Exact)
    }

    pub fn with_check(dfa: Dfa, reflexivity: ReflexivityCheck) -> Result<Self, AutomatonError> {
        if let Some(w) = checks::format_violation(&dfa) {
            return Err(AutomatonError::BadFormat(w));
        }
        let reflexive = match reflexivity {
            ReflexivityCheck::Exact => check_reflexive(&dfa),
            ReflexivityCheck::UnsoundFast { bound } => check_reflexive_sampled(&dfa, bound),
        };
        if !reflexive {
            return Err(AutomatonError::NotReflexive);
        }
        if !check_symmetric(&dfa) {
            return Err(AutomatonError::NotSymmetric);
        }
        if !check_transitive(&dfa) {
            return Err(AutomatonError::NotTransitive);
        }
        Self::from_trusted(dfa)
    }

    /// Builds the class table of a DFA already known to decide an equivalence.
    pub(crate) fn from_trusted(dfa: Dfa) -> Result<Self, AutomatonError> {
        let dfa = checks::pair_part(&dfa);
        let states = checks::canonical_pre_states(&dfa);
        let mut classes: Vec<(ClassInfo, Dfa)> = Vec::new();
        let mut class_of_state = vec![None; dfa.state_count()];
        for s in states {
            let lang = checks::post_language(&dfa, s);
            let index = match classes.iter().position(|(_, l)| l.equivalent(&lang)) {
                Some(i) => i,
                None => {
                    let word = lang.least_word().ok_or(AutomatonError::NotReflexive)?;
                    let representative = dfa::word_value(&word).ok_or(AutomatonError::Overflow)?;
                    classes.push((ClassInfo { representative, state: s }, lang));
                    classes.len() - 1
                }
            };
            class_of_state[s] = Some(index);
        }
        // order classes by representative
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by_key(|&i| classes[i].0.representative);
        let mut rank = vec![0; classes.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        for c in class_of_state.iter_mut().flatten() {
            *c = rank[*c];
        }
        let classes = order.into_iter().map(|i| classes[i].0.clone()).collect();
        Ok(AutomaticEq {
            dfa,
            classes,
            class_of_state,
        })
    }

    /// Kernel of a classifier; always an equivalence, so not re-validated.
    pub fn from_classifier(c: &Classifier) -> Self {
        Self::from_trusted(kernel_dfa(c)).expect("kernels are equivalences")
    }

    /// The minimal DFA of the pair language.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn decide(&self, m: u64, n: u64) -> bool {
        self.dfa.accepts(&pair_word(m, n))
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of `m`'s class, classes ordered by least member.
    pub fn class_index(&self, m: u64) -> usize {
        let s = self.dfa.run_from(self.dfa.start(), &binrep(m));
        self.class_of_state[s].expect("canonical words reach classified states")
    }

    /// The least member of each class, ascending.
    pub fn representatives(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.representative).collect()
    }

    /// Automaton for the class with the given index, as a set of numbers.
    pub fn class_language(&self, class: usize) -> Dfa {
        checks::post_language(&self.dfa, self.classes[class].state)
    }

    /// The relation restricted to `{0..n-1}`.
    pub fn restrict(&self, n: usize) -> Result<Partition, PartitionError> {
        let labels: Vec<usize> = (0..n as u64).map(|m| self.class_index(m)).collect();
        Partition::from_labels(&labels)
    }

    /// Conjunction, by the product automaton.
    pub fn meet(&self, other: &AutomaticEq) -> AutomaticEq {
        Self::from_trusted(self.dfa.intersect(&other.dfa)).expect("meets are equivalences")
    }

    /// Pairs of classes (one from each side) that intersect, with the least
    /// common member.
    pub fn join_witnesses(&self, other: &AutomaticEq) -> Result<Vec<JoinWitness>, AutomatonError> {
        let right: Vec<Dfa> = (0..other.class_count()).map(|j| other.class_language(j)).collect();
        let mut out = Vec::new();
        for i in 0..self.class_count() {
            let left = self.class_language(i);
            for (j, r) in right.iter().enumerate() {
                if let Some(word) = left.intersect(r).least_word() {
                    out.push(JoinWitness {
                        left_class: i,
                        right_class: j,
                        witness: dfa::word_value(&word).ok_or(AutomatonError::Overflow)?,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Least upper bound: the classes are the connected components of the
    /// class intersection graph, expressed as unions of this relation's
    /// classes.
    pub fn join(&self, other: &AutomaticEq) -> Result<AutomaticEq, AutomatonError> {
        let e = self.class_count();
        let mut uf = UnionFind::<usize>::new(e + other.class_count());
        for w in self.join_witnesses(other)? {
            uf.union(w.left_class, e + w.right_class);
        }
        let labels = uf.into_labeling();
        let component: Vec<usize> = (0..e).map(|i| labels[i]).collect();
        Ok(self.kernel_by_class(&component))
    }

    /// Coarsening whose classes are the given unions of class indices.
    pub fn coarsen(&self, grouping: &[Vec<usize>]) -> Result<AutomaticEq, AutomatonError> {
        let mut group_of = vec![usize::MAX; self.class_count()];
        for (g, block) in grouping.iter().enumerate() {
            if block.is_empty() {
                return Err(AutomatonError::InvalidGrouping(format!("group {g} is empty")));
            }
            for &c in block {
                if c >= self.class_count() {
                    return Err(AutomatonError::InvalidGrouping(format!(
                        "class {c} does not exist ({} classes)",
                        self.class_count()
                    )));
                }
                if group_of[c] != usize::MAX {
                    return Err(AutomatonError::InvalidGrouping(format!(
                        "class {c} is listed twice"
                    )));
                }
                group_of[c] = g;
            }
        }
        if let Some(c) = group_of.iter().position(|&g| g == usize::MAX) {
            return Err(AutomatonError::InvalidGrouping(format!("class {c} is not grouped")));
        }
        Ok(self.kernel_by_class(&group_of))
    }

    /// Reads `m` through the pre-separator states, maps its class to
    /// `block[class]`, and accepts `n` iff its class maps to the same block.
    fn kernel_by_class(&self, block: &[usize]) -> AutomaticEq {
        let k = self.dfa.state_count();
        let trans = (0..k)
            .map(|s| [self.dfa.next(s, Symbol::Zero), self.dfa.next(s, Symbol::One)])
            .collect();
        let label = self
            .class_of_state
            .iter()
            .map(|c| c.map(|c| block[c]))
            .collect();
        AutomaticEq::from_classifier(&Classifier::new(trans, self.dfa.start(), label))
    }

    /// Same relation as languages.
    pub fn same_relation(&self, other: &AutomaticEq) -> bool {
        self.dfa.equivalent(&other.dfa)
    }

    /// Refinement order, by language inclusion.
    pub fn leq(&self, other: &AutomaticEq) -> bool {
        self.dfa.included_in(&other.dfa)
    }
}

/// The one-class relation on ℕ.
pub fn top() -> AutomaticEq {
    AutomaticEq::from_classifier(&Classifier::constant())
}

/// Two classes: `{i}` and everything else.
pub fn singleton_family(i: u64) -> AutomaticEq {
    AutomaticEq::from_classifier(&Classifier::singleton(i))
}

/// Class counts of the running meets of `singleton_family(1..=k)`.
pub fn family_meet_demo(k: u64) -> Vec<usize> {
    let mut acc = top();
    (1..=k)
        .map(|i| {
            acc = acc.meet(&singleton_family(i));
            acc.class_count()
        })
        .collect()
}

/// Named relations shipped with the crate.
pub mod corpus {
    use super::builders::{pair_dfa, Classifier};
    use super::{AutomaticEq, Dfa};

    pub fn top() -> AutomaticEq {
        super::top()
    }

    pub fn parity() -> AutomaticEq {
        AutomaticEq::from_classifier(&Classifier::modulo(2))
    }

    pub fn modulo(k: usize) -> AutomaticEq {
        AutomaticEq::from_classifier(&Classifier::modulo(k))
    }

    /// Same bit length, lengths `>= cap` merged.
    pub fn same_length_capped(cap: usize) -> AutomaticEq {
        AutomaticEq::from_classifier(&Classifier::bit_length_capped(cap))
    }

    /// `{0..t-1}` and `↑t`.
    pub fn below(t: usize) -> AutomaticEq {
        AutomaticEq::from_classifier(&Classifier::below(t))
    }

    pub fn popcount_parity() -> AutomaticEq {
        AutomaticEq::from_classifier(&Classifier::popcount_parity())
    }

    /// Every named relation, for corpus-wide checks.
    pub fn all() -> Vec<(String, AutomaticEq)> {
        vec![
            ("top".into(), top()),
            ("parity".into(), parity()),
            ("mod3".into(), modulo(3)),
            ("mod4".into(), modulo(4)),
            ("length4".into(), same_length_capped(4)),
            ("below2".into(), below(2)),
            ("popcount".into(), popcount_parity()),
            ("singleton1".into(), super::singleton_family(1)),
            ("singleton3".into(), super::singleton_family(3)),
            ("singleton5".into(), super::singleton_family(5)),
        ]
    }

    pub fn by_name(name: &str) -> Option<AutomaticEq> {
        if let Some(i) = name.strip_prefix("singleton") {
            return i.parse().ok().map(super::singleton_family);
        }
        if let Some(k) = name.strip_prefix("mod") {
            return k.parse().ok().filter(|&k| k >= 1).map(modulo);
        }
        if let Some(k) = name.strip_prefix("length") {
            return k.parse().ok().filter(|&k| k >= 1).map(same_length_capped);
        }
        if let Some(t) = name.strip_prefix("below") {
            return t.parse().ok().filter(|&t| t >= 1).map(below);
        }
        match name {
            "top" => Some(top()),
            "parity" => Some(parity()),
            "popcount" => Some(popcount_parity()),
            _ => None,
        }
    }

    /// Pair automata that fail one or more axioms, for negative tests.
    pub fn non_equivalences() -> Vec<(String, Dfa)> {
        vec![
            // rejects every w □ w
            (
                "last-bits-differ".into(),
                pair_dfa(&Classifier::modulo(2), |a, b| a != b),
            ),
            // bit lengths capped at 3, strictly increasing
            (
                "shorter-capped".into(),
                pair_dfa(&Classifier::bit_length_capped(3), |a, b| a < b),
            ),
            // low two bits equal or sharing a set bit: 1 ~ 3 ~ 2 but 1 ≁ 2
            (
                "low-bits-share".into(),
                pair_dfa(&Classifier::modulo(4), |a, b| a == b || a & b != 0),
            ),
            (
                "length-within-one".into(),
                pair_dfa(&Classifier::bit_length_capped(3), |a, b| a.abs_diff(b) <= 1),
            ),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_length_relation() {
        let a = corpus::same_length_capped(9);
        assert!(a.decide(4, 7));
        assert!(!a.decide(3, 4));
        for m in 0..256u64 {
            for n in 0..256u64 {
                let len = |x: u64| (64 - x.leading_zeros()).max(1).min(9);
                assert_eq!(a.decide(m, n), len(m) == len(n), "{m} {n}");
            }
        }
    }

    #[test]
    fn representatives_of_capped_length() {
        assert_eq!(corpus::same_length_capped(4).representatives(), vec![0, 2, 4, 8]);
        assert_eq!(top().representatives(), vec![0]);
        assert_eq!(singleton_family(3).representatives(), vec![0, 3]);
        assert_eq!(singleton_family(0).representatives(), vec![0, 1]);
    }

    #[test]
    fn singleton_family_decides() {
        let s = singleton_family(3);
        assert!(!s.decide(3, 5));
        assert!(s.decide(4, 5));
        assert!(s.decide(3, 3));
        assert_eq!(family_meet_demo(1), vec![2]);
        assert_eq!(family_meet_demo(4), vec![2, 3, 4, 5]);
    }

    #[test]
    fn validation_rejects_non_equivalences() {
        let bad = corpus::non_equivalences();
        assert_eq!(AutomaticEq::new(bad[0].1.clone()).unwrap_err(), AutomatonError::NotReflexive);
        assert_eq!(AutomaticEq::new(bad[1].1.clone()).unwrap_err(), AutomatonError::NotReflexive);
        assert_eq!(AutomaticEq::new(bad[2].1.clone()).unwrap_err(), AutomatonError::NotTransitive);
        assert_eq!(AutomaticEq::new(bad[3].1.clone()).unwrap_err(), AutomatonError::NotTransitive);
        // a single-word language
        let only = Dfa::new(
            vec![[1, 4, 4], [4, 4, 2], [3, 4, 4], [4, 4, 4], [4, 4, 4]],
            0,
            &[3],
        )
        .unwrap();
        assert!(check_format(&only));
        assert!(matches!(AutomaticEq::new(only), Err(AutomatonError::NotReflexive)));
        assert!(matches!(
            AutomaticEq::new(Dfa::new(vec![[0, 0, 0]], 0, &[0]).unwrap()),
            Err(AutomatonError::BadFormat(_))
        ));
    }

    #[test]
    fn coarsen_checks_grouping() {
        let m3 = corpus::modulo(3);
        assert!(m3.coarsen(&[vec![0], vec![1]]).is_err());
        assert!(m3.coarsen(&[vec![0, 1], vec![1, 2]]).is_err());
        assert!(m3.coarsen(&[vec![0, 1, 2], vec![]]).is_err());
        assert!(m3.coarsen(&[vec![0, 3], vec![1, 2]]).is_err());
        let all = m3.coarsen(&[vec![0, 1, 2]]).unwrap();
        assert!(all.same_relation(&top()));
        let same = m3.coarsen(&[vec![0], vec![1], vec![2]]).unwrap();
        assert!(same.same_relation(&m3));
        let two = m3.coarsen(&[vec![0, 2], vec![1]]).unwrap();
        assert_eq!(two.class_count(), 2);
        assert!(m3.leq(&two));
        assert!(two.decide(0, 2) && two.decide(3, 5) && !two.decide(1, 0));
    }

    #[test]
    fn join_of_parity_and_below() {
        let j = corpus::parity().join(&corpus::below(2)).unwrap();
        // 0 ~ 1 (below 2) links both parity classes
        assert!(j.same_relation(&top()));
        let m4 = corpus::modulo(4);
        let j = m4.join(&corpus::parity()).unwrap();
        assert!(j.same_relation(&corpus::parity()));
        assert!(m4.join(&m4).unwrap().same_relation(&m4));
    }
}
