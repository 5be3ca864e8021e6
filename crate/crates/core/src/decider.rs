//! Equivalences given by total decision procedures.
//!
//! A [`DeciderEq`] wraps a pure `(x, y) -> bool` together with a free-text
//! cost annotation. Totality and the axioms cannot be checked in general;
//! registration samples them on a finite set and rejects what fails.
//!
//! Meets are exact (`&&`). Joins are only offered as a bounded search,
//! since the join of two decidable equivalences can be undecidable.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

use crate::partition::{Partition, PartitionError};

/// Sample bound used at registration.
pub const DEFAULT_SAMPLE_BOUND: u64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeciderError {
    #[error("not an equivalence: {axiom} fails at {witness}")]
    NotEquivalence { axiom: &'static str, witness: String },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

pub type Procedure<T> = Arc<dyn Fn(&T, &T) -> bool + Send + Sync>;
pub type ClassKey<T> = Arc<dyn Fn(&T) -> T + Send + Sync>;

/// A decidable equivalence on `T` (naturals by default).
#[derive(Clone)]
pub struct DeciderEq<T = u64> {
    decide: Procedure<T>,
    /// Complete invariant when present: `x ~ y` iff `key(x) == key(y)`.
    class_key: Option<ClassKey<T>>,
    cost_note: String,
    universe_hint: Option<u64>,
}

/// Which relation a chain link uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// `points[0] ~ points[1] ~ …`, where link `i` is related under `sides[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinChain<T> {
    pub points: Vec<T>,
    pub sides: Vec<Side>,
}

impl<T> JoinChain<T> {
    pub fn links(&self) -> usize {
        self.sides.len()
    }

    /// Re-checks every link against the two relations.
    pub fn verify(&self, first: &DeciderEq<T>, second: &DeciderEq<T>) -> bool {
        self.points.len() == self.sides.len() + 1
            && self.points.windows(2).zip(&self.sides).all(|(w, side)| match side {
                Side::First => first.decide(&w[0], &w[1]),
                Side::Second => second.decide(&w[0], &w[1]),
            })
    }
}

/// Outcome of [`bounded_join`]. `NotWithinBounds` is not a proof of
/// unrelatedness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinSearch<T> {
    RelatedWitness(JoinChain<T>),
    NotWithinBounds,
}

impl<T> JoinSearch<T> {
    pub fn chain(&self) -> Option<&JoinChain<T>> {
        match self {
            JoinSearch::RelatedWitness(c) => Some(c),
            JoinSearch::NotWithinBounds => None,
        }
    }
}

/// Checks reflexivity, symmetry and transitivity of `f` on `samples³`.
pub fn axioms_on<T, F>(f: F, samples: &[T]) -> Result<(), DeciderError>
where
    T: fmt::Debug,
    F: Fn(&T, &T) -> bool,
{
    let n = samples.len();
    let mut rel = vec![false; n * n];
    for (i, x) in samples.iter().enumerate() {
        for (j, y) in samples.iter().enumerate() {
            rel[i * n + j] = f(x, y);
        }
    }
    let r = |i: usize, j: usize| rel[i * n + j];
    if let Some(i) = (0..n).find(|&i| !r(i, i)) {
        return Err(DeciderError::NotEquivalence {
            axiom: "reflexivity",
            witness: format!("{:?}", samples[i]),
        });
    }
    for i in 0..n {
        for j in 0..n {
            if r(i, j) && !r(j, i) {
                return Err(DeciderError::NotEquivalence {
                    axiom: "symmetry",
                    witness: format!("({:?}, {:?})", samples[i], samples[j]),
                });
            }
        }
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| r(i, j)) {
            if let Some(k) = (0..n).find(|&k| r(j, k) && !r(i, k)) {
                return Err(DeciderError::NotEquivalence {
                    axiom: "transitivity",
                    witness: format!("({:?}, {:?}, {:?})", samples[i], samples[j], samples[k]),
                });
            }
        }
    }
    Ok(())
}

/// The axioms over `{0..bound-1}³`.
pub fn is_equivalence_sampled<F: Fn(u64, u64) -> bool>(f: F, bound: u64) -> bool {
    let samples: Vec<u64> = (0..bound).collect();
    axioms_on(|x: &u64, y: &u64| f(*x, *y), &samples).is_ok()
}

impl<T: fmt::Debug + 'static> DeciderEq<T> {
    /// Registers a procedure after checking the axioms on `samples`.
    pub fn register<F>(f: F, cost_note: impl Into<String>, samples: &[T]) -> Result<Self, DeciderError>
    where
        F: Fn(&T, &T) -> bool + Send + Sync + 'static,
    {
        axioms_on(&f, samples)?;
        Ok(DeciderEq {
            decide: Arc::new(f),
            class_key: None,
            cost_note: cost_note.into(),
            universe_hint: None,
        })
    }

    /// Kernel of `key`; an equivalence by construction.
    pub fn from_key<K>(key: K, cost_note: impl Into<String>) -> Self
    where
        T: PartialEq,
        K: Fn(&T) -> T + Send + Sync + 'static,
    {
        let key: ClassKey<T> = Arc::new(key);
        let k = key.clone();
        DeciderEq {
            decide: Arc::new(move |x, y| k(x) == k(y)),
            class_key: Some(key),
            cost_note: cost_note.into(),
            universe_hint: None,
        }
    }
}

impl<T> DeciderEq<T> {
    pub fn decide(&self, x: &T, y: &T) -> bool {
        (self.decide)(x, y)
    }

    pub fn cost_note(&self) -> &str {
        &self.cost_note
    }

    pub fn universe_hint(&self) -> Option<u64> {
        self.universe_hint
    }

    pub fn with_universe_hint(mut self, n: u64) -> Self {
        self.universe_hint = Some(n);
        self
    }

    pub fn with_cost_note(mut self, note: impl Into<String>) -> Self {
        self.cost_note = note.into();
        self
    }

    pub fn class_key(&self) -> Option<&ClassKey<T>> {
        self.class_key.as_ref()
    }

    pub fn is_equivalence_on(&self, samples: &[T]) -> bool
    where
        T: fmt::Debug,
    {
        axioms_on(|x, y| self.decide(x, y), samples).is_ok()
    }

    /// The induced partition on an explicit finite list of elements.
    pub fn restrict_to(&self, elements: &[T]) -> Result<Partition, PartitionError> {
        Partition::from_relation(elements.len(), |i, j| self.decide(&elements[i], &elements[j]))
    }
}

impl<T: 'static> DeciderEq<T> {
    /// Conjunction of the two procedures.
    pub fn meet(&self, other: &DeciderEq<T>) -> DeciderEq<T> {
        let (a, b) = (self.decide.clone(), other.decide.clone());
        DeciderEq {
            decide: Arc::new(move |x, y| a(x, y) && b(x, y)),
            class_key: None,
            cost_note: format!("({}) && ({})", self.cost_note, other.cost_note),
            universe_hint: match (self.universe_hint, other.universe_hint) {
                (Some(p), Some(q)) => Some(p.max(q)),
                (p, q) => p.or(q),
            },
        }
    }
}

impl DeciderEq<u64> {
    /// Registers with the default sample bound.
    pub fn new<F>(f: F, cost_note: impl Into<String>) -> Result<Self, DeciderError>
    where
        F: Fn(u64, u64) -> bool + Send + Sync + 'static,
    {
        Self::with_sample_bound(f, cost_note, DEFAULT_SAMPLE_BOUND)
    }

    pub fn with_sample_bound<F>(f: F, cost_note: impl Into<String>, bound: u64) -> Result<Self, DeciderError>
    where
        F: Fn(u64, u64) -> bool + Send + Sync + 'static,
    {
        let samples: Vec<u64> = (0..bound).collect();
        Self::register(move |x: &u64, y: &u64| f(*x, *y), cost_note, &samples)
    }

    pub fn is_equivalence_sampled(&self, bound: u64) -> bool {
        is_equivalence_sampled(|x, y| self.decide(&x, &y), bound)
    }

    /// The induced partition on `{0..n-1}`.
    pub fn restrict(&self, n: usize) -> Result<Partition, PartitionError> {
        Partition::from_relation(n, |x, y| self.decide(&(x as u64), &(y as u64)))
    }
}

/// Breadth-first search for a chain `m ~ a₁ ~ … ~ n` alternating between the
/// two relations, through elements of `universe` and with at most
/// `chain_bound` links.
pub fn bounded_join_in<T>(
    first: &DeciderEq<T>,
    second: &DeciderEq<T>,
    m: &T,
    n: &T,
    universe: &[T],
    chain_bound: usize,
) -> JoinSearch<T>
where
    T: Clone + Eq + Hash,
{
    if m == n {
        return JoinSearch::RelatedWitness(JoinChain {
            points: vec![m.clone()],
            sides: Vec::new(),
        });
    }
    let index: HashMap<&T, usize> = universe.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let (Some(&start), Some(&goal)) = (index.get(m), index.get(n)) else {
        return JoinSearch::NotWithinBounds;
    };
    let buckets = |d: &DeciderEq<T>| -> Option<HashMap<T, Vec<usize>>> {
        d.class_key.as_ref().map(|key| {
            let mut b: HashMap<T, Vec<usize>> = HashMap::new();
            for (i, x) in universe.iter().enumerate() {
                b.entry(key(x)).or_default().push(i);
            }
            b
        })
    };
    let first_buckets = buckets(first);
    let second_buckets = buckets(second);
    let neighbours = |i: usize, d: &DeciderEq<T>, b: &Option<HashMap<T, Vec<usize>>>| -> Vec<usize> {
        match (b, &d.class_key) {
            (Some(b), Some(key)) => b.get(&key(&universe[i])).cloned().unwrap_or_default(),
            _ => (0..universe.len())
                .filter(|&j| d.decide(&universe[i], &universe[j]))
                .collect(),
        }
    };

    // parent[j] = (predecessor, side of the link into j)
    let mut parent: Vec<Option<(usize, Side)>> = vec![None; universe.len()];
    let mut depth = vec![usize::MAX; universe.len()];
    depth[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        if i == goal {
            break;
        }
        if depth[i] >= chain_bound {
            continue;
        }
        for (side, d, b) in [
            (Side::First, first, &first_buckets),
            (Side::Second, second, &second_buckets),
        ] {
            for j in neighbours(i, d, b) {
                if depth[j] == usize::MAX {
                    depth[j] = depth[i] + 1;
                    parent[j] = Some((i, side));
                    queue.push_back(j);
                }
            }
        }
    }
    if depth[goal] == usize::MAX {
        return JoinSearch::NotWithinBounds;
    }
    let mut points = vec![universe[goal].clone()];
    let mut sides = Vec::new();
    let mut cur = goal;
    while let Some((p, side)) = parent[cur] {
        points.push(universe[p].clone());
        sides.push(side);
        cur = p;
    }
    points.reverse();
    sides.reverse();
    JoinSearch::RelatedWitness(JoinChain { points, sides })
}

/// [`bounded_join_in`] over the universe `{0..universe_bound-1}`.
pub fn bounded_join(
    first: &DeciderEq<u64>,
    second: &DeciderEq<u64>,
    m: u64,
    n: u64,
    universe_bound: u64,
    chain_bound: usize,
) -> JoinSearch<u64> {
    let universe: Vec<u64> = (0..universe_bound).collect();
    bounded_join_in(first, second, &m, &n, &universe, chain_bound)
}

/// The singular relation whose big class holds the least element of every
/// class of `d`; a complement of `d`.
///
/// Decided by: (i) accept if `m = n`; (ii) reject if some `k < m` has
/// `k ~ m`; (iii) reject if some `k < n` has `k ~ n`; (iv) accept.
pub fn least_element_complement(d: &DeciderEq<u64>) -> DeciderEq<u64> {
    let inner = d.decide.clone();
    let decide = move |m: &u64, n: &u64| {
        if m == n {
            return true;
        }
        if (0..*m).any(|k| inner(&k, m)) {
            return false;
        }
        if (0..*n).any(|k| inner(&k, n)) {
            return false;
        }
        true
    };
    DeciderEq {
        decide: Arc::new(decide),
        class_key: None,
        cost_note: format!(
            "least-element complement of ({}): linear space, exponential time in |binrep m| (loops over k < m)",
            d.cost_note
        ),
        universe_hint: d.universe_hint,
    }
}

/// `m ~ n` iff `m = n` or both satisfy `p`.
pub fn singular_from_predicate<P>(p: P, cost_note: impl Into<String>) -> DeciderEq<u64>
where
    P: Fn(u64) -> bool + Send + Sync + 'static,
{
    DeciderEq {
        decide: Arc::new(move |m: &u64, n: &u64| m == n || (p(*m) && p(*n))),
        class_key: None,
        cost_note: cost_note.into(),
        universe_hint: None,
    }
}

pub fn bottom() -> DeciderEq<u64> {
    DeciderEq::from_key(|x: &u64| *x, "constant space")
}

pub fn top() -> DeciderEq<u64> {
    DeciderEq::from_key(|_: &u64| 0, "constant time")
}

pub fn modulo(k: u64) -> DeciderEq<u64> {
    assert!(k >= 1);
    DeciderEq::from_key(move |x: &u64| x % k, format!("logspace-style: residue mod {k}"))
}

pub fn parity() -> DeciderEq<u64> {
    modulo(2).with_cost_note("constant space: last bit")
}

/// A partition of `{0..n-1}` extended to ℕ with singletons above.
pub fn from_partition(p: &Partition) -> DeciderEq<u64> {
    let p = p.clone();
    let n = p.universe_size() as u64;
    DeciderEq::from_key(
        move |x: &u64| if *x < n { p.class_of(*x as usize) as u64 } else { *x },
        "table lookup",
    )
    .with_universe_hint(n)
}

impl<T> fmt::Debug for DeciderEq<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeciderEq")
            .field("cost_note", &self.cost_note)
            .field("universe_hint", &self.universe_hint)
            .field("keyed", &self.class_key.is_some())
            .finish()
    }
}

pub fn is_prime(x: u64) -> bool {
    x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| x % d != 0)
}
