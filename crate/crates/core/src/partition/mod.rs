//! Explicit equivalence relations on a finite universe `{0..n-1}`.
//!
//! A [`Partition`] stores, for every element, the least element of its
//! class. With that labeling two partitions are equal exactly when they
//! relate the same pairs, so `==` is lattice equality.

mod small;
pub mod text;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use petgraph::unionfind::UnionFind;
use rand::Rng;
use thiserror::Error;

pub use small::SmallEq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("invalid universe: a partition needs at least one element")]
    InvalidUniverse,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },
    #[error("element {element} is outside the universe of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("partition is not singular")]
    NotSingular,
}

/// An equivalence relation on `{0..n-1}`, labelled by least class element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    class_of: Vec<usize>,
}

/// A successor of bottom: the only non-singleton class is `{a, b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    a: usize,
    b: usize,
}

impl Atom {
    pub fn new(x: usize, y: usize) -> Result<Self, PartitionError> {
        if x == y {
            return Err(PartitionError::InvalidPartition(format!(
                "atom needs two distinct elements, got ({x}, {y})"
            )));
        }
        Ok(Atom {
            a: x.min(y),
            b: x.max(y),
        })
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn to_partition(&self, n: usize) -> Result<Partition, PartitionError> {
        Partition::singular(n, &[self.a, self.b])
    }
}

impl Partition {
    pub fn bottom(n: usize) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::InvalidUniverse);
        }
        Ok(Partition {
            class_of: (0..n).collect(),
        })
    }

    pub fn top(n: usize) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::InvalidUniverse);
        }
        Ok(Partition {
            class_of: vec![0; n],
        })
    }

    /// Builds a partition of `{0..n-1}` from its classes, in any order.
    ///
    /// The classes must be non-empty, pairwise disjoint and cover the
    /// universe; the universe size is the number of listed elements.
    pub fn from_classes<C, I>(sets: C) -> Result<Self, PartitionError>
    where
        C: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let sets: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let n: usize = sets.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(PartitionError::InvalidUniverse);
        }
        let mut class_of = vec![usize::MAX; n];
        for (index, set) in sets.iter().enumerate() {
            let Some(&least) = set.iter().min() else {
                return Err(PartitionError::InvalidPartition(format!(
                    "class #{index} is empty"
                )));
            };
            for &x in set {
                if x >= n {
                    return Err(PartitionError::InvalidPartition(format!(
                        "element {x} leaves a gap in the universe {{0..{}}}",
                        n - 1
                    )));
                }
                if class_of[x] != usize::MAX {
                    return Err(PartitionError::InvalidPartition(format!(
                        "element {x} appears in more than one class"
                    )));
                }
                class_of[x] = least;
            }
        }
        Ok(Partition { class_of })
    }

    /// Canonicalizes an arbitrary labeling: `x` and `y` are related iff
    /// `labels[x] == labels[y]`.
    pub fn from_labels<L: Hash + Eq>(labels: &[L]) -> Result<Self, PartitionError> {
        if labels.is_empty() {
            return Err(PartitionError::InvalidUniverse);
        }
        let mut first: HashMap<&L, usize> = HashMap::with_capacity(labels.len());
        let class_of = labels
            .iter()
            .enumerate()
            .map(|(x, l)| *first.entry(l).or_insert(x))
            .collect();
        Ok(Partition { class_of })
    }

    /// Materializes a relation given as a predicate, which must be an
    /// equivalence on `{0..n-1}`.
    pub fn from_relation<F>(n: usize, related: F) -> Result<Self, PartitionError>
    where
        F: Fn(usize, usize) -> bool,
    {
        if n == 0 {
            return Err(PartitionError::InvalidUniverse);
        }
        let mut class_of = vec![usize::MAX; n];
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            for y in x..n {
                if class_of[y] == usize::MAX && related(x, y) {
                    class_of[y] = x;
                }
            }
        }
        let p = Partition { class_of };
        for x in 0..n {
            for y in 0..n {
                if related(x, y) != p.related(x, y) {
                    return Err(PartitionError::InvalidPartition(format!(
                        "relation is not an equivalence (disagreement at ({x}, {y}))"
                    )));
                }
            }
        }
        Ok(p)
    }

    /// The singular partition whose only non-singleton class is `class`.
    /// A class of size ≤ 1 gives bottom.
    pub fn singular(n: usize, class: &[usize]) -> Result<Self, PartitionError> {
        let mut p = Partition::bottom(n)?;
        let Some(&least) = class.iter().min() else {
            return Ok(p);
        };
        for &x in class {
            if x >= n {
                return Err(PartitionError::OutOfRange { element: x, size: n });
            }
            p.class_of[x] = least;
        }
        Ok(p)
    }

    pub fn universe_size(&self) -> usize {
        self.class_of.len()
    }

    /// The canonical label (least element) of `x`'s class.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Classes in order of their least element, each sorted ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.class_of.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (x, &label) in self.class_of.iter().enumerate() {
            if label == x {
                index[x] = out.len();
                out.push(vec![x]);
            } else {
                out[index[label]].push(x);
            }
        }
        out
    }

    pub fn class_count(&self) -> usize {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(x, &l)| x == l)
            .count()
    }

    fn check_same_universe(&self, other: &Partition) -> Result<(), PartitionError> {
        if self.universe_size() != other.universe_size() {
            return Err(PartitionError::UniverseMismatch {
                left: self.universe_size(),
                right: other.universe_size(),
            });
        }
        Ok(())
    }

    /// Refinement order: every class of `self` lies inside a class of `other`.
    pub fn leq(&self, other: &Partition) -> Result<bool, PartitionError> {
        self.check_same_universe(other)?;
        // Related to its own label in self implies related in other.
        Ok(self
            .class_of
            .iter()
            .enumerate()
            .all(|(x, &l)| other.related(x, l)))
    }

    /// Classes are the non-empty intersections of a class of each input.
    pub fn meet(&self, other: &Partition) -> Result<Partition, PartitionError> {
        self.check_same_universe(other)?;
        let pairs: Vec<(usize, usize)> = self
            .class_of
            .iter()
            .zip(&other.class_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Partition::from_labels(&pairs)
    }

    /// Transitive closure of the union, by disjoint-set union.
    pub fn join(&self, other: &Partition) -> Result<Partition, PartitionError> {
        self.check_same_universe(other)?;
        let n = self.universe_size();
        let mut uf = UnionFind::<usize>::new(n);
        for x in 0..n {
            uf.union(x, self.class_of[x]);
            uf.union(x, other.class_of[x]);
        }
        Partition::from_labels(&uf.into_labeling())
    }

    pub fn is_bottom(&self) -> bool {
        self.class_of.iter().enumerate().all(|(x, &l)| x == l)
    }

    pub fn is_top(&self) -> bool {
        self.class_of.iter().all(|&l| l == 0)
    }

    /// True iff exactly one class has two or more elements.
    pub fn is_singular(&self) -> bool {
        self.non_singleton_class().is_ok()
    }

    pub fn non_singleton_class(&self) -> Result<Vec<usize>, PartitionError> {
        let mut big = self.classes().into_iter().filter(|c| c.len() >= 2);
        match (big.next(), big.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(PartitionError::NotSingular),
        }
    }

    /// `meet = bottom` and `join = top`.
    pub fn is_complement(&self, other: &Partition) -> Result<bool, PartitionError> {
        Ok(self.meet(other)?.is_bottom() && self.join(other)?.is_top())
    }

    /// For singular `self`: every class of `other` holds exactly one element
    /// of the non-singleton class.
    pub fn singular_complement_valid(&self, other: &Partition) -> Result<bool, PartitionError> {
        self.check_same_universe(other)?;
        let big = self.non_singleton_class()?;
        let mut hits = vec![0usize; self.universe_size()];
        for &x in &big {
            hits[other.class_of[x]] += 1;
        }
        Ok(other
            .class_of
            .iter()
            .enumerate()
            .filter(|&(x, &l)| x == l)
            .all(|(x, _)| hits[x] == 1))
    }

    /// The singular partition whose big class collects the least element of
    /// every class of `self`; always a complement of `self`.
    ///
    /// Bottom maps to top and top maps to bottom.
    pub fn least_element_complement(&self) -> Partition {
        let leasts: Vec<usize> = (0..self.universe_size())
            .filter(|&x| self.class_of[x] == x)
            .collect();
        Partition::singular(self.universe_size(), &leasts)
            .expect("least elements lie in the universe")
    }

    /// Star decomposition: `(m, x)` for every non-least `x` of a class with
    /// least element `m`. Joining the atoms gives back `self`.
    pub fn atomistic_decomposition(&self) -> Vec<Atom> {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(x, &l)| x != l)
            .map(|(x, &l)| Atom { a: l, b: x })
            .collect()
    }

    /// Every partition of `{0..n-1}`, in restricted-growth-string order.
    pub fn enumerate(n: usize) -> Result<Vec<Partition>, PartitionError> {
        if n == 0 {
            return Err(PartitionError::InvalidUniverse);
        }
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        loop {
            out.push(Partition::from_labels(&rgs)?);
            // advance to the next restricted growth string
            let mut i = n - 1;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                let max_before = rgs[..i].iter().copied().max().unwrap_or(0);
                if rgs[i] <= max_before {
                    rgs[i] += 1;
                    rgs[i + 1..].iter_mut().for_each(|v| *v = 0);
                    break;
                }
                i -= 1;
            }
        }
    }

    /// A random partition: each element joins an existing class or opens a
    /// new one with equal probability among the options.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Partition, PartitionError> {
        if n == 0 {
            return Err(PartitionError::InvalidUniverse);
        }
        let mut labels = Vec::with_capacity(n);
        let mut classes = 0usize;
        for _ in 0..n {
            let l = rng.gen_range(0..=classes);
            if l == classes {
                classes += 1;
            }
            labels.push(l);
        }
        Partition::from_labels(&labels)
    }

    /// The partition induced on the first `n` elements.
    pub fn restrict(&self, n: usize) -> Result<Partition, PartitionError> {
        if n > self.universe_size() {
            return Err(PartitionError::OutOfRange {
                element: n - 1,
                size: self.universe_size(),
            });
        }
        Partition::from_labels(&self.class_of[..n])
    }
}

/// Joins atoms over a universe of size `n`, starting from bottom.
pub fn join_atoms(n: usize, atoms: &[Atom]) -> Result<Partition, PartitionError> {
    if n == 0 {
        return Err(PartitionError::InvalidUniverse);
    }
    let mut uf = UnionFind::<usize>::new(n);
    for atom in atoms {
        if atom.b >= n {
            return Err(PartitionError::OutOfRange { element: atom.b, size: n });
        }
        uf.union(atom.a, atom.b);
    }
    Partition::from_labels(&uf.into_labeling())
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Partition")?;
        f.debug_set().entries(self.classes()).finish()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_partition(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(sets: &[&[usize]]) -> Partition {
        Partition::from_classes(sets.iter().map(|s| s.iter().copied())).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(Partition::bottom(3).unwrap().classes(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(Partition::bottom(1).unwrap().classes(), vec![vec![0]]);
        assert_eq!(Partition::bottom(8).unwrap().class_count(), 8);
        assert_eq!(Partition::top(3).unwrap().classes(), vec![vec![0, 1, 2]]);
        assert_eq!(Partition::top(8).unwrap().class_count(), 1);
        assert_eq!(Partition::top(1).unwrap(), Partition::bottom(1).unwrap());
        assert_eq!(Partition::bottom(0), Err(PartitionError::InvalidUniverse));
        assert_eq!(Partition::top(0), Err(PartitionError::InvalidUniverse));
    }

    #[test]
    fn from_classes_canonicalizes_and_rejects() {
        assert_eq!(p(&[&[0, 1], &[2]]).labels(), &[0, 0, 2]);
        assert_eq!(p(&[&[1, 0], &[2]]), p(&[&[2], &[0, 1]]));
        assert!(matches!(
            Partition::from_classes([vec![0, 1], vec![1, 2]]),
            Err(PartitionError::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::from_classes([vec![0, 1], vec![]]),
            Err(PartitionError::InvalidPartition(_))
        ));
        // {0, 2} alone has two elements but misses 1
        assert!(matches!(
            Partition::from_classes([vec![0, 2]]),
            Err(PartitionError::InvalidPartition(_))
        ));
    }

    #[test]
    fn relation_basics() {
        let top = Partition::top(3).unwrap();
        let bot = Partition::bottom(3).unwrap();
        assert!(top.related(0, 2));
        assert!(!bot.related(0, 2));
        assert!(bot.leq(&top).unwrap());
        assert!(!top.leq(&bot).unwrap());
        assert_eq!(
            top.leq(&Partition::top(4).unwrap()),
            Err(PartitionError::UniverseMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn meet_and_join_examples() {
        let e = p(&[&[0, 1], &[2, 3]]);
        let f = p(&[&[0, 2], &[1, 3]]);
        assert_eq!(e.meet(&f).unwrap(), Partition::bottom(4).unwrap());
        assert_eq!(e.meet(&Partition::top(4).unwrap()).unwrap(), e);
        let g = p(&[&[1, 2], &[0], &[3]]);
        assert_eq!(e.join(&g).unwrap(), Partition::top(4).unwrap());
        assert_eq!(e.join(&Partition::bottom(4).unwrap()).unwrap(), e);
        assert_eq!(e.join(&e).unwrap(), e);
        assert!(e.join(&Partition::top(5).unwrap()).is_err());
    }

    #[test]
    fn singular_queries() {
        let top = Partition::top(3).unwrap();
        assert!(top.is_singular());
        assert_eq!(top.non_singleton_class().unwrap(), vec![0, 1, 2]);
        assert!(!Partition::bottom(3).unwrap().is_singular());
        assert_eq!(
            Partition::bottom(3).unwrap().non_singleton_class(),
            Err(PartitionError::NotSingular)
        );
        let e = p(&[&[0, 2], &[1], &[3]]);
        assert_eq!(e.non_singleton_class().unwrap(), vec![0, 2]);
        assert!(!p(&[&[0, 1], &[2, 3]]).is_singular());
    }

    #[test]
    fn complements() {
        for n in 1..6 {
            let bot = Partition::bottom(n).unwrap();
            let top = Partition::top(n).unwrap();
            assert!(bot.is_complement(&top).unwrap());
            assert_eq!(top.least_element_complement(), bot);
            assert_eq!(bot.least_element_complement(), top);
        }
        let e = p(&[&[0, 1], &[2, 3]]);
        assert!(!e.is_complement(&e).unwrap());
        let s = p(&[&[0, 2], &[1]]);
        let f = p(&[&[0, 1], &[2]]);
        assert!(s.is_complement(&f).unwrap());
        assert!(s.singular_complement_valid(&f).unwrap());

        let s2 = Partition::top(2).unwrap();
        assert!(s2.singular_complement_valid(&Partition::bottom(2).unwrap()).unwrap());
        let s3 = Partition::top(3).unwrap();
        assert!(!s3.singular_complement_valid(&p(&[&[0, 1], &[2]])).unwrap());
        assert_eq!(
            e.singular_complement_valid(&Partition::bottom(4).unwrap()),
            Err(PartitionError::NotSingular)
        );

        let c = e.least_element_complement();
        assert_eq!(c.non_singleton_class().unwrap(), vec![0, 2]);
        assert!(e.is_complement(&c).unwrap());
    }

    #[test]
    fn atoms() {
        assert!(Partition::bottom(4).unwrap().atomistic_decomposition().is_empty());
        let atoms = Partition::top(3).unwrap().atomistic_decomposition();
        let pairs: Vec<_> = atoms.iter().map(Atom::pair).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2)]);
        assert_eq!(join_atoms(3, &atoms).unwrap(), Partition::top(3).unwrap());
        assert!(Atom::new(2, 2).is_err());
        assert_eq!(Atom::new(3, 1).unwrap().pair(), (1, 3));
    }

    #[test]
    fn from_relation_rejects_non_equivalence() {
        assert!(Partition::from_relation(4, |x, y| x.abs_diff(y) <= 1).is_err());
        assert_eq!(
            Partition::from_relation(4, |x, y| x % 2 == y % 2).unwrap(),
            p(&[&[0, 2], &[1, 3]])
        );
    }
}
