use std::fmt;

use super::{Partition, PartitionError};

/// An equivalence on all of ℕ with finitely many classes.
///
/// Elements below `threshold` are stored explicitly; every `x >= threshold`
/// belongs to the tail class. Internally the tail is the extra element
/// `threshold` of a partition over `{0..=threshold}`.
#[derive(Clone)]
pub struct SmallEq {
    threshold: usize,
    repr: Partition,
}

impl SmallEq {
    /// `head` labels `{0..threshold-1}`; `tail_label` is either `threshold`
    /// (the tail is its own class) or an element of the head class the tail
    /// joins.
    pub fn new(threshold: usize, head: &[usize], tail_label: usize) -> Result<Self, PartitionError> {
        if head.len() != threshold {
            return Err(PartitionError::InvalidPartition(format!(
                "head labels {} elements, threshold is {threshold}",
                head.len()
            )));
        }
        if tail_label > threshold {
            return Err(PartitionError::OutOfRange {
                element: tail_label,
                size: threshold + 1,
            });
        }
        let mut labels = head.to_vec();
        labels.push(if tail_label == threshold {
            // fresh label that no head element uses
            usize::MAX
        } else {
            head[tail_label]
        });
        Ok(SmallEq {
            threshold,
            repr: Partition::from_labels(&labels)?,
        })
    }

    /// Wraps a partition of `{0..=threshold}` whose last element stands for
    /// the whole upper set `↑threshold`.
    pub fn from_extended(repr: Partition) -> Self {
        SmallEq {
            threshold: repr.universe_size() - 1,
            repr,
        }
    }

    /// The singular small equivalence whose big class is `head_members ∪ ↑threshold`.
    pub fn singular_with_tail(threshold: usize, head_members: &[usize]) -> Result<Self, PartitionError> {
        let mut class = head_members.to_vec();
        class.push(threshold);
        Ok(SmallEq::from_extended(Partition::singular(threshold + 1, &class)?))
    }

    pub fn top() -> Self {
        SmallEq::from_extended(Partition::top(1).expect("non-empty"))
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Label of the tail class: its least element, possibly below the threshold.
    pub fn tail_label(&self) -> usize {
        self.repr.class_of(self.threshold)
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.repr.class_of(x.min(self.threshold))
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of(x) == self.class_of(y)
    }

    pub fn class_count(&self) -> usize {
        self.repr.class_count()
    }

    /// The partition of `{0..=threshold}` with the tail folded into its last element.
    pub fn extended(&self) -> &Partition {
        &self.repr
    }

    /// Same relation with the threshold raised to `threshold`.
    pub fn with_threshold(&self, threshold: usize) -> Self {
        let labels: Vec<usize> = (0..=threshold).map(|x| self.class_of(x)).collect();
        SmallEq::from_extended(Partition::from_labels(&labels).expect("non-empty"))
    }

    /// Same relation with the least possible threshold.
    pub fn canonical(&self) -> Self {
        let mut t = self.threshold;
        while t > 0 && self.related(t - 1, self.threshold) {
            t -= 1;
        }
        self.with_threshold(t)
    }

    /// Non-empty pairwise intersections of classes; the tails always
    /// intersect, so the result is again small.
    pub fn meet(&self, other: &SmallEq) -> SmallEq {
        let t = self.threshold.max(other.threshold);
        let a = self.with_threshold(t);
        let b = other.with_threshold(t);
        SmallEq::from_extended(a.repr.meet(&b.repr).expect("same universe"))
    }

    /// Materializes the relation on `{0..n-1}`.
    pub fn restrict(&self, n: usize) -> Result<Partition, PartitionError> {
        let labels: Vec<usize> = (0..n).map(|x| self.class_of(x)).collect();
        Partition::from_labels(&labels)
    }

    /// Head elements sharing the tail class, in ascending order.
    pub fn tail_head_members(&self) -> Vec<usize> {
        (0..self.threshold)
            .filter(|&x| self.related(x, self.threshold))
            .collect()
    }

    /// The tail class is infinite, so this holds iff every other class is a
    /// singleton.
    pub fn is_singular(&self) -> bool {
        let tail = self.tail_label();
        (0..self.threshold).all(|x| self.class_of(x) == x || self.class_of(x) == tail)
    }
}

impl PartialEq for SmallEq {
    fn eq(&self, other: &Self) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.threshold == b.threshold && a.repr == b.repr
    }
}

impl Eq for SmallEq {}

impl fmt::Debug for SmallEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmallEq")
            .field("threshold", &self.threshold)
            .field("classes", &self.repr.classes())
            .finish()
    }
}

impl fmt::Display for SmallEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_small(f, self)
    }
}
