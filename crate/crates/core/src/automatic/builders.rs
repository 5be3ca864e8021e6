//! Pair automata built from finite classifiers of binary numbers.
//!
//! A [`Classifier`] is a Moore machine reading `binrep(m)` and emitting a
//! label from a finite set. [`pair_dfa`] turns a classifier and a relation
//! on labels into an automaton for `{ m □ n : related(label m, label n) }`.
//! With equality as the relation this is the kernel of the classifier,
//! which is always an automatic equivalence.

use super::dfa::{Dfa, Symbol};

#[derive(Debug, Clone)]
pub struct Classifier {
    pub(crate) trans: Vec<[usize; 2]>,
    pub(crate) start: usize,
    /// `None` for states no canonical word ends in.
    pub(crate) label: Vec<Option<usize>>,
}

impl Classifier {
    pub fn new(trans: Vec<[usize; 2]>, start: usize, label: Vec<Option<usize>>) -> Self {
        assert_eq!(trans.len(), label.len(), "one label per state");
        assert!(start < trans.len());
        Classifier { trans, start, label }
    }

    pub fn classify(&self, m: u64) -> Option<usize> {
        let s = super::dfa::binrep(m)
            .iter()
            .fold(self.start, |q, sym| self.trans[q][sym.index()]);
        self.label[s]
    }

    /// Everything in one class.
    pub fn constant() -> Self {
        Classifier::new(vec![[0, 0]], 0, vec![Some(0)])
    }

    /// Value modulo `k`.
    pub fn modulo(k: usize) -> Self {
        assert!(k >= 1);
        let trans = (0..k).map(|r| [(2 * r) % k, (2 * r + 1) % k]).collect();
        Classifier::new(trans, 0, (0..k).map(Some).collect())
    }

    /// Bit length, with every length `>= cap` sharing the last label.
    /// Labels are `length - 1`, so there are `cap` classes.
    pub fn bit_length_capped(cap: usize) -> Self {
        assert!(cap >= 1);
        // state i = i bits read, capped at cap
        let trans = (0..=cap).map(|i| [(i + 1).min(cap), (i + 1).min(cap)]).collect();
        let mut label: Vec<Option<usize>> = (0..=cap).map(|i| i.checked_sub(1)).collect();
        label[cap] = Some(cap - 1);
        Classifier::new(trans, 0, label)
    }

    /// Label 1 for exactly `i`, 0 otherwise.
    pub fn singleton(i: u64) -> Self {
        let word = super::dfa::binrep(i);
        let len = word.len();
        // states 0..=len: matched prefix length; len+1: mismatch
        let miss = len + 1;
        let mut trans = Vec::with_capacity(len + 2);
        for (pos, &sym) in word.iter().enumerate() {
            let mut row = [miss; 2];
            row[sym.index()] = pos + 1;
            trans.push(row);
        }
        trans.push([miss, miss]);
        trans.push([miss, miss]);
        let mut label = vec![Some(0); len + 2];
        label[len] = Some(1);
        Classifier::new(trans, 0, label)
    }

    /// Label 0 below `t`, 1 from `t` on.
    pub fn below(t: usize) -> Self {
        assert!(t >= 1);
        let trans = (0..=t)
            .map(|v| [(2 * v).min(t), (2 * v + 1).min(t)])
            .collect();
        let label = (0..=t).map(|v| Some(usize::from(v >= t))).collect();
        Classifier::new(trans, 0, label)
    }

    /// Number of set bits, modulo 2.
    pub fn popcount_parity() -> Self {
        Classifier::new(vec![[0, 1], [1, 0]], 0, vec![Some(0), Some(1)])
    }
}

/// Automaton for `{ m □ n : related(label(m), label(n)) }` over well-formed words.
pub fn pair_dfa(c: &Classifier, related: impl Fn(usize, usize) -> bool) -> Dfa {
    let k = c.trans.len();
    let labels: Vec<usize> = {
        let mut l: Vec<usize> = c.label.iter().flatten().copied().collect();
        l.sort_unstable();
        l.dedup();
        l
    };
    // pre copy: 0..k; post copy for label index li: k*(1+li)..; dead last
    let dead = k * (1 + labels.len());
    let post = |li: usize, q: usize| k * (1 + li) + q;
    let mut trans = vec![[dead; 3]; dead + 1];
    let mut accepting = vec![false; dead + 1];
    for q in 0..k {
        trans[q][Symbol::Zero.index()] = c.trans[q][0];
        trans[q][Symbol::One.index()] = c.trans[q][1];
        if let Some(l) = c.label[q] {
            let li = labels.binary_search(&l).expect("label listed");
            trans[q][Symbol::Sep.index()] = post(li, c.start);
        }
        for (li, &l) in labels.iter().enumerate() {
            let s = post(li, q);
            trans[s][Symbol::Zero.index()] = post(li, c.trans[q][0]);
            trans[s][Symbol::One.index()] = post(li, c.trans[q][1]);
            accepting[s] = c.label[q].is_some_and(|l2| related(l, l2));
        }
    }
    Dfa::from_parts(trans, c.start, accepting)
        .intersect(&Dfa::pair_format())
        .minimize()
}

/// The kernel `{ m □ n : label(m) = label(n) }`.
pub fn kernel_dfa(c: &Classifier) -> Dfa {
    pair_dfa(c, |a, b| a == b)
}
