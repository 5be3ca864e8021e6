use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::AutomatonError;

/// Input symbols: the two bits and the separator `□` (written `B` in files).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero = 0,
    One = 1,
    Sep = 2,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Sep];
    pub const BITS: [Symbol; 2] = [Symbol::Zero, Symbol::One];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Sep => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            'B' | '□' => Some(Symbol::Sep),
            _ => None,
        }
    }
}

/// Canonical binary representation, most significant bit first; `0` is `"0"`.
pub fn binrep(m: u64) -> Vec<Symbol> {
    if m == 0 {
        return vec![Symbol::Zero];
    }
    let bits = 64 - m.leading_zeros();
    (0..bits)
        .rev()
        .map(|i| if (m >> i) & 1 == 1 { Symbol::One } else { Symbol::Zero })
        .collect()
}

/// `binrep(m) □ binrep(n)`.
pub fn pair_word(m: u64, n: u64) -> Vec<Symbol> {
    let mut w = binrep(m);
    w.push(Symbol::Sep);
    w.extend(binrep(n));
    w
}

/// Reads a bit word back as a number; `None` on separators or overflow.
pub fn word_value(word: &[Symbol]) -> Option<u64> {
    if word.len() > 64 {
        return None;
    }
    word.iter().try_fold(0u64, |acc, s| match s {
        Symbol::Zero => Some(acc << 1),
        Symbol::One => Some((acc << 1) | 1),
        Symbol::Sep => None,
    })
}

pub fn word_string(word: &[Symbol]) -> String {
    word.iter().map(|s| s.as_char()).collect()
}

/// A complete deterministic automaton over `{0, 1, □}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    trans: Vec<[usize; 3]>,
    start: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(trans: Vec<[usize; 3]>, start: usize, accepting: &[usize]) -> Result<Self, AutomatonError> {
        let k = trans.len();
        if k == 0 {
            return Err(AutomatonError::InvalidDfa("no states".into()));
        }
        if start >= k {
            return Err(AutomatonError::InvalidDfa(format!("start state {start} out of range")));
        }
        if let Some((s, _)) = trans.iter().enumerate().find(|(_, row)| row.iter().any(|&t| t >= k)) {
            return Err(AutomatonError::InvalidDfa(format!(
                "state {s} has a transition out of range"
            )));
        }
        let mut acc = vec![false; k];
        for &a in accepting {
            if a >= k {
                return Err(AutomatonError::InvalidDfa(format!("accepting state {a} out of range")));
            }
            acc[a] = true;
        }
        Ok(Dfa {
            trans,
            start,
            accepting: acc,
        })
    }

    pub(crate) fn from_parts(trans: Vec<[usize; 3]>, start: usize, accepting: Vec<bool>) -> Self {
        debug_assert_eq!(trans.len(), accepting.len());
        Dfa {
            trans,
            start,
            accepting,
        }
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.state_count()).filter(|&s| self.accepting[s]).collect()
    }

    pub fn next(&self, s: usize, sym: Symbol) -> usize {
        self.trans[s][sym.index()]
    }

    pub fn run_from(&self, s: usize, word: &[Symbol]) -> usize {
        word.iter().fold(s, |q, &sym| self.next(q, sym))
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.accepting[self.run_from(self.start, word)]
    }

    pub fn with_start(&self, start: usize) -> Dfa {
        Dfa {
            start,
            ..self.clone()
        }
    }

    pub fn with_accepting(&self, accepting: &[usize]) -> Dfa {
        let mut acc = vec![false; self.state_count()];
        for &a in accepting {
            acc[a] = true;
        }
        Dfa {
            accepting: acc,
            ..self.clone()
        }
    }

    /// Same automaton with every `□` transition sent to a fresh dead state.
    pub fn without_separator(&self) -> Dfa {
        let dead = self.state_count();
        let mut trans: Vec<[usize; 3]> = self.trans.iter().map(|r| [r[0], r[1], dead]).collect();
        trans.push([dead; 3]);
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Dfa::from_parts(trans, self.start, accepting)
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            accepting: self.accepting.iter().map(|a| !a).collect(),
            ..self.clone()
        }
    }

    /// Reachable part of the synchronous product, accepting by `combine`.
    pub fn product(&self, other: &Dfa, combine: impl Fn(bool, bool) -> bool) -> Dfa {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        index.insert((self.start, other.start), 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            let mut row = [0; 3];
            for sym in Symbol::ALL {
                let p = (self.next(a, sym), other.next(b, sym));
                let len = pairs.len();
                let id = *index.entry(p).or_insert(len);
                if id == len {
                    pairs.push(p);
                }
                row[sym.index()] = id;
            }
            trans.push(row);
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(a, b)| combine(self.accepting[a], other.accepting[b]))
            .collect();
        Dfa::from_parts(trans, 0, accepting)
    }

    pub fn intersect(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && b)
    }

    /// States reachable from the start, in breadth-first order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.start];
        seen[self.start] = true;
        let mut i = 0;
        while i < order.len() {
            for sym in Symbol::ALL {
                let t = self.next(order[i], sym);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    pub fn is_empty(&self) -> bool {
        self.reachable().into_iter().all(|s| !self.accepting[s])
    }

    /// Language equality, by emptiness of the symmetric difference.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.product(other, |a, b| a != b).is_empty()
    }

    /// `L(self) ⊆ L(other)`.
    pub fn included_in(&self, other: &Dfa) -> bool {
        self.product(other, |a, b| a && !b).is_empty()
    }

    /// The minimal complete automaton, states numbered in breadth-first
    /// order from the start, so equal languages give equal values.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let mut block: HashMap<usize, usize> = reach
            .iter()
            .map(|&s| (s, usize::from(self.accepting[s])))
            .collect();
        let mut count = 0;
        loop {
            let mut sig_index: HashMap<(usize, [usize; 3]), usize> = HashMap::new();
            let mut next_block = HashMap::with_capacity(reach.len());
            for &s in &reach {
                let sig = (
                    block[&s],
                    Symbol::ALL.map(|sym| block[&self.next(s, sym)]),
                );
                let len = sig_index.len();
                next_block.insert(s, *sig_index.entry(sig).or_insert(len));
            }
            let new_count = sig_index.len();
            block = next_block;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // renumber blocks breadth-first from the start block
        let mut order: Vec<usize> = Vec::new();
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut rep_of: HashMap<usize, usize> = HashMap::new();
        for &s in &reach {
            rep_of.entry(block[&s]).or_insert(s);
        }
        let mut queue = VecDeque::from([block[&self.start]]);
        number.insert(block[&self.start], 0);
        while let Some(b) = queue.pop_front() {
            order.push(b);
            let s = rep_of[&b];
            for sym in Symbol::ALL {
                let nb = block[&self.next(s, sym)];
                if !number.contains_key(&nb) {
                    number.insert(nb, number.len());
                    queue.push_back(nb);
                }
            }
        }
        let trans = order
            .iter()
            .map(|b| Symbol::ALL.map(|sym| number[&block[&self.next(rep_of[b], sym)]]))
            .collect();
        let accepting = order.iter().map(|b| self.accepting[rep_of[b]]).collect();
        Dfa::from_parts(trans, 0, accepting)
    }

    /// Shortest accepted word, ties broken lexicographically with `0 < 1 < □`.
    /// Among canonical binary words this is the numerically least one.
    pub fn least_word(&self) -> Option<Vec<Symbol>> {
        let k = self.state_count();
        // distance to acceptance, by backward breadth-first search
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); k];
        for s in 0..k {
            for sym in Symbol::ALL {
                rev[self.next(s, sym)].push(s);
            }
        }
        let mut dist = vec![usize::MAX; k];
        let mut queue = VecDeque::new();
        for s in 0..k {
            if self.accepting[s] {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(t) = queue.pop_front() {
            for &s in &rev[t] {
                if dist[s] == usize::MAX {
                    dist[s] = dist[t] + 1;
                    queue.push_back(s);
                }
            }
        }
        if dist[self.start] == usize::MAX {
            return None;
        }
        let mut word = Vec::with_capacity(dist[self.start]);
        let mut s = self.start;
        while dist[s] > 0 {
            let sym = Symbol::ALL
                .into_iter()
                .find(|&sym| dist[self.next(s, sym)] == dist[s] - 1)
                .expect("a distance-decreasing edge exists");
            word.push(sym);
            s = self.next(s, sym);
        }
        Some(word)
    }

    /// Accepts exactly the canonical binary representations (no `□`).
    pub fn canonical_numbers() -> Dfa {
        // 0: start, 1: read "0", 2: read "1…", 3: dead
        Dfa::from_parts(
            vec![[1, 2, 3], [3, 3, 3], [2, 2, 3], [3, 3, 3]],
            0,
            vec![false, true, true, false],
        )
    }

    /// Accepts exactly the well-formed pair words `binrep(m) □ binrep(n)`.
    pub fn pair_format() -> Dfa {
        // 0 start, 1 "0", 2 "1…", 3 after □, 4 "…□0", 5 "…□1…", 6 dead
        Dfa::from_parts(
            vec![
                [1, 2, 6],
                [6, 6, 3],
                [2, 2, 3],
                [4, 5, 6],
                [6, 6, 6],
                [5, 5, 6],
                [6, 6, 6],
            ],
            0,
            vec![false, false, false, false, true, true, false],
        )
    }

    #[cfg(test)]
    pub(crate) fn rows(&self) -> &[[usize; 3]] {
        &self.trans
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dfa")
            .field("states", &self.state_count())
            .field("start", &self.start)
            .field("accept", &self.accepting_states())
            .field("trans", &self.trans)
            .finish()
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_dfa(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Vec<Symbol> {
        s.chars().map(|c| Symbol::from_char(c).unwrap()).collect()
    }

    #[test]
    fn binrep_is_canonical() {
        assert_eq!(word_string(&binrep(0)), "0");
        assert_eq!(word_string(&binrep(6)), "110");
        assert_eq!(word_string(&pair_word(1, 4)), "1B100");
        assert_eq!(word_value(&binrep(u64::MAX)), Some(u64::MAX));
        assert_eq!(word_value(&word("1B1")), None);
    }

    #[test]
    fn format_language() {
        let f = Dfa::pair_format();
        for (w, ok) in [
            ("0B0", true),
            ("10B111", true),
            ("B", false),
            ("01B1", false),
            ("1B01", false),
            ("1B", false),
            ("1B1B1", false),
        ] {
            assert_eq!(f.accepts(&word(w)), ok, "{w}");
        }
    }

    #[test]
    fn minimize_is_idempotent_and_equivalent() {
        // pair_format with a duplicated dead state
        let mut rows = Dfa::pair_format().rows().to_vec();
        rows[6] = [7, 7, 7];
        rows.push([6, 6, 6]);
        let d = Dfa::new(rows, 0, &[4, 5]).unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 7);
        assert_eq!(m.minimize(), m);
        assert!(d.equivalent(&m));
        assert!(m.equivalent(&Dfa::pair_format()));
    }

    #[test]
    fn least_word_is_numerically_least() {
        let canon = Dfa::canonical_numbers();
        assert_eq!(canon.least_word().map(|w| word_value(&w)), Some(Some(0)));
        let odd = Dfa::new(vec![[0, 1, 2], [0, 1, 2], [2, 2, 2]], 0, &[1])
            .unwrap()
            .intersect(&canon);
        assert_eq!(odd.least_word().and_then(|w| word_value(&w)), Some(1));
        let none = Dfa::new(vec![[0, 0, 0]], 0, &[]).unwrap();
        assert_eq!(none.least_word(), None);
        assert!(none.is_empty());
    }

    #[test]
    fn new_validates_ranges() {
        assert!(Dfa::new(vec![], 0, &[]).is_err());
        assert!(Dfa::new(vec![[0, 0, 0]], 1, &[]).is_err());
        assert!(Dfa::new(vec![[0, 1, 0]], 0, &[]).is_err());
        assert!(Dfa::new(vec![[0, 0, 0]], 0, &[3]).is_err());
    }
}
