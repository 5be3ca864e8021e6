use std::collections::{BTreeSet, HashMap};

use super::dfa::{Dfa, Symbol};

/// Nondeterministic automaton with ε-moves (`None` labels).
#[derive(Debug, Clone, Default)]
pub struct Nfa {
    edges: Vec<Vec<(Option<Symbol>, usize)>>,
    starts: Vec<usize>,
    accepting: Vec<bool>,
}

impl Nfa {
    pub fn new() -> Self {
        Nfa::default()
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.edges.push(Vec::new());
        self.accepting.push(accepting);
        self.edges.len() - 1
    }

    pub fn add_start(&mut self, s: usize) {
        self.starts.push(s);
    }

    pub fn add_edge(&mut self, from: usize, label: Option<Symbol>, to: usize) {
        self.edges[from].push((label, to));
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &(label, t) in &self.edges[s] {
                if label.is_none() && set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut cur: BTreeSet<usize> = self.starts.iter().copied().collect();
        self.closure(&mut cur);
        for &sym in word {
            let mut next: BTreeSet<usize> = cur
                .iter()
                .flat_map(|&s| self.edges[s].iter())
                .filter(|(l, _)| *l == Some(sym))
                .map(|&(_, t)| t)
                .collect();
            self.closure(&mut next);
            cur = next;
        }
        cur.iter().any(|&s| self.accepting[s])
    }

    /// Subset construction over the reachable subsets.
    pub fn determinize(&self) -> Dfa {
        let mut first: BTreeSet<usize> = self.starts.iter().copied().collect();
        self.closure(&mut first);
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut subsets = vec![first.clone()];
        index.insert(first, 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut row = [0; 3];
            for sym in Symbol::ALL {
                let mut next: BTreeSet<usize> = subsets[i]
                    .iter()
                    .flat_map(|&s| self.edges[s].iter())
                    .filter(|(l, _)| *l == Some(sym))
                    .map(|&(_, t)| t)
                    .collect();
                self.closure(&mut next);
                let len = subsets.len();
                let id = *index.entry(next.clone()).or_insert(len);
                if id == len {
                    subsets.push(next);
                }
                row[sym.index()] = id;
            }
            trans.push(row);
            i += 1;
        }
        let accepting = subsets
            .iter()
            .map(|set| set.iter().any(|&s| self.accepting[s]))
            .collect();
        Dfa::from_parts(trans, 0, accepting)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automatic::dfa::binrep;

    #[test]
    fn epsilon_union() {
        // ε to "0" or to "1"
        let mut n = Nfa::new();
        let s = n.add_state(false);
        let a = n.add_state(false);
        let b = n.add_state(false);
        let f = n.add_state(true);
        n.add_start(s);
        n.add_edge(s, None, a);
        n.add_edge(s, None, b);
        n.add_edge(a, Some(Symbol::Zero), f);
        n.add_edge(b, Some(Symbol::One), f);
        assert!(n.accepts(&binrep(0)));
        assert!(n.accepts(&binrep(1)));
        assert!(!n.accepts(&binrep(2)));
        let d = n.determinize();
        for m in 0..8 {
            assert_eq!(d.accepts(&binrep(m)), n.accepts(&binrep(m)));
        }
    }
}
