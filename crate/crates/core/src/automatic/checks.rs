//! Exact decision procedures for the equivalence axioms of a pair language.
//!
//! Only well-formed words `binrep(m) □ binrep(n)` denote pairs, so the
//! symmetry and transitivity checks look at `L(D) ∩ format`.

use std::collections::{HashSet, VecDeque};

use super::dfa::{pair_word, Dfa, Symbol};
use super::nfa::Nfa;

/// `L(dfa)` contains only well-formed pair words.
pub fn check_format(dfa: &Dfa) -> bool {
    dfa.product(&Dfa::pair_format(), |a, f| a && !f).is_empty()
}

/// The pair language restricted to well-formed words, minimized.
pub(crate) fn pair_part(dfa: &Dfa) -> Dfa {
    dfa.intersect(&Dfa::pair_format()).minimize()
}

/// `w □ w` is accepted for every canonical `w`.
///
/// Enumerates the transition functions `g_w` of the canonical words `w`
/// (the reachable part of the transition monoid) and checks
/// `g_w(δ(g_w(start), □))` for each. Exponential in the worst case.
pub fn check_reflexive(dfa: &Dfa) -> bool {
    let k = dfa.state_count();
    let column = |sym: Symbol| -> Vec<usize> { (0..k).map(|s| dfa.next(s, sym)).collect() };
    let holds = |g: &Vec<usize>| dfa.is_accepting(g[dfa.next(g[dfa.start()], Symbol::Sep)]);

    if !holds(&column(Symbol::Zero)) {
        return false;
    }
    // words 1(0|1)*
    let g1 = column(Symbol::One);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([g1.clone()]);
    let mut queue = VecDeque::from([g1]);
    while let Some(g) = queue.pop_front() {
        if !holds(&g) {
            return false;
        }
        for sym in Symbol::BITS {
            let h: Vec<usize> = g.iter().map(|&s| dfa.next(s, sym)).collect();
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    true
}

/// Sampled reflexivity over `m < bound`. Not a proof.
pub fn check_reflexive_sampled(dfa: &Dfa, bound: u64) -> bool {
    (0..bound).all(|m| dfa.accepts(&pair_word(m, m)))
}

/// States reached from the start by canonical binary words.
pub(crate) fn canonical_pre_states(dfa: &Dfa) -> Vec<usize> {
    let canon = Dfa::canonical_numbers();
    // walk the product by hand to keep the component states
    let mut seen = HashSet::from([(dfa.start(), canon.start())]);
    let mut queue = VecDeque::from([(dfa.start(), canon.start())]);
    let mut out = Vec::new();
    while let Some((s, c)) = queue.pop_front() {
        if canon.is_accepting(c) && !out.contains(&s) {
            out.push(s);
        }
        for sym in Symbol::BITS {
            let p = (dfa.next(s, sym), canon.next(c, sym));
            if seen.insert(p) {
                queue.push_back(p);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Canonical words `u` with `δ(start, u) = s`.
pub(crate) fn pre_language(dfa: &Dfa, s: usize) -> Dfa {
    dfa.without_separator()
        .with_accepting(&[s])
        .intersect(&Dfa::canonical_numbers())
}

/// Canonical words `v` accepted after reading `u □` with `δ(start, u) = s`.
pub(crate) fn post_language(dfa: &Dfa, s: usize) -> Dfa {
    let after = dfa.next(s, Symbol::Sep);
    let stripped = dfa.without_separator();
    let accepting = stripped.accepting_states();
    stripped
        .with_start(after)
        .with_accepting(&accepting)
        .intersect(&Dfa::canonical_numbers())
}

/// Builds the swapped language `{v □ u : u □ v ∈ L}` as an ε-NFA, as the
/// union over pre-separator states `s` of `R_s □ L_s`.
pub(crate) fn swap_nfa(pairs: &Dfa) -> Nfa {
    let k = pairs.state_count();
    let mut nfa = Nfa::new();
    let root = nfa.add_state(false);
    nfa.add_start(root);
    for s in 0..k {
        // copy reading v from δ(s, □), then copy reading u from the start
        let post: Vec<usize> = (0..k).map(|_| nfa.add_state(false)).collect();
        let pre: Vec<usize> = (0..k).map(|q| nfa.add_state(q == s)).collect();
        nfa.add_edge(root, None, post[pairs.next(s, Symbol::Sep)]);
        for q in 0..k {
            for sym in Symbol::BITS {
                nfa.add_edge(post[q], Some(sym), post[pairs.next(q, sym)]);
                nfa.add_edge(pre[q], Some(sym), pre[pairs.next(q, sym)]);
            }
            if pairs.is_accepting(q) {
                nfa.add_edge(post[q], Some(Symbol::Sep), pre[pairs.start()]);
            }
        }
    }
    nfa
}

/// The pair relation (on well-formed words) equals its swap.
pub fn check_symmetric(dfa: &Dfa) -> bool {
    let pairs = pair_part(dfa);
    let swapped = swap_nfa(&pairs).determinize();
    pairs.equivalent(&swapped.intersect(&Dfa::pair_format()))
}

/// `m ~ n` and `n ~ p` imply `m ~ p`.
///
/// With `A_s` the post-separator language of pre-state `s` and `L_t` the
/// canonical words reaching `t`, the relation is transitive iff for all
/// canonically reachable `s, t`: `L_t ∩ A_s ≠ ∅` implies `A_t ⊆ A_s`.
/// Under symmetry this is the equality `A_s = A_t`.
pub fn check_transitive(dfa: &Dfa) -> bool {
    let pairs = pair_part(dfa);
    let states = canonical_pre_states(&pairs);
    let post: Vec<Dfa> = states.iter().map(|&s| post_language(&pairs, s)).collect();
    let pre: Vec<Dfa> = states.iter().map(|&s| pre_language(&pairs, s)).collect();
    for (i, a_s) in post.iter().enumerate() {
        for (j, l_t) in pre.iter().enumerate() {
            if i != j && !l_t.intersect(a_s).is_empty() && !post[j].included_in(a_s) {
                return false;
            }
        }
    }
    true
}

/// Brute-force reference: the three axioms over `{0..bound-1}`.
pub fn axioms_brute_force(dfa: &Dfa, bound: u64) -> [bool; 3] {
    let n = bound as usize;
    let mut rel = vec![false; n * n];
    for m in 0..bound {
        for k in 0..bound {
            rel[m as usize * n + k as usize] = dfa.accepts(&pair_word(m, k));
        }
    }
    let r = |a: usize, b: usize| rel[a * n + b];
    let reflexive = (0..n).all(|a| r(a, a));
    let symmetric = (0..n).all(|a| (0..n).all(|b| r(a, b) == r(b, a)));
    let transitive = (0..n).all(|a| {
        (0..n).all(|b| !r(a, b) || (0..n).all(|c| !r(b, c) || r(a, c)))
    });
    [reflexive, symmetric, transitive]
}

/// Words accepted that are not well formed, for diagnostics.
pub fn format_violation(dfa: &Dfa) -> Option<String> {
    dfa.product(&Dfa::pair_format(), |a, f| a && !f)
        .least_word()
        .map(|w| super::dfa::word_string(&w))
}
