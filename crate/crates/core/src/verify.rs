//! Property suites with a per-check report, used by `equlat verify`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::automatic::checks::axioms_brute_force;
use crate::automatic::{
    check_reflexive, check_symmetric, check_transitive, corpus, family_meet_demo, AutomaticEq,
};
use crate::constructions::{
    atoms_to_singular, truncated_family_meet, Predicate, SingularFamilySpec,
};
use crate::partition::{Partition, SmallEq};
use crate::tm::{self, zoo};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    /// First counterexample, or a short summary when passing.
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.suite.len() + c.name.len() + 1).max().unwrap_or(0);
        for c in &self.checks {
            let label = format!("{}/{}", c.suite, c.name);
            let verdict = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "{verdict}  {label:<width$}  {}", c.detail)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lattice,
    Complements,
    Automatic,
    Tm,
    Constructions,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "lattice" => Suite::Lattice,
            "complements" => Suite::Complements,
            "automatic" => Suite::Automatic,
            "tm" => Suite::Tm,
            "constructions" => Suite::Constructions,
            "all" => Suite::All,
            other => return Err(format!("unknown suite `{other}`")),
        })
    }
}

pub fn run(suite: Suite) -> Report {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Lattice {
        checks.extend(lattice(&LatticeOps::default()));
    }
    if all || suite == Suite::Complements {
        checks.extend(complements());
    }
    if all || suite == Suite::Automatic {
        checks.extend(automatic());
    }
    if all || suite == Suite::Tm {
        checks.extend(turing());
    }
    if all || suite == Suite::Constructions {
        checks.extend(constructions());
    }
    Report { checks }
}

type BinOp = fn(&Partition, &Partition) -> Partition;

/// The operations under test; swapping one out is how the suite's own
/// failure path is exercised.
#[derive(Clone, Copy)]
pub struct LatticeOps {
    pub meet: BinOp,
    pub join: BinOp,
}

impl Default for LatticeOps {
    fn default() -> Self {
        LatticeOps {
            meet: |a, b| a.meet(b).expect("same universe"),
            join: |a, b| a.join(b).expect("same universe"),
        }
    }
}

/// Collects the first failure of each named law.
struct Tally {
    suite: &'static str,
    entries: Vec<(String, usize, Option<String>)>,
}

impl Tally {
    fn new(suite: &'static str) -> Self {
        Tally { suite, entries: Vec::new() }
    }

    fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        let idx = match self.entries.iter().position(|(n, _, _)| n == name) {
            Some(i) => i,
            None => {
                self.entries.push((name.to_owned(), 0, None));
                self.entries.len() - 1
            }
        };
        let entry = &mut self.entries[idx];
        entry.1 += 1;
        if !ok && entry.2.is_none() {
            entry.2 = Some(witness());
        }
    }

    fn finish(self) -> Vec<Check> {
        self.entries
            .into_iter()
            .map(|(name, cases, failure)| Check {
                suite: self.suite,
                name,
                passed: failure.is_none(),
                detail: failure.unwrap_or_else(|| format!("{cases} cases")),
            })
            .collect()
    }
}

/// Closure of the union under alternating chains, computed directly.
fn chain_closure(a: &Partition, b: &Partition) -> Partition {
    let n = a.universe_size();
    let mut r: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| a.related(x, y) || b.related(x, y)).collect())
        .collect();
    for k in 0..n {
        for x in 0..n {
            if r[x][k] {
                for y in 0..n {
                    r[x][y] |= r[k][y];
                }
            }
        }
    }
    Partition::from_relation(n, |x, y| r[x][y]).expect("closure of equivalences")
}

fn lattice_laws(t: &mut Tally, ops: &LatticeOps, a: &Partition, b: &Partition, c: Option<&Partition>) {
    let (meet, join) = (ops.meet, ops.join);
    let show = || format!("a={a:?} b={b:?}");
    t.record("meet-idempotent", meet(a, a) == *a, show);
    t.record("join-idempotent", join(a, a) == *a, show);
    t.record("meet-commutative", meet(a, b) == meet(b, a), show);
    t.record("join-commutative", join(a, b) == join(b, a), show);
    t.record("absorption-meet-join", meet(a, &join(a, b)) == *a, show);
    t.record("absorption-join-meet", join(a, &meet(a, b)) == *a, show);
    let leq = a.leq(b).expect("same universe");
    t.record("leq-iff-meet", leq == (meet(a, b) == *a), show);
    t.record("leq-iff-join", leq == (join(a, b) == *b), show);
    t.record("join-is-chain-closure", join(a, b) == chain_closure(a, b), show);
    if let Some(c) = c {
        let show3 = || format!("a={a:?} b={b:?} c={c:?}");
        t.record("meet-associative", meet(&meet(a, b), c) == meet(a, &meet(b, c)), show3);
        t.record("join-associative", join(&join(a, b), c) == join(a, &join(b, c)), show3);
    }
}

/// Exhaustive over `n <= 4` (triples) and `n = 5` (pairs), then random
/// triples at `n = 10`.
pub fn lattice(ops: &LatticeOps) -> Vec<Check> {
    let mut t = Tally::new("lattice");
    for n in 1..=5 {
        let all = Partition::enumerate(n).expect("n >= 1");
        for a in &all {
            for b in &all {
                if n <= 4 {
                    for c in &all {
                        lattice_laws(&mut t, ops, a, b, Some(c));
                    }
                } else {
                    lattice_laws(&mut t, ops, a, b, None);
                }
            }
        }
    }
    let mut rng = SmallRng::seed_from_u64(0x1a77);
    for _ in 0..2000 {
        let [a, b, c] = [(); 3].map(|_| Partition::random(10, &mut rng).expect("n >= 1"));
        lattice_laws(&mut t, ops, &a, &b, Some(&c));
    }
    t.finish()
}

pub fn complements() -> Vec<Check> {
    let mut t = Tally::new("complements");
    for n in 1..=5 {
        let all = Partition::enumerate(n).expect("n >= 1");
        for e in all.iter().filter(|p| p.is_singular()) {
            for f in &all {
                let fast = e.singular_complement_valid(f).expect("singular");
                let slow = e.is_complement(f).expect("same universe");
                t.record("singular-criterion-matches-definition", fast == slow, || {
                    format!("e={e:?} f={f:?}")
                });
            }
        }
        for e in &all {
            let c = e.least_element_complement();
            t.record("least-element-complement", e.is_complement(&c).unwrap_or(false), || {
                format!("e={e:?} got {c:?}")
            });
        }
    }
    let mut rng = SmallRng::seed_from_u64(0xc0e1);
    for n in [6, 7, 12] {
        for _ in 0..1000 {
            let e = Partition::random(n, &mut rng).expect("n >= 1");
            let c = e.least_element_complement();
            t.record("least-element-complement", e.is_complement(&c).unwrap_or(false), || {
                format!("e={e:?} got {c:?}")
            });
            let atoms = e.atomistic_decomposition();
            let rejoined = crate::partition::join_atoms(n, &atoms).expect("atoms in range");
            t.record("atomistic-decomposition", rejoined == e, || format!("e={e:?}"));
        }
    }
    t.finish()
}

/// Join of two automatic relations, checked on `{0..bound-1}` where the
/// bound exceeds every class representative and join witness involved.
fn join_restriction_agrees(a: &AutomaticEq, b: &AutomaticEq, bound: usize) -> Result<bool, String> {
    let j = a.join(b).map_err(|e| e.to_string())?;
    let witnesses = a.join_witnesses(b).map_err(|e| e.to_string())?;
    let needed = a
        .representatives()
        .into_iter()
        .chain(b.representatives())
        .chain(witnesses.iter().map(|w| w.witness))
        .max()
        .unwrap_or(0) as usize
        + 1;
    if needed > bound {
        return Err(format!("cutoff {needed} exceeds {bound}"));
    }
    let (ra, rb) = (a.restrict(bound).unwrap(), b.restrict(bound).unwrap());
    Ok(j.restrict(bound).unwrap() == ra.join(&rb).unwrap())
}

pub fn automatic() -> Vec<Check> {
    let mut t = Tally::new("automatic");
    let rels = corpus::all();
    for (name, r) in &rels {
        let states = r.dfa().minimize().state_count();
        t.record("class-count-within-state-count", r.class_count() <= states, || {
            format!("{name}: {} classes, {states} states", r.class_count())
        });
        let exact = [check_reflexive(r.dfa()), check_symmetric(r.dfa()), check_transitive(r.dfa())];
        let brute = axioms_brute_force(r.dfa(), 32);
        t.record("checkers-match-brute-force", exact == brute && exact == [true; 3], || {
            format!("{name}: checkers {exact:?} brute force {brute:?}")
        });
    }
    for (name, d) in corpus::non_equivalences() {
        let exact = [check_reflexive(&d), check_symmetric(&d), check_transitive(&d)];
        let brute = axioms_brute_force(&d, 32);
        t.record("non-equivalences-detected", exact == brute && exact != [true; 3], || {
            format!("{name}: checkers {exact:?} brute force {brute:?}")
        });
    }
    const BOUND: usize = 64;
    for (na, a) in &rels {
        for (nb, b) in &rels {
            let (ra, rb) = (a.restrict(BOUND).unwrap(), b.restrict(BOUND).unwrap());
            t.record("meet-commutes-with-restriction", a.meet(b).restrict(BOUND).unwrap() == ra.meet(&rb).unwrap(), || {
                format!("{na} ∧ {nb}")
            });
            let joined = join_restriction_agrees(a, b, BOUND);
            t.record("join-commutes-with-restriction", joined == Ok(true), || {
                format!("{na} ∨ {nb}: {joined:?}")
            });
        }
    }
    let counts = family_meet_demo(16);
    let expected: Vec<usize> = (2..=17).collect();
    t.record("singleton-meets-grow", counts == expected, || format!("{counts:?}"));
    t.finish()
}

pub fn turing() -> Vec<Check> {
    const BOUND: u64 = 1000;
    let mut t = Tally::new("tm");
    let machines = zoo::all();
    for (name, m) in &machines {
        let direct = tm::run(m, "", BOUND).expect("empty input").halt_step();
        let probe = tm::halting_probe(m, "", BOUND).expect("empty input");
        t.record("probe-matches-simulation", probe.steps() == direct, || {
            format!("{name}: probe {:?}, simulation {direct:?}", probe.steps())
        });
        if let tm::ProbeResult::HaltsInSteps { chain, .. } = &probe {
            let ok = chain.verify(&tm::approx_even(m), &tm::approx_odd(m))
                && chain.points.last().is_some_and(|p| *p == BigUint::default());
            t.record("probe-chain-verifies", ok, || name.to_string());
        }
        for c in tm::trajectory(m, "", 50).expect("empty input") {
            for clock in [0u64, 3, 1 << 33] {
                let x = tm::pack(m, clock, &c);
                let back = tm::unpack(m, &x);
                t.record("pack-unpack-inverse", back == tm::Point::At { clock, config: c.clone() }, || {
                    format!("{name}: clock {clock}")
                });
            }
        }
    }
    let specs: Vec<tm::TmSpec> = machines.iter().map(|(_, m)| m.clone()).collect();
    for k in [1u64, 10, 100] {
        let p = tm::nonhalt_family_meet(k, &specs).expect("non-empty zoo");
        let running: Vec<usize> = (0..specs.len())
            .filter(|&i| tm::run(&specs[i], "", k).expect("empty input").halt_step().is_none())
            .collect();
        let big: Vec<usize> = (0..specs.len())
            .filter(|&i| (0..specs.len()).any(|j| j != i && p.related(i, j)))
            .collect();
        t.record("nonhalt-meet-class", big == running, || {
            format!("K={k}: class {big:?}, running {running:?}")
        });
    }
    t.finish()
}

fn closed_form(spec: &SingularFamilySpec, k: usize) -> SmallEq {
    let cut = spec.cuts()[k];
    let members = spec.predicate().members_below(cut).expect("total below the cut");
    SmallEq::singular_with_tail(cut, &members).expect("members below the cut")
}

pub fn constructions() -> Vec<Check> {
    let mut t = Tally::new("constructions");
    let bitmask = Predicate::Bitmask((0..256).map(|x| x % 3 == 1 || x == 4).collect());
    let cut_sequences = [
        vec![2, 4, 8, 16, 32, 64, 128],
        vec![1, 2, 3, 5, 8, 13, 21],
        vec![3, 10, 11, 40, 41, 100, 200],
    ];
    for p in [Predicate::Even, Predicate::Prime, bitmask] {
        for cuts in &cut_sequences {
            let spec = SingularFamilySpec::new(p.clone(), cuts.clone()).expect("increasing cuts");
            for k in 0..cuts.len() {
                let got = truncated_family_meet(&spec, k);
                let ok = got.as_ref().is_ok_and(|g| *g == closed_form(&spec, k) && g.is_singular());
                t.record("family-meet-closed-form", ok, || format!("{p:?} cuts {cuts:?} K={k}"));
            }
        }
    }
    let mut rng = SmallRng::seed_from_u64(0xa70);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=10);
        let mut class: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if class.len() < 2 {
            class = vec![0, n - 1];
        }
        let got = atoms_to_singular(&class, n);
        let want = Partition::singular(n, &class).expect("in range");
        t.record("atoms-join-to-singular", got.as_ref() == Ok(&want), || {
            format!("class {class:?} n={n}")
        });
    }
    t.finish()
}
