//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Every check compares library output with an oracle
//! written here, exactly.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use equlat_core::automatic::{corpus, family_meet_demo, pair_word, singleton_family, AutomaticEq};
use equlat_core::constructions::{atoms_to_singular, truncated_family_meet, Predicate, SingularFamilySpec};
use equlat_core::tm::{self, zoo, Move, ProbeResult, TmSpec};
use equlat_core::Partition;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// Set partitions of `{0..n-1}` by block insertion.
fn set_partitions(n: usize) -> Vec<Partition> {
    let mut acc: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for labels in &acc {
            let blocks = labels.iter().max().map_or(0, |m| m + 1);
            for b in 0..=blocks {
                let mut l = labels.clone();
                l.push(b);
                next.push(l);
            }
        }
        acc = next;
    }
    acc.iter().map(|l| Partition::from_labels(l).unwrap()).collect()
}

fn random_partition(rng: &mut SmallRng, n: usize) -> Partition {
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    Partition::from_labels(&labels).unwrap()
}

/// Relation matrix of the join: closure of the union under alternating chains.
fn chain_closure(a: &Partition, b: &Partition) -> Vec<Vec<bool>> {
    let n = a.universe_size();
    let mut r: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| a.related(x, y) || b.related(x, y)).collect())
        .collect();
    for k in 0..n {
        for x in 0..n {
            if r[x][k] {
                for y in 0..n {
                    if r[k][y] {
                        r[x][y] = true;
                    }
                }
            }
        }
    }
    r
}

fn same_relation(p: &Partition, r: &[Vec<bool>]) -> bool {
    let n = p.universe_size();
    (0..n).all(|x| (0..n).all(|y| p.related(x, y) == r[x][y]))
}

/// Complement by definition: only the diagonal is shared and the chain
/// closure of the union is everything.
fn complement_oracle(a: &Partition, b: &Partition) -> bool {
    let n = a.universe_size();
    let meet_bottom = (0..n).all(|x| (0..n).all(|y| x == y || !(a.related(x, y) && b.related(x, y))));
    meet_bottom && chain_closure(a, b).iter().all(|row| row.iter().all(|&v| v))
}

fn laws_hold(a: &Partition, b: &Partition, c: &Partition) -> Result<(), &'static str> {
    let m = |x: &Partition, y: &Partition| x.meet(y).unwrap();
    let j = |x: &Partition, y: &Partition| x.join(y).unwrap();
    let checks: [(&'static str, bool); 10] = [
        ("meet idempotence", m(a, a) == *a),
        ("join idempotence", j(a, a) == *a),
        ("meet commutativity", m(a, b) == m(b, a)),
        ("join commutativity", j(a, b) == j(b, a)),
        ("meet associativity", m(&m(a, b), c) == m(a, &m(b, c))),
        ("join associativity", j(&j(a, b), c) == j(a, &j(b, c))),
        ("absorption a∧(a∨b)", m(a, &j(a, b)) == *a),
        ("absorption a∨(a∧b)", j(a, &m(a, b)) == *a),
        ("leq iff meet", a.leq(b).unwrap() == (m(a, b) == *a)),
        ("leq iff join", a.leq(b).unwrap() == (j(a, b) == *b)),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(name),
        None => Ok(()),
    }
}

/// The laws over all triples of one universe size, with meet and join
/// tabulated once from the library and looked up by index.
fn laws_exhaustive(n: usize) -> Result<usize, String> {
    let all = set_partitions(n);
    let index: HashMap<&Partition, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let k = all.len();
    let mut meet = vec![0usize; k * k];
    let mut join = vec![0usize; k * k];
    let mut leq = vec![false; k * k];
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            meet[i * k + j] = index[&a.meet(b).unwrap()];
            join[i * k + j] = index[&a.join(b).unwrap()];
            leq[i * k + j] = a.leq(b).unwrap();
        }
    }
    let (m, jn) = (|i: usize, j: usize| meet[i * k + j], |i: usize, j: usize| join[i * k + j]);
    let fail = |law: &str, i: usize, j: usize| format!("{law} fails at n={n}: {:?} {:?}", all[i], all[j]);
    for a in 0..k {
        if m(a, a) != a {
            return Err(fail("meet idempotence", a, a));
        }
        if jn(a, a) != a {
            return Err(fail("join idempotence", a, a));
        }
        for b in 0..k {
            let checks = [
                ("meet commutativity", m(a, b) == m(b, a)),
                ("join commutativity", jn(a, b) == jn(b, a)),
                ("absorption a∧(a∨b)", m(a, jn(a, b)) == a),
                ("absorption a∨(a∧b)", jn(a, m(a, b)) == a),
                ("leq iff meet", leq[a * k + b] == (m(a, b) == a)),
                ("leq iff join", leq[a * k + b] == (jn(a, b) == b)),
            ];
            if let Some((law, _)) = checks.iter().find(|(_, ok)| !ok) {
                return Err(fail(law, a, b));
            }
            for c in 0..k {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(format!("meet associativity fails at n={n}: {:?} {:?} {:?}", all[a], all[b], all[c]));
                }
                if jn(jn(a, b), c) != jn(a, jn(b, c)) {
                    return Err(format!("join associativity fails at n={n}: {:?} {:?} {:?}", all[a], all[b], all[c]));
                }
            }
        }
    }
    Ok(k * k * k)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cases = 0usize;
    for n in 1..=5 {
        match laws_exhaustive(n) {
            Ok(c) => cases += c,
            Err(e) => return outcome(false, e),
        }
    }
    let mut rng = SmallRng::seed_from_u64(1);
    for _ in 0..10_000 {
        let [a, b, c] = [(); 3].map(|_| random_partition(&mut rng, 10));
        if let Err(law) = laws_hold(&a, &b, &c) {
            return outcome(false, format!("{law} fails at n=10: {a:?} {b:?} {c:?}"));
        }
        cases += 1;
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < Duration::from_secs(10),
        format!("{cases} triples (exhaustive n<=5, 10^4 random n=10), {elapsed:.2?} (target < 10 s)"),
    )
}

fn criterion_2() -> Outcome {
    let mut pairs = 0;
    for n in 1..=5 {
        let all = set_partitions(n);
        for a in &all {
            for b in &all {
                if !same_relation(&a.join(b).unwrap(), &chain_closure(a, b)) {
                    return outcome(false, format!("join differs from chain closure: {a:?} {b:?}"));
                }
                pairs += 1;
            }
        }
    }
    outcome(true, format!("{pairs} pairs, n<=5, zero discrepancies"))
}

fn criterion_3() -> Outcome {
    let mut pairs = 0;
    for n in 1..=5 {
        let all = set_partitions(n);
        for e in all.iter().filter(|p| p.classes().iter().filter(|c| c.len() > 1).count() == 1) {
            for f in &all {
                let fast = e.singular_complement_valid(f).unwrap();
                let full = e.is_complement(f).unwrap();
                if fast != full || full != complement_oracle(e, f) {
                    return outcome(false, format!("mismatch at {e:?} {f:?}"));
                }
                pairs += 1;
            }
        }
    }
    outcome(true, format!("{pairs} (singular E, F) pairs, n<=5, zero discrepancies"))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    let check = |e: &Partition| {
        let c = e.least_element_complement();
        e.is_complement(&c).unwrap() && complement_oracle(e, &c)
    };
    for n in 1..=5 {
        for e in set_partitions(n) {
            if !check(&e) {
                return outcome(false, format!("not a complement of {e:?}"));
            }
            count += 1;
        }
    }
    let mut rng = SmallRng::seed_from_u64(4);
    for n in [6, 7, 12] {
        for _ in 0..10_000 {
            let e = random_partition(&mut rng, n);
            if !check(&e) {
                return outcome(false, format!("not a complement of {e:?}"));
            }
            count += 1;
        }
    }
    outcome(true, format!("{count} partitions (exhaustive n<=5, 10^4 random each at n=6,7,12)"))
}

/// Axioms of the relation accepted by a pair automaton on `{0..bound-1}`.
fn brute_axioms(r: &AutomaticEq, bound: u64) -> [bool; 3] {
    let n = bound as usize;
    let t: Vec<Vec<bool>> = (0..bound)
        .map(|m| (0..bound).map(|k| r.dfa().accepts(&pair_word(m, k))).collect())
        .collect();
    [
        (0..n).all(|a| t[a][a]),
        (0..n).all(|a| (0..n).all(|b| t[a][b] == t[b][a])),
        (0..n).all(|a| (0..n).filter(|&b| t[a][b]).all(|b| (0..n).all(|c| !t[b][c] || t[a][c]))),
    ]
}

fn criterion_5() -> Outcome {
    use equlat_core::automatic::{check_reflexive, check_symmetric, check_transitive};
    let rels = corpus::all();
    if rels.len() < 8 {
        return outcome(false, format!("corpus has {} relations", rels.len()));
    }
    for (name, r) in &rels {
        let states = r.dfa().minimize().state_count();
        if r.class_count() > states {
            return outcome(false, format!("{name}: {} classes > {states} states", r.class_count()));
        }
        let exact = [check_reflexive(r.dfa()), check_symmetric(r.dfa()), check_transitive(r.dfa())];
        let brute = brute_axioms(r, 64);
        if exact != brute {
            return outcome(false, format!("{name}: checkers {exact:?}, brute force {brute:?}"));
        }
    }
    for (name, d) in corpus::non_equivalences() {
        let exact = [check_reflexive(&d), check_symmetric(&d), check_transitive(&d)];
        let n = 64usize;
        let t: Vec<Vec<bool>> = (0..64u64)
            .map(|m| (0..64u64).map(|k| d.accepts(&pair_word(m, k))).collect())
            .collect();
        let brute = [
            (0..n).all(|a| t[a][a]),
            (0..n).all(|a| (0..n).all(|b| t[a][b] == t[b][a])),
            (0..n).all(|a| (0..n).filter(|&b| t[a][b]).all(|b| (0..n).all(|c| !t[b][c] || t[a][c]))),
        ];
        if exact != brute {
            return outcome(false, format!("{name}: checkers {exact:?}, brute force {brute:?}"));
        }
    }
    outcome(
        true,
        format!(
            "{} corpus relations (+{} non-equivalences): classes <= states, axioms match brute force on m,n,p < 64",
            rels.len(),
            corpus::non_equivalences().len()
        ),
    )
}

fn criterion_6() -> Outcome {
    const N: usize = 64;
    let rels = corpus::all();
    let mut max_cutoff = 0;
    for (na, a) in &rels {
        for (nb, b) in &rels {
            let (ra, rb) = (a.restrict(N).unwrap(), b.restrict(N).unwrap());
            if a.meet(b).restrict(N).unwrap() != ra.meet(&rb).unwrap() {
                return outcome(false, format!("meet {na} {nb} differs on {{0..63}}"));
            }
            let witnesses = a.join_witnesses(b).unwrap();
            let cutoff = a
                .representatives()
                .into_iter()
                .chain(b.representatives())
                .chain(witnesses.iter().map(|w| w.witness))
                .max()
                .unwrap() as usize
                + 1;
            max_cutoff = max_cutoff.max(cutoff);
            if cutoff > N {
                return outcome(false, format!("join {na} {nb} needs cutoff {cutoff} > {N}"));
            }
            if a.join(b).unwrap().restrict(N).unwrap() != ra.join(&rb).unwrap() {
                return outcome(false, format!("join {na} {nb} differs on {{0..63}}"));
            }
        }
    }
    outcome(
        true,
        format!("{} pairs, meet and join agree on {{0..63}} (largest cutoff {max_cutoff})", rels.len().pow(2)),
    )
}

fn criterion_7() -> Outcome {
    let counts = family_meet_demo(16);
    let mut acc = singleton_family(1);
    for k in 1..=16u64 {
        if k > 1 {
            acc = acc.meet(&singleton_family(k));
        }
        // on {0..63} the classes are {1}, …, {k} and the rest
        let restricted = acc.restrict(64).unwrap().class_count();
        if counts[k as usize - 1] != k as usize + 1 || restricted != k as usize + 1 {
            return outcome(false, format!("k={k}: count {}, restricted {restricted}", counts[k as usize - 1]));
        }
    }
    outcome(true, format!("class counts {counts:?} = k+1 for k=1..16"))
}

/// Halt step by direct simulation on a sparse tape, left-bounded.
fn simulate(m: &TmSpec, budget: u64) -> Option<u64> {
    let mut tape: HashMap<usize, usize> = HashMap::new();
    let (mut state, mut head) = (m.start(), 0usize);
    for t in 0..=budget {
        if m.is_halting(state) {
            return Some(t);
        }
        let rule = m.rule(state, *tape.get(&head).unwrap_or(&0)).unwrap();
        tape.insert(head, rule.write);
        head = match rule.movement {
            Move::Left => head.saturating_sub(1),
            Move::Right => head + 1,
            Move::Stay => head,
        };
        state = rule.next;
    }
    None
}

fn criterion_8() -> Outcome {
    const BOUND: u64 = 1000;
    let start = Instant::now();
    let machines = zoo::all();
    let halting = machines.iter().filter(|(_, m)| simulate(m, BOUND).is_some()).count();
    let looping = machines.len() - halting;
    if machines.len() < 10 || halting < 3 || looping < 3 {
        return outcome(false, format!("zoo: {} machines, {halting} halting, {looping} looping", machines.len()));
    }
    for (name, m) in &machines {
        let direct = simulate(m, BOUND);
        let probe = tm::halting_probe(m, "", BOUND).unwrap();
        if probe.steps() != direct {
            return outcome(false, format!("{name}: probe {:?}, simulation {direct:?}", probe.steps()));
        }
        if let ProbeResult::HaltsInSteps { chain, .. } = &probe {
            let (even, odd) = (tm::approx_even(m), tm::approx_odd(m));
            let links_ok = chain.points.windows(2).zip(&chain.sides).all(|(w, side)| match side {
                equlat_core::decider::Side::First => even.decide(&w[0], &w[1]),
                equlat_core::decider::Side::Second => odd.decide(&w[0], &w[1]),
            });
            let ends_at_sink = chain.points.last().is_some_and(|p| *p == num_bigint::BigUint::default());
            if !links_ok || !ends_at_sink {
                return outcome(false, format!("{name}: chain does not verify"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < Duration::from_secs(60),
        format!(
            "{} machines ({halting} halting, {looping} looping) match simulation at bound {BOUND}, chains verify, {elapsed:.2?} (target < 60 s)",
            machines.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let is_prime = |x: usize| x >= 2 && (2..x).all(|d| x % d != 0);
    let mask: Vec<bool> = (0..256).map(|x| x % 7 == 3 || x % 11 == 0).collect();
    let preds: Vec<(Predicate, Box<dyn Fn(usize) -> bool>)> = vec![
        (Predicate::Even, Box::new(|x| x % 2 == 0)),
        (Predicate::Prime, Box::new(is_prime)),
        (Predicate::Bitmask(mask.clone()), Box::new(move |x| mask[x])),
    ];
    let cut_sequences: [Vec<usize>; 3] =
        [vec![2, 4, 8, 16, 32, 64, 128], vec![1, 2, 3, 5, 8, 13, 21], vec![3, 9, 10, 30, 90, 100, 200]];
    let mut cases = 0;
    for (p, oracle) in &preds {
        for cuts in &cut_sequences {
            let spec = SingularFamilySpec::new(p.clone(), cuts.clone()).unwrap();
            for k in 0..=6 {
                let got = truncated_family_meet(&spec, k).unwrap();
                let f = cuts[k];
                let n = f + 8;
                let big = |x: usize| x >= f || oracle(x);
                let ok = (0..n).all(|x| (0..n).all(|y| got.related(x, y) == (x == y || (big(x) && big(y)))));
                if !ok {
                    return outcome(false, format!("{p:?} cuts {cuts:?} K={k}"));
                }
                cases += 1;
            }
        }
    }
    let mut rng = SmallRng::seed_from_u64(9);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=10);
        let mut class: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if class.len() < 2 {
            class = vec![0, n - 1];
        }
        let got = atoms_to_singular(&class, n).unwrap();
        let mut labels: Vec<usize> = (0..n).collect();
        for &x in &class {
            labels[x] = class[0];
        }
        if got != Partition::from_labels(&labels).unwrap() {
            return outcome(false, format!("atoms for {class:?} on n={n}"));
        }
    }
    outcome(true, format!("{cases} family meets match the closed form; 1000 random atom joins match"))
}

fn criterion_10() -> Outcome {
    let machines: Vec<(&str, TmSpec)> = zoo::all();
    let specs: Vec<TmSpec> = machines.iter().map(|(_, m)| m.clone()).collect();
    let mut sizes = Vec::new();
    for k in [1u64, 10, 100] {
        let p = tm::nonhalt_family_meet(k, &specs).unwrap();
        let running: Vec<usize> = (0..specs.len()).filter(|&i| simulate(&specs[i], k).is_none()).collect();
        let class: Vec<usize> = p
            .classes()
            .into_iter()
            .find(|c| c.len() > 1)
            .unwrap_or_default();
        let expected = if running.len() > 1 { running.clone() } else { Vec::new() };
        if class != expected || p.classes().iter().filter(|c| c.len() > 1).count() > 1 {
            return outcome(false, format!("K={k}: class {class:?}, running {running:?}"));
        }
        sizes.push(format!("K={k}: {}", running.len()));
    }
    outcome(true, format!("non-singleton class = machines running > K steps ({})", sizes.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("lattice axioms", criterion_1),
        ("join equals chain closure", criterion_2),
        ("singular complement criterion", criterion_3),
        ("least-element complement", criterion_4),
        ("automatic corpus: classes and axiom checkers", criterion_5),
        ("automatic meet/join vs restriction", criterion_6),
        ("singleton meet growth", criterion_7),
        ("halting probe vs simulation", criterion_8),
        ("truncated family meets and atoms", criterion_9),
        ("non-halting family meet", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.passed {
            failed += 1;
        }
        println!("criterion {:>2} [{}] {name}: {}", i + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
