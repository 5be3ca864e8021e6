use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use equlat_core::automatic::text::parse_dfa;
use equlat_core::automatic::{
    check_format, check_reflexive, check_symmetric, check_transitive, corpus, family_meet_demo,
    AutomaticEq, Dfa,
};
use equlat_core::constructions::{
    atoms_to_singular, family_member, star_atoms, truncated_family_meet, Predicate,
    SingularFamilySpec,
};
use equlat_core::decider::{bounded_join, JoinSearch, Side};
use equlat_core::partition::text::parse_partition;
use equlat_core::tm::{self, zoo, ProbeResult, RunOutcome, TmSpec};
use equlat_core::verify::{self, Suite};
use equlat_core::{Partition, SmallEq};

use crate::{expr, AutomaticCmd, DeciderCmd, DemoCmd, FamilyCmd, Group, PartitionCmd, SuiteArg, TmCmd};

/// What a command produced: a verdict, report lines and an optional
/// result in one of the loader formats.
pub struct CommandResult {
    pub ok: bool,
    pub report: Vec<String>,
    pub output: Option<String>,
}

impl CommandResult {
    fn success(report: Vec<String>, output: impl Into<Option<String>>) -> Self {
        CommandResult { ok: true, report, output: output.into() }
    }

    pub fn emit(&self, out: Option<&Path>) -> Result<()> {
        for line in &self.report {
            println!("# {line}");
        }
        match (out, &self.output) {
            (Some(path), Some(text)) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            (Some(path), None) => bail!("this command has no result to write to {}", path.display()),
            (None, Some(text)) => print!("{text}"),
            (None, None) => {}
        }
        Ok(())
    }
}

pub fn run(group: Group) -> Result<CommandResult> {
    match group {
        Group::Partition(cmd) => partition(cmd),
        Group::Automatic(cmd) => automatic(cmd),
        Group::Decider(cmd) => decider(cmd),
        Group::Tm(cmd) => turing(cmd),
        Group::Family(cmd) => family(cmd),
        Group::Demo(cmd) => demo(cmd),
        Group::Verify { suite } => Ok(run_verify(suite)),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_partition(path: &Path) -> Result<Partition> {
    parse_partition(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_dfa(spec: &str) -> Result<Dfa> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        let r = corpus::by_name(name).with_context(|| format!("no corpus relation `{name}`"))?;
        return Ok(r.dfa().clone());
    }
    let path = Path::new(spec);
    parse_dfa(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_automatic(spec: &str) -> Result<AutomaticEq> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        return corpus::by_name(name).with_context(|| format!("no corpus relation `{name}`"));
    }
    AutomaticEq::new(load_dfa(spec)?).with_context(|| format!("{spec} is not an automatic equivalence"))
}

fn load_machine(spec: &str) -> Result<TmSpec> {
    let path = Path::new(spec);
    if path.exists() {
        return TmSpec::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()));
    }
    zoo::by_name(spec).with_context(|| format!("no file or zoo machine named `{spec}`"))
}

fn partition(cmd: PartitionCmd) -> Result<CommandResult> {
    Ok(match cmd {
        PartitionCmd::Meet { a, b } => {
            let m = load_partition(&a)?.meet(&load_partition(&b)?)?;
            CommandResult::success(vec![format!("{} classes", m.class_count())], m.to_string())
        }
        PartitionCmd::Join { a, b } => {
            let j = load_partition(&a)?.join(&load_partition(&b)?)?;
            CommandResult::success(vec![format!("{} classes", j.class_count())], j.to_string())
        }
        PartitionCmd::Leq { a, b } => {
            let leq = load_partition(&a)?.leq(&load_partition(&b)?)?;
            CommandResult::success(vec![format!("leq: {leq}")], None)
        }
        PartitionCmd::Complement { a } => {
            let p = load_partition(&a)?;
            let c = p.least_element_complement();
            let ok = p.is_complement(&c)?;
            CommandResult {
                ok,
                report: vec![format!("least-element complement; is complement: {ok}")],
                output: Some(c.to_string()),
            }
        }
        PartitionCmd::IsComplement { a, b } => {
            let (p, q) = (load_partition(&a)?, load_partition(&b)?);
            let ok = p.is_complement(&q)?;
            let mut report = vec![
                format!("meet is bottom: {}", p.meet(&q)?.is_bottom()),
                format!("join is top: {}", p.join(&q)?.is_top()),
            ];
            if p.is_singular() {
                report.push(format!("singular criterion: {}", p.singular_complement_valid(&q)?));
            }
            report.push(format!("complement: {ok}"));
            CommandResult { ok, report, output: None }
        }
        PartitionCmd::Atoms { a } => {
            let p = load_partition(&a)?;
            let atoms = p.atomistic_decomposition();
            let mut text = String::new();
            for atom in &atoms {
                let (x, y) = atom.pair();
                writeln!(text, "atom: {x} {y}")?;
            }
            CommandResult::success(vec![format!("{} atoms", atoms.len())], text)
        }
    })
}

fn parse_groups(spec: &str) -> Result<Vec<Vec<usize>>> {
    spec.split(';')
        .map(|g| {
            g.split(',')
                .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad class index `{t}`")))
                .collect()
        })
        .collect()
}

fn automatic(cmd: AutomaticCmd) -> Result<CommandResult> {
    Ok(match cmd {
        AutomaticCmd::Decide { rel, m, n } => {
            let r = load_automatic(&rel)?;
            CommandResult::success(vec![format!("related: {}", r.decide(m, n))], None)
        }
        AutomaticCmd::Meet { a, b } => {
            let r = load_automatic(&a)?.meet(&load_automatic(&b)?);
            CommandResult::success(
                vec![format!("{} classes, {} states", r.class_count(), r.dfa().state_count())],
                r.dfa().to_string(),
            )
        }
        AutomaticCmd::Join { a, b } => {
            let (x, y) = (load_automatic(&a)?, load_automatic(&b)?);
            let mut report = Vec::new();
            for w in x.join_witnesses(&y)? {
                report.push(format!("classes {} and {} meet at {}", w.left_class, w.right_class, w.witness));
            }
            let r = x.join(&y)?;
            report.push(format!("{} classes, {} states", r.class_count(), r.dfa().state_count()));
            CommandResult::success(report, r.dfa().to_string())
        }
        AutomaticCmd::Coarsen { rel, groups } => {
            let r = load_automatic(&rel)?.coarsen(&parse_groups(&groups)?)?;
            CommandResult::success(vec![format!("{} classes", r.class_count())], r.dfa().to_string())
        }
        AutomaticCmd::Check { dfa } => {
            let d = load_dfa(&dfa)?;
            let verdicts = [
                ("format", check_format(&d)),
                ("reflexive", check_reflexive(&d)),
                ("symmetric", check_symmetric(&d)),
                ("transitive", check_transitive(&d)),
            ];
            CommandResult {
                ok: verdicts.iter().all(|(_, v)| *v),
                report: verdicts.iter().map(|(name, v)| format!("{name}: {}", pass(*v))).collect(),
                output: None,
            }
        }
        AutomaticCmd::Reps { rel } => {
            let r = load_automatic(&rel)?;
            let reps: Vec<String> = r.representatives().iter().map(u64::to_string).collect();
            CommandResult::success(
                vec![format!("{} classes", r.class_count())],
                format!("{}\n", reps.join(" ")),
            )
        }
        AutomaticCmd::Minimize { dfa } => {
            let d = load_dfa(&dfa)?;
            let m = d.minimize();
            CommandResult::success(
                vec![format!("{} states -> {} states", d.state_count(), m.state_count())],
                m.to_string(),
            )
        }
        AutomaticCmd::Corpus => {
            let names: Vec<String> = corpus::all().into_iter().map(|(n, _)| n).collect();
            CommandResult::success(vec![], format!("{}\n", names.join("\n")))
        }
    })
}

fn steps_text(n: u64) -> String {
    if n == 1 {
        "1 step".into()
    } else {
        format!("{n} steps")
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn decider(cmd: DeciderCmd) -> Result<CommandResult> {
    Ok(match cmd {
        DeciderCmd::Decide { expr, m, n } => {
            let d = expr::parse(&expr)?;
            CommandResult::success(
                vec![format!("related: {}", d.decide(&m, &n)), format!("cost: {}", d.cost_note())],
                None,
            )
        }
        DeciderCmd::Restrict { expr, n } => {
            let p = expr::parse(&expr)?.restrict(n)?;
            CommandResult::success(vec![format!("{} classes", p.class_count())], p.to_string())
        }
        DeciderCmd::Check { expr, bound } => {
            let ok = expr::parse(&expr)?.is_equivalence_sampled(bound);
            CommandResult {
                ok,
                report: vec![format!("axioms on {{0..{}}}: {}", bound.saturating_sub(1), pass(ok))],
                output: None,
            }
        }
        DeciderCmd::Join { a, b, m, n, universe, chain } => {
            if m >= universe || n >= universe {
                bail!("m and n must lie below the universe bound {universe}");
            }
            let (da, db) = (expr::parse(&a)?, expr::parse(&b)?);
            match bounded_join(&da, &db, m, n, universe, chain) {
                JoinSearch::RelatedWitness(c) => {
                    let mut line = c.points[0].to_string();
                    for (p, side) in c.points[1..].iter().zip(&c.sides) {
                        let tag = if *side == Side::First { "~1" } else { "~2" };
                        write!(line, " {tag} {p}")?;
                    }
                    let verified = c.verify(&da, &db);
                    CommandResult {
                        ok: verified,
                        report: vec![
                            format!("related within bounds ({} links, verified: {verified})", c.links()),
                            line,
                        ],
                        output: None,
                    }
                }
                JoinSearch::NotWithinBounds => CommandResult::success(
                    vec!["no chain within bounds (not a proof of unrelatedness)".into()],
                    None,
                ),
            }
        }
    })
}

fn describe_run(spec: &TmSpec, out: &RunOutcome) -> Vec<String> {
    match out {
        RunOutcome::Halted { steps, config } => vec![
            format!("halted after {}", steps_text(*steps)),
            format!("tape: {}", config.tape_string(spec)),
        ],
        RunOutcome::Running { config } => vec![format!("still running: {}", config.display(spec))],
    }
}

fn turing(cmd: TmCmd) -> Result<CommandResult> {
    Ok(match cmd {
        TmCmd::Zoo => {
            let lines: Vec<String> = zoo::all()
                .into_iter()
                .map(|(name, m)| match tm::run(&m, "", 1000).expect("empty input").halt_step() {
                    Some(s) => format!("{name}: halts after {}", steps_text(s)),
                    None => format!("{name}: runs past 1000 steps"),
                })
                .collect();
            CommandResult::success(lines, None)
        }
        TmCmd::Show { machine } => CommandResult::success(vec![], load_machine(&machine)?.to_string()),
        TmCmd::Run { machine, input, bound } => {
            let m = load_machine(&machine)?;
            CommandResult::success(describe_run(&m, &tm::run(&m, &input, bound)?), None)
        }
        TmCmd::Probe { machine, input, bound } => {
            let m = load_machine(&machine)?;
            let (ok, report) = probe_report(&m, &input, bound)?;
            CommandResult { ok, report, output: None }
        }
        TmCmd::Code { machine } => {
            let code = tm::machine_code(&load_machine(&machine)?);
            CommandResult::success(vec![], format!("{code}\n"))
        }
        TmCmd::Nonhalt { k, machines } => {
            let named: Vec<(String, TmSpec)> = if machines.is_empty() {
                zoo::all().into_iter().map(|(n, m)| (n.to_string(), m)).collect()
            } else {
                machines.iter().map(|s| Ok((s.clone(), load_machine(s)?))).collect::<Result<_>>()?
            };
            let (ok, report, p) = nonhalt_report(&named, k)?;
            CommandResult { ok, report, output: Some(p.to_string()) }
        }
    })
}

/// Probe and compare with a plain run; `ok` iff they agree.
fn probe_report(m: &TmSpec, input: &str, bound: u64) -> Result<(bool, Vec<String>)> {
    let probe = tm::halting_probe(m, input, bound)?;
    let direct = tm::run(m, input, bound)?.halt_step();
    let mut report = vec![format!(
        "search bounds: {} orbit points plus the sink, at most {} links",
        bound + 1,
        tm::chain_bound(bound)
    )];
    match &probe {
        ProbeResult::HaltsInSteps { steps, chain } => {
            report.push(format!("halts in {}; chain of {} links to the sink", steps_text(*steps), chain.links()));
            let sides: String = chain
                .sides
                .iter()
                .map(|s| if *s == Side::First { 'e' } else { 'o' })
                .collect();
            report.push(format!("link parities: {sides}"));
            let verified = chain.verify(&tm::approx_even(m), &tm::approx_odd(m));
            report.push(format!("chain verifies: {verified}"));
        }
        ProbeResult::NoHaltWithinBound => report.push(format!("no halt within {bound} steps")),
    }
    report.push(format!("direct simulation: {direct:?}"));
    let ok = probe.steps() == direct;
    report.push(format!("agreement: {}", pass(ok)));
    Ok((ok, report))
}

fn nonhalt_report(named: &[(String, TmSpec)], k: u64) -> Result<(bool, Vec<String>, Partition)> {
    let specs: Vec<TmSpec> = named.iter().map(|(_, m)| m.clone()).collect();
    let p = tm::nonhalt_family_meet(k, &specs)?;
    let running: Vec<usize> = (0..specs.len()).filter(|&i| !tm::halts_within(&specs[i], k)).collect();
    let class: Vec<usize> = (0..specs.len())
        .filter(|&i| (0..specs.len()).any(|j| j != i && p.related(i, j)))
        .collect();
    let names = |ix: &[usize]| ix.iter().map(|&i| named[i].0.as_str()).collect::<Vec<_>>().join(", ");
    let expected = if running.len() > 1 { running.clone() } else { Vec::new() };
    let ok = class == expected;
    let report = vec![
        format!("machines (by index): {}", names(&(0..specs.len()).collect::<Vec<_>>())),
        format!("non-singleton class after K={k}: [{}]", names(&class)),
        format!("running past {} by simulation: [{}]", steps_text(k), names(&running)),
        format!("agreement: {}", pass(ok)),
    ];
    Ok((ok, report, p))
}

fn predicate(spec: &str) -> Result<Predicate> {
    Ok(match spec {
        "even" => Predicate::Even,
        "prime" => Predicate::Prime,
        other => match other.strip_prefix("bitmask:") {
            Some(path) => Predicate::parse_bitmask(&read(Path::new(path))?)?,
            None => bail!("unknown predicate `{other}` (even, prime, bitmask:FILE)"),
        },
    })
}

fn family_spec(pred: &str, cuts: Option<Vec<usize>>, k: usize) -> Result<SingularFamilySpec> {
    let p = predicate(pred)?;
    Ok(match cuts {
        Some(c) => SingularFamilySpec::new(p, c)?,
        None => SingularFamilySpec::with_default_cuts(p, k)?,
    })
}

fn family(cmd: FamilyCmd) -> Result<CommandResult> {
    Ok(match cmd {
        FamilyCmd::Meet { pred, cuts, k } => {
            let spec = family_spec(&pred, cuts, k)?;
            let m = truncated_family_meet(&spec, k)?;
            CommandResult::success(small_summary(&m), m.to_string())
        }
        FamilyCmd::Member { pred, cuts, i } => {
            let spec = family_spec(&pred, cuts, i)?;
            let m = family_member(&spec, i)?;
            CommandResult::success(small_summary(&m), m.to_string())
        }
        FamilyCmd::Atoms { set, n } => {
            let p = atoms_to_singular(&set, n)?;
            CommandResult::success(vec![format!("{} classes", p.class_count())], p.to_string())
        }
    })
}

fn small_summary(m: &SmallEq) -> Vec<String> {
    vec![format!(
        "big class: {:?} together with every x >= {}",
        m.tail_head_members(),
        m.threshold()
    )]
}

fn demo(cmd: DemoCmd) -> Result<CommandResult> {
    Ok(match cmd {
        DemoCmd::JoinUndecidable { machine, input, bound } => {
            let m = load_machine(&machine)?;
            let mut report = vec![
                "two decidable relations whose join decides halting".into(),
                format!("machine {machine} on {input:?}, bound {bound}"),
            ];
            let (ok, more) = probe_report(&m, &input, bound)?;
            report.extend(more);
            CommandResult { ok, report, output: None }
        }
        DemoCmd::AutomaticMeetGrowth { k } => {
            let counts = family_meet_demo(k);
            let ok = counts.iter().enumerate().all(|(i, &c)| c == i + 2);
            let mut report = vec!["meets of the singleton relations {i} | rest, i = 1..k".to_string()];
            for (i, c) in counts.iter().enumerate() {
                report.push(format!("k={}: {c} classes", i + 1));
            }
            report.push(format!("class count = k+1 throughout: {}", pass(ok)));
            CommandResult { ok, report, output: None }
        }
        DemoCmd::FamilyMeet { pred, cuts, k } => {
            let spec = family_spec(&pred, cuts, k)?;
            let mut report = vec![format!("cuts {:?}", spec.cuts())];
            let mut ok = true;
            let mut last = None;
            for i in 0..=k {
                let m = truncated_family_meet(&spec, i)?;
                let cut = spec.cut(i)?;
                let want = SmallEq::singular_with_tail(cut, &spec.predicate().members_below(cut)?)?;
                let good = m == want && m.is_singular();
                ok &= good;
                report.push(format!(
                    "K={i}: big class {:?} + [{cut}, ...) closed form: {}",
                    m.tail_head_members(),
                    pass(good)
                ));
                last = Some(m);
            }
            CommandResult { ok, report, output: last.map(|m| m.to_string()) }
        }
        DemoCmd::NonhaltMeet { k } => {
            let named: Vec<(String, TmSpec)> = zoo::all().into_iter().map(|(n, m)| (n.to_string(), m)).collect();
            let (ok, report, p) = nonhalt_report(&named, k)?;
            CommandResult { ok, report, output: Some(p.to_string()) }
        }
        DemoCmd::Atoms { set, n } => {
            let atoms = star_atoms(&set)?;
            let p = atoms_to_singular(&set, n)?;
            let mut want = set.clone();
            want.sort_unstable();
            want.dedup();
            let ok = p.non_singleton_class().ok().as_ref() == Some(&want);
            let pairs: Vec<String> = atoms.iter().map(|a| format!("{:?}", a.pair())).collect();
            let report = vec![
                format!("atoms: {}", pairs.join(" ")),
                format!("singular with class {want:?}: {}", pass(ok)),
            ];
            CommandResult { ok, report, output: Some(p.to_string()) }
        }
    })
}

fn run_verify(suite: SuiteArg) -> CommandResult {
    let suite = match suite {
        SuiteArg::Lattice => Suite::Lattice,
        SuiteArg::Complements => Suite::Complements,
        SuiteArg::Automatic => Suite::Automatic,
        SuiteArg::Tm => Suite::Tm,
        SuiteArg::Constructions => Suite::Constructions,
        SuiteArg::All => Suite::All,
    };
    let report = verify::run(suite);
    CommandResult {
        ok: report.all_passed(),
        report: report.to_string().lines().map(str::to_owned).collect(),
        output: None,
    }
}
