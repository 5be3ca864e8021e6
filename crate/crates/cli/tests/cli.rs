use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn equlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equlat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(o: &Output) -> Vec<String> {
    stdout(o).lines().filter(|l| !l.starts_with('#')).map(str::to_owned).collect()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn meet_with_bottom_is_bottom() {
    let dir = TempDir::new().unwrap();
    let top = write(&dir, "top", "class: 0 1 2 3\n");
    let bot = write(&dir, "bot", "class: 3\nclass: 1\nclass: 0\nclass: 2\n");
    let o = equlat(&["partition", "meet", s(&top), s(&bot)]);
    assert!(o.status.success());
    assert_eq!(data(&o), ["class: 0", "class: 1", "class: 2", "class: 3"]);
    let o = equlat(&["partition", "join", s(&top), s(&bot)]);
    assert_eq!(data(&o), ["class: 0 1 2 3"]);
}

#[test]
fn complement_round_trips_through_out() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p", "class: 0 2\nclass: 1 4\nclass: 3\n");
    let c = dir.path().join("c");
    let o = equlat(&["partition", "complement", s(&p), "--out", s(&c)]);
    assert!(o.status.success());
    assert!(data(&o).is_empty());
    assert!(fs::read_to_string(&c).unwrap().starts_with("class: "));
    assert!(equlat(&["partition", "is-complement", s(&p), s(&c)]).status.success());
    assert_eq!(equlat(&["partition", "is-complement", s(&p), s(&p)]).status.code(), Some(1));
}

#[test]
fn malformed_input_names_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad", "class: 0 1\nclass: 2 two\n");
    let o = equlat(&["partition", "atoms", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let dup = write(&dir, "dup", "class: 0 1\nclass: 2\nclass: 1\n");
    let o = equlat(&["partition", "atoms", s(&dup)]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn automatic_commands() {
    let o = equlat(&["automatic", "check", "corpus:length4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("pass").count(), 4);
    assert!(stdout(&equlat(&["automatic", "decide", "corpus:parity", "5", "5"])).contains("related: true"));
    assert!(stdout(&equlat(&["automatic", "decide", "corpus:mod3", "5", "7"])).contains("related: false"));
    assert_eq!(data(&equlat(&["automatic", "reps", "corpus:singleton3"])), ["0 3"]);

    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus");
    let not_transitive = corpus.join("not-last-bits-differ.dfa");
    let o = equlat(&["automatic", "check", s(&not_transitive)]);
    assert_eq!(o.status.code(), Some(1));

    let dir = TempDir::new().unwrap();
    let joined = dir.path().join("j.dfa");
    assert!(equlat(&["automatic", "join", "corpus:mod4", "corpus:parity", "--out", s(&joined)]).status.success());
    assert_eq!(data(&equlat(&["automatic", "reps", s(&joined)])), ["0 1"]);
}

#[test]
fn decider_commands() {
    let o = equlat(&["decider", "restrict", "lec(parity)", "4"]);
    assert_eq!(data(&o), ["class: 0 1", "class: 2", "class: 3"]);
    let o = equlat(&["decider", "join", "parity", "mod(3)", "0", "5", "--universe", "10", "--chain", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verified: true"));
    assert_eq!(equlat(&["decider", "decide", "mod(", "1", "2"]).status.code(), Some(2));
}

#[test]
fn join_undecidable_demo_finds_the_halt() {
    let o = equlat(&["demo", "join-undecidable", "--machine", "incrementer", "--input", "11", "--bound", "50"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("halts in 3 steps"), "{out}");
    assert!(out.contains("chain verifies: true"));
    let o = equlat(&["demo", "join-undecidable", "--machine", "spin", "--bound", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("no halt within 20 steps"));
}

#[test]
fn automatic_meet_growth_demo() {
    let o = equlat(&["demo", "automatic-meet-growth", "--k", "8"]);
    assert!(o.status.success());
    let counts: Vec<usize> = stdout(&o)
        .lines()
        .filter_map(|l| l.strip_suffix(" classes")?.split(": ").nth(1)?.parse().ok())
        .collect();
    assert_eq!(counts, (2..=9).collect::<Vec<_>>());
}

#[test]
fn atoms_demo_and_family() {
    let o = equlat(&["demo", "atoms", "--set", "1,3,5", "--n", "8"]);
    assert!(o.status.success());
    assert!(data(&o).contains(&"class: 1 3 5".to_string()));
    assert_eq!(data(&o).len(), 6);

    let o = equlat(&["family", "meet", "--pred", "even", "--k", "2"]);
    assert_eq!(data(&o)[..2], ["threshold: 8".to_string(), "class: 0 2 4 6".to_string()]);
    assert!(equlat(&["demo", "family-meet", "--pred", "prime", "--k", "3"]).status.success());
    assert!(equlat(&["demo", "nonhalt-meet", "--k", "10"]).status.success());
}

#[test]
fn tm_commands() {
    let o = equlat(&["tm", "run", "bb2"]);
    assert!(stdout(&o).contains("halted after 4 steps"), "{}", stdout(&o));
    let dir = TempDir::new().unwrap();
    let shown = dir.path().join("bb2.tm");
    assert!(equlat(&["tm", "show", "bb2", "--out", s(&shown)]).status.success());
    assert_eq!(stdout(&equlat(&["tm", "code", s(&shown)])), stdout(&equlat(&["tm", "code", "bb2"])));
    assert_eq!(equlat(&["tm", "run", "no-such-machine"]).status.code(), Some(2));
}

#[test]
fn verify_lattice_passes() {
    let o = equlat(&["verify", "lattice"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}
