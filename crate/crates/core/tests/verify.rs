use equlat_core::verify::{self, LatticeOps, Suite};
use equlat_core::Partition;

#[test]
fn every_suite_passes() {
    for suite in [Suite::Lattice, Suite::Complements, Suite::Automatic, Suite::Tm, Suite::Constructions] {
        let report = verify::run(suite);
        assert!(!report.checks.is_empty(), "{suite:?}");
        assert!(report.all_passed(), "{suite:?}\n{report}");
    }
}

#[test]
fn broken_join_is_caught_and_named() {
    // union of the two relations without closing under transitivity
    let ops = LatticeOps {
        join: |a: &Partition, b: &Partition| {
            let n = a.universe_size();
            Partition::from_relation(n, |x, y| a.related(x, y) || b.related(x, y))
                .unwrap_or_else(|_| a.clone())
        },
        ..LatticeOps::default()
    };
    let failed: Vec<String> = verify::lattice(&ops)
        .into_iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    assert!(failed.contains(&"join-is-chain-closure".to_string()), "{failed:?}");
    assert!(!failed.iter().any(|n| n.starts_with("meet-")), "{failed:?}");
}

#[test]
fn suite_names_parse() {
    assert_eq!("all".parse::<Suite>(), Ok(Suite::All));
    assert!("lattices".parse::<Suite>().is_err());
}
