use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use equlat_core::constructions::{
    atoms_to_singular, family_member, star_atoms, truncated_family_meet, Predicate,
    SingularFamilySpec,
};
use equlat_core::Partition;

/// Membership in the big class of the K-th truncated meet, by formula.
fn closed_form(p: &dyn Fn(usize) -> bool, cut: usize, x: usize) -> bool {
    x >= cut || p(x)
}

fn check_against_formula(pred: Predicate, oracle: &dyn Fn(usize) -> bool, cuts: &[usize]) {
    let spec = SingularFamilySpec::new(pred, cuts.to_vec()).unwrap();
    let mut previous: Option<Partition> = None;
    for k in 0..cuts.len() {
        let m = truncated_family_meet(&spec, k).unwrap();
        assert!(m.is_singular());
        let n = cuts[k] + 5;
        let want = Partition::from_relation(n, |x, y| {
            x == y || (closed_form(oracle, cuts[k], x) && closed_form(oracle, cuts[k], y))
        })
        .unwrap();
        let got = m.restrict(n).unwrap();
        assert_eq!(got, want, "cuts {cuts:?} K={k}");
        // below the cut the big class is exactly I
        let below = Partition::from_relation(cuts[k], |x, y| x == y || (oracle(x) && oracle(y))).unwrap();
        assert_eq!(m.restrict(cuts[k]).unwrap(), below);
        let probe = *cuts.last().unwrap() + 1;
        let current = m.restrict(probe).unwrap();
        if let Some(prev) = &previous {
            assert!(current.leq(prev).unwrap(), "meets decrease in K");
        }
        previous = Some(current);
    }
}

#[test]
fn truncated_meets_match_closed_form() {
    let prime = |x: usize| x >= 2 && (2..x).all(|d| x % d != 0);
    let mask: Vec<bool> = (0..300).map(|x| x % 5 == 2 || x == 0).collect();
    let mask_oracle = {
        let m = mask.clone();
        move |x: usize| m[x]
    };
    let cut_sets: [&[usize]; 3] = [&[2, 4, 8, 16, 32, 64, 128], &[1, 3, 5, 7, 9, 11, 13], &[4, 5, 50, 51, 100, 200, 250]];
    for cuts in cut_sets {
        check_against_formula(Predicate::Even, &|x| x % 2 == 0, cuts);
        check_against_formula(Predicate::Prime, &prime, cuts);
        check_against_formula(Predicate::Bitmask(mask.clone()), &mask_oracle, cuts);
    }
}

#[test]
fn family_examples() {
    let spec = SingularFamilySpec::new(Predicate::Even, vec![2, 4, 8]).unwrap();
    let e0 = family_member(&spec, 0).unwrap();
    assert_eq!(e0.threshold(), 2);
    assert_eq!(e0.tail_head_members(), vec![0]);
    assert!(!e0.related(0, 1));
    assert_eq!(truncated_family_meet(&spec, 0).unwrap(), e0);
    let m = truncated_family_meet(&spec, 2).unwrap();
    assert_eq!(m.threshold(), 8);
    assert_eq!(m.tail_head_members(), vec![0, 2, 4, 6]);
    for i in 0..3 {
        assert!(family_member(&spec, i).unwrap().is_singular());
    }
    assert!(family_member(&spec, 3).is_err());
}

#[test]
fn atoms_build_the_singular_relation() {
    let top = atoms_to_singular(&(0..6).collect::<Vec<_>>(), 6).unwrap();
    assert!(top.is_top());
    let p = atoms_to_singular(&[1, 3], 4).unwrap();
    assert_eq!(p.non_singleton_class().unwrap(), vec![1, 3]);
    assert_eq!(star_atoms(&[1, 3]).unwrap().len(), 1);

    let mut rng = SmallRng::seed_from_u64(5);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=10);
        let mut class: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        if class.len() < 2 {
            class = vec![0, n - 1];
        }
        let got = atoms_to_singular(&class, n).unwrap();
        let want = Partition::from_relation(n, |x, y| x == y || (class.contains(&x) && class.contains(&y))).unwrap();
        assert_eq!(got, want);
        for atom in star_atoms(&class).unwrap() {
            assert!(atom.to_partition(n).unwrap().leq(&got).unwrap());
        }
    }
    assert!(atoms_to_singular(&[9], 10).is_err());
    assert!(atoms_to_singular(&[1, 12], 10).is_err());
}
