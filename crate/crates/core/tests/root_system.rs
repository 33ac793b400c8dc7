use std::collections::BTreeSet;

use proptest::prelude::*;
use tilted_bruhat::root_system::{
    DihedralType, LengthClass, RootSystem, RootSystemError, TypeLabel,
};

const TYPES: &[(TypeLabel, usize)] = &[
    (TypeLabel::A, 1),
    (TypeLabel::A, 4),
    (TypeLabel::B, 2),
    (TypeLabel::B, 4),
    (TypeLabel::C, 3),
    (TypeLabel::C, 4),
    (TypeLabel::D, 4),
    (TypeLabel::D, 5),
    (TypeLabel::E, 6),
    (TypeLabel::E, 7),
    (TypeLabel::E, 8),
    (TypeLabel::F, 4),
    (TypeLabel::G, 2),
];

fn coxeter_number(t: TypeLabel, n: usize) -> usize {
    match t {
        TypeLabel::A => n + 1,
        TypeLabel::B | TypeLabel::C => 2 * n,
        TypeLabel::D => 2 * n - 2,
        TypeLabel::E => [12, 18, 30][n - 6],
        TypeLabel::F => 12,
        TypeLabel::G => 6,
    }
}

#[test]
fn root_counts_and_highest_root() {
    for &(t, n) in TYPES {
        let rs = RootSystem::new(t, n).unwrap();
        let h = coxeter_number(t, n);
        assert_eq!(rs.num_positive_roots(), n * h / 2, "{}", rs.name());
        let top = (0..rs.num_positive_roots())
            .map(|i| rs.height(i))
            .max()
            .unwrap();
        assert_eq!(top as usize, h - 1, "{}", rs.name());
    }
}

#[test]
fn reflections_permute_roots_and_preserve_the_form() {
    for &(t, n) in TYPES {
        let rs = RootSystem::new(t, n).unwrap();
        for b in 0..rs.num_positive_roots() {
            for a in 0..rs.num_positive_roots() {
                let x = rs.reflect(b, rs.root(a).coeffs());
                assert!(rs.index_up_to_sign(&x).is_some());
                assert_eq!(
                    rs.form(&x, &x),
                    rs.form(rs.root(a).coeffs(), rs.root(a).coeffs())
                );
            }
            assert_eq!(rs.coroot_pairing(rs.root(b).coeffs(), b), 2);
        }
    }
}

#[test]
fn b_and_c_swap_length_classes() {
    for n in 3..=5 {
        let count = |t| {
            let rs = RootSystem::new(t, n).unwrap();
            let short = rs
                .length_classes()
                .iter()
                .filter(|&&c| c == LengthClass::Short)
                .count();
            (short, rs.num_positive_roots() - short)
        };
        assert_eq!(count(TypeLabel::B), (n, n * (n - 1)));
        assert_eq!(count(TypeLabel::C), (n * (n - 1), n));
    }
    assert!(RootSystem::new(TypeLabel::D, 4).unwrap().is_simply_laced());
    assert!(!RootSystem::new(TypeLabel::G, 2).unwrap().is_simply_laced());
}

#[test]
fn invalid_inputs() {
    assert!(matches!(
        "Z".parse::<TypeLabel>(),
        Err(RootSystemError::UnknownType(_))
    ));
    for (t, n) in [
        (TypeLabel::A, 0),
        (TypeLabel::D, 3),
        (TypeLabel::E, 5),
        (TypeLabel::G, 3),
        (TypeLabel::B, 1),
    ] {
        assert!(RootSystem::new(t, n).is_err(), "{t}{n}");
    }
    let rs = RootSystem::new(TypeLabel::A, 2).unwrap();
    assert!(rs.simple_root_index(2).is_err());
}

/// Root sets of the subgroups generated by two reflections, by reflecting
/// the generating roots into each other until nothing new appears.
fn closures_oracle(rs: &RootSystem) -> BTreeSet<Vec<usize>> {
    let n = rs.num_positive_roots();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut set: BTreeSet<usize> = [i, j].into();
            loop {
                let mut next = set.clone();
                for &a in &set {
                    for &b in &set {
                        next.insert(
                            rs.index_up_to_sign(&rs.reflect(a, rs.root(b).coeffs()))
                                .unwrap(),
                        );
                    }
                }
                if next == set {
                    break;
                }
                set = next;
            }
            out.insert(set.into_iter().collect());
        }
    }
    out
}

#[test]
fn dihedral_subsystems_cover_all_pairs() {
    for (t, n) in [(TypeLabel::A, 3), (TypeLabel::B, 3), (TypeLabel::G, 2)] {
        let rs = RootSystem::new(t, n).unwrap();
        let subs = rs.dihedral_subsystems(false);
        let got: BTreeSet<Vec<usize>> = subs.iter().map(|s| s.positive_roots.clone()).collect();
        assert_eq!(got.len(), subs.len());
        assert_eq!(got, closures_oracle(&rs));
        for s in &subs {
            let seq = rs.dihedral_sequence(s);
            assert_eq!(seq.len(), s.order_m());
            assert_eq!(seq[0], s.canonical_pair.0);
            assert_eq!(*seq.last().unwrap(), s.canonical_pair.1);
        }
    }
    let g2 = RootSystem::new(TypeLabel::G, 2).unwrap();
    let full = g2.dihedral_subsystems(true);
    assert_eq!(full.len(), 1);
    assert_eq!(full[0].subtype, DihedralType::G2);
}

proptest! {
    #[test]
    fn reflection_is_an_involution(idx in 0usize..TYPES.len(), b in 0usize..120, x in prop::collection::vec(-5i64..5, 8)) {
        let (t, n) = TYPES[idx];
        let rs = RootSystem::new(t, n).unwrap();
        let b = b % rs.num_positive_roots();
        let x = &x[..n];
        prop_assert_eq!(rs.reflect(b, &rs.reflect(b, x)), x.to_vec());
        prop_assert_eq!(rs.form(&rs.reflect(b, x), &rs.reflect(b, x)), rs.form(x, x));
    }
}
