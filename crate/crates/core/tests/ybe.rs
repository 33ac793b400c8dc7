use std::sync::Arc;

use tilted_bruhat::operators::{
    mixed_family, quantum_family, r_family, symbols, type_a_pairings, yang_family,
};
use tilted_bruhat::random;
use tilted_bruhat::root_system::{DihedralType, RootSystem, TypeLabel};
use tilted_bruhat::scalars::Rational;
use tilted_bruhat::weyl::WeylGroup;
use tilted_bruhat::ybe::{check_system, check_ybe, ybe_word, Scope, YbeOptions};

fn group(t: TypeLabel, n: usize) -> Arc<WeylGroup> {
    Arc::new(WeylGroup::new(Arc::new(RootSystem::new(t, n).unwrap())).unwrap())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

#[test]
fn ybe_words_by_subtype() {
    for (t, n, m) in [
        (TypeLabel::A, 2, 3),
        (TypeLabel::B, 2, 4),
        (TypeLabel::G, 2, 6),
    ] {
        let g = group(t, n);
        let rs = g.root_system();
        let sub = &rs.dihedral_subsystems(true)[0];
        let w = ybe_word(rs, sub);
        assert_eq!(w.len(), m);
        assert_eq!(w[0], sub.canonical_pair.0);
        assert_eq!(w[m - 1], sub.canonical_pair.1);
    }
    let g = group(TypeLabel::B, 2);
    let rs = g.root_system();
    let orth = rs
        .dihedral_subsystems(false)
        .into_iter()
        .find(|d| d.subtype == DihedralType::A1xA1)
        .unwrap();
    assert_eq!(ybe_word(rs, &orth).len(), 2);
}

#[test]
fn symbolic_mixed_ybe_a2_b2() {
    for (t, n) in [(TypeLabel::A, 2), (TypeLabel::B, 2)] {
        let g = group(t, n);
        let params = symbols::mixed_params(g.root_system());
        let report = check_ybe(
            &r_family(&mixed_family(&g, &params)),
            &YbeOptions::default(),
        );
        assert!(report.passed(), "{:?}", report.failures);
    }
}

#[test]
fn symbolic_equation_systems() {
    for (t, n) in [(TypeLabel::A, 2), (TypeLabel::B, 2), (TypeLabel::G, 2)] {
        let g = group(t, n);
        let rs = g.root_system();
        let params = symbols::mixed_params(rs);
        let sub = &rs.dihedral_subsystems(true)[0];
        let report = check_system(rs, sub, &params);
        assert!(report.passed(), "{t}{n}: {:?}", report.equations);
    }
}

#[test]
fn numeric_ybe_b3_and_negative_control() {
    let g = group(TypeLabel::B, 3);
    let params = random::mixed_params(g.root_system(), &mut random::rng(3));
    let report = check_ybe(
        &r_family(&mixed_family(&g, &params)),
        &YbeOptions::default(),
    );
    assert!(report.passed(), "{:?}", report.failures);
    let bad = random::perturbed(&params, 4);
    let report = check_ybe(&r_family(&mixed_family(&g, &bad)), &YbeOptions::default());
    assert!(!report.passed());
}

#[test]
fn quantum_symbolic_small() {
    for (t, n) in [(TypeLabel::A, 2), (TypeLabel::B, 2), (TypeLabel::G, 2)] {
        let g = group(t, n);
        let e = symbols::quantum_polynomial_function(n);
        let report = check_ybe(&r_family(&quantum_family(&g, &e)), &YbeOptions::default());
        assert!(report.passed(), "{t}{n}: {:?}", report.failures);
    }
}

#[test]
fn yang_a3_b3() {
    let g = group(TypeLabel::A, 3);
    let x = type_a_pairings(&[q(0, 1), q(1, 1), q(3, 1), q(7, 1)]);
    let k = q(-1, 1);
    let report = check_ybe(
        &yang_family(&g, &x, (&k, &k)).unwrap(),
        &YbeOptions::default(),
    );
    assert!(report.passed(), "{:?}", report.failures);
    let g = group(TypeLabel::B, 3);
    let x = [q(2, 7), q(5, 3), q(11, 13)];
    let report = check_ybe(
        &yang_family(&g, &x, (&q(3, 1), &q(-5, 2))).unwrap(),
        &YbeOptions::default(),
    );
    assert!(report.passed(), "{:?}", report.failures);
}

#[test]
#[ignore]
fn symbolic_mixed_ybe_g2_timing() {
    let g = group(TypeLabel::G, 2);
    let params = symbols::mixed_params(g.root_system());
    let t = std::time::Instant::now();
    let report = check_ybe(
        &r_family(&mixed_family(&g, &params)),
        &YbeOptions {
            scope: Scope::IdentityCoset,
            ..Default::default()
        },
    );
    eprintln!("g2 symbolic {:?} {:?}", t.elapsed(), report.passed());
}
