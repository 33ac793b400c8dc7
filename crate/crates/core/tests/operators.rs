use std::sync::Arc;

use proptest::prelude::*;
use tilted_bruhat::exec::Parallelism;
use tilted_bruhat::operators::{
    check_quantum_degeneration, mixed_family, params_from_multiplicative, quantum_family,
    quantum_step, r_family, rescale, yang_operator, MultiplicativeFunction, OperatorError, Step,
};
use tilted_bruhat::random;
use tilted_bruhat::scalars::{Rational, Ring};
use tilted_bruhat::ybe::{check_braid_specialization, check_ybe, YbeOptions};
use tilted_bruhat::{RootSystem, TypeLabel, WeylGroup};

fn group(t: TypeLabel, n: usize) -> Arc<WeylGroup> {
    Arc::new(WeylGroup::new(Arc::new(RootSystem::new(t, n).unwrap())).unwrap())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

#[test]
fn mixed_operators_square_to_scalars() {
    for (t, n) in [(TypeLabel::A, 3), (TypeLabel::B, 3), (TypeLabel::G, 2)] {
        let g = group(t, n);
        let params = random::mixed_params(g.root_system(), &mut random::rng(3));
        let id = tilted_bruhat::operators::LinearOperator::identity(&g);
        for (k, m) in mixed_family(&g, &params).iter().enumerate() {
            assert_eq!(m.compose(m), id.scale(&params.p[k].mul(&params.q[k])));
        }
    }
}

#[test]
fn equal_values_are_rejected() {
    let rs = RootSystem::new(TypeLabel::A, 2).unwrap();
    let e = MultiplicativeFunction::new(vec![q(2, 1), q(3, 1)]);
    let err =
        params_from_multiplicative(&rs, &e, &e, &Rational::one(), &Rational::one()).unwrap_err();
    assert!(matches!(err, OperatorError::EqualValues { .. }));
}

#[test]
fn yang_needs_nonzero_pairings() {
    let g = group(TypeLabel::A, 2);
    let x = [q(1, 1), q(-1, 1)];
    // <x, alpha_1 + alpha_2> = 0
    let t = g.root_system().index_of(&[1, 1]).unwrap();
    let k = Rational::one();
    assert!(matches!(
        yang_operator(&g, t, &x, (&k, &k)),
        Err(OperatorError::DegenerateYang { .. })
    ));
    assert!(matches!(
        yang_operator(&g, 0, &x[..1], (&k, &k)),
        Err(OperatorError::WrongLength { .. })
    ));
}

#[test]
fn quantum_steps_in_a2() {
    let g = group(TypeLabel::A, 2);
    let w0 = g.longest_element();
    let top = g.root_system().index_of(&[1, 1]).unwrap();
    assert_eq!(quantum_step(&g, top, w0), Some(Step::Down));
    assert_eq!(quantum_step(&g, top, 0), None);
    assert_eq!(quantum_step(&g, 0, 0), Some(Step::Up));
}

#[test]
fn degeneration_to_quantum_operators() {
    for (t, n) in [(TypeLabel::B, 2), (TypeLabel::A, 2)] {
        assert!(check_quantum_degeneration(&group(t, n)));
    }
}

#[test]
fn braid_relations_need_equal_q() {
    let k = q(1, 1);
    let same = check_braid_specialization(4, &[q(1, 1), q(1, 1), q(1, 1)], &k).unwrap();
    assert!(same.involutions && same.braid.iter().all(|&b| b));
    let diff = check_braid_specialization(3, &[q(1, 1), q(2, 1)], &k).unwrap();
    assert!(diff.involutions);
    assert_eq!(diff.braid, vec![false]);
}

#[test]
fn json_lists_nonzero_entries() {
    let g = group(TypeLabel::A, 1);
    let e = MultiplicativeFunction::constant(1, q(5, 2));
    let fam = quantum_family(&g, &e);
    let json = fam[0].to_json();
    let entries = json.as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[1][2], "5/2");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn rescaling_preserves_ybe(seed in any::<u64>()) {
        let g = group(TypeLabel::A, 3);
        let mut rng = random::rng(seed);
        let params = random::mixed_params(g.root_system(), &mut rng);
        let gamma: Vec<Rational> = (0..g.size()).map(|_| random::small_rational(&mut rng)).collect();
        let m = mixed_family(&g, &params);
        let opts = YbeOptions { parallelism: Parallelism::Sequential, ..Default::default() };
        prop_assert!(check_ybe(&r_family(&m), &opts).passed());
        let rescaled = rescale(&m, &gamma).unwrap();
        prop_assert!(check_ybe(&r_family(&rescaled), &opts).passed());
    }
}
