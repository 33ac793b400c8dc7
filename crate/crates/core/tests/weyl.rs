use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use tilted_bruhat::random;
use tilted_bruhat::weyl::WeylError;
use tilted_bruhat::{RootSystem, TypeLabel, WeylGroup};

fn group(t: TypeLabel, n: usize) -> Arc<WeylGroup> {
    Arc::new(WeylGroup::new(Arc::new(RootSystem::new(t, n).unwrap())).unwrap())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn orders_match_formulas() {
    for n in 1..=4 {
        assert_eq!(group(TypeLabel::A, n).size(), factorial(n + 1));
    }
    for n in 2..=4 {
        assert_eq!(group(TypeLabel::B, n).size(), (1 << n) * factorial(n));
    }
    assert_eq!(group(TypeLabel::C, 3).size(), 48);
    assert_eq!(group(TypeLabel::D, 4).size(), 8 * 24);
    assert_eq!(group(TypeLabel::G, 2).size(), 12);
}

#[test]
fn e6_exceeds_the_bound() {
    let rs = Arc::new(RootSystem::new(TypeLabel::E, 6).unwrap());
    assert!(matches!(
        WeylGroup::new(rs),
        Err(WeylError::TooLarge { .. })
    ));
}

/// Length as the number of positive roots sent to negative roots.
fn inversions(g: &WeylGroup, w: usize) -> usize {
    let rs = g.root_system();
    rs.positive_roots()
        .iter()
        .filter(|r| g.element(w).apply(r.coeffs()).iter().any(|&c| c < 0))
        .count()
}

#[test]
fn length_counts_inversions() {
    for (t, n) in [
        (TypeLabel::A, 3),
        (TypeLabel::B, 3),
        (TypeLabel::G, 2),
        (TypeLabel::C, 3),
    ] {
        let g = group(t, n);
        for w in 0..g.size() {
            assert_eq!(g.length(w), inversions(&g, w));
            assert_eq!(g.length(w), g.length(g.inverse(w)));
        }
        assert_eq!(
            g.length(g.longest_element()),
            g.root_system().num_positive_roots()
        );
    }
}

/// Bruhat order by the subword property on a fixed reduced word.
fn subword_below(g: &WeylGroup, v: usize) -> BTreeSet<usize> {
    let word = g.reduced_word(v);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << word.len()) {
        let sub: Vec<usize> = (0..word.len())
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| word[k])
            .collect();
        out.insert(g.from_word(&sub).unwrap());
    }
    out
}

#[test]
fn bruhat_order_matches_subwords() {
    for (t, n) in [(TypeLabel::A, 3), (TypeLabel::B, 3), (TypeLabel::G, 2)] {
        let g = group(t, n);
        for v in 0..g.size() {
            let below = subword_below(&g, v);
            for u in 0..g.size() {
                assert_eq!(g.bruhat_leq(u, v), below.contains(&u));
            }
        }
    }
}

#[test]
fn every_reduced_word_of_w0_gives_a_reflection_ordering() {
    let g = group(TypeLabel::A, 3);
    for seed in 0..20 {
        let word = g.random_reduced_word(g.longest_element(), &mut random::rng(seed));
        let ord = g.reflection_ordering_from_word(&word).unwrap();
        assert!(g.is_reflection_ordering(ord.order()).unwrap());
        assert!(g.is_reflection_ordering(ord.reversed().order()).unwrap());
    }
    assert!(matches!(
        g.reflection_ordering_from_word(&[0, 0]),
        Err(WeylError::NotReduced(_))
    ));
    assert!(matches!(
        g.reflection_ordering_from_word(&[0, 1]),
        Err(WeylError::NotLongest(_))
    ));
}

#[test]
fn cosets_of_dihedral_subgroups() {
    for (t, n) in [(TypeLabel::B, 3), (TypeLabel::A, 4)] {
        let g = group(t, n);
        for sub in g.root_system().dihedral_subsystems(false) {
            let c = g.coset_decomposition(&sub);
            assert_eq!(c.num_cosets() * c.subgroup_elements.len(), g.size());
            assert!(c.verify_unique_minima(&g));
            assert!(c.verify_descent_correspondence(&g));
            assert!(c.verify_bruhat_isomorphism(&g));
        }
    }
}

proptest! {
    #[test]
    fn words_multiply_like_group_elements(
        a in prop::collection::vec(0usize..3, 0..12),
        b in prop::collection::vec(0usize..3, 0..12),
    ) {
        let g = group(TypeLabel::B, 3);
        let u = g.from_word(&a).unwrap();
        let v = g.from_word(&b).unwrap();
        let ab: Vec<usize> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(g.multiply(u, v), g.from_word(&ab).unwrap());
        prop_assert!(g.length(u) <= a.len());
        prop_assert_eq!(g.length(u) % 2, a.len() % 2);
        prop_assert_eq!(g.from_word(&g.reduced_word(u)).unwrap(), u);
        prop_assert_eq!(g.multiply(u, g.inverse(u)), g.identity());
        let e = g.element(u).multiply(g.root_system(), g.element(v));
        prop_assert_eq!(g.index_of(&e), Some(g.multiply(u, v)));
    }
}
