use std::collections::BTreeMap;

use proptest::prelude::*;
use tilted_bruhat::scalars::{
    EpsPoly, Field, Monomial, MultiPoly, Rational, RationalFunction, Ring, Var,
};

fn vars() -> [Var; 3] {
    [Var::new("x"), Var::new("y"), Var::new("z")]
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-6i64..=6, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
        let [x, y, z] = vars();
        terms
            .into_iter()
            .fold(MultiPoly::zero(), |acc, (c, a, b, d)| {
                acc.add(&MultiPoly::term(
                    c,
                    Monomial::from_pairs(vec![(x, a), (y, b), (z, d)]),
                ))
            })
    })
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=40).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn point_strategy() -> impl Strategy<Value = BTreeMap<Var, Rational>> {
    (
        rational_strategy(),
        rational_strategy(),
        rational_strategy(),
    )
        .prop_map(|(a, b, c)| {
            let [x, y, z] = vars();
            BTreeMap::from([(x, a), (y, b), (z, c)])
        })
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational_strategy(), b in rational_strategy(), c in rational_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !b.is_zero() {
            prop_assert_eq!(a.try_div(&b).unwrap().mul(&b), a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn polynomial_ring_axioms(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
        if !q.is_zero() {
            prop_assert_eq!(p.mul(&q).div_exact(&q), Some(p.clone()));
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly_strategy(), q in poly_strategy(), at in point_strategy()) {
        let (ep, eq) = (p.eval(&at).unwrap(), q.eval(&at).unwrap());
        prop_assert_eq!(p.mul(&q).eval(&at).unwrap(), ep.mul(&eq));
        prop_assert_eq!(p.add(&q).eval(&at).unwrap(), ep.add(&eq));
    }

    #[test]
    fn rational_functions(
        a in poly_strategy(), b in poly_strategy(), c in poly_strategy(), d in poly_strategy(),
        at in point_strategy(),
    ) {
        prop_assume!(!b.is_zero() && !d.is_zero());
        let f = RationalFunction::from_parts(a.clone(), b.clone()).unwrap();
        let g = RationalFunction::from_parts(c.clone(), d.clone()).unwrap();
        prop_assert!(f.sub(&f).is_zero());
        prop_assert_eq!(f.add(&g), g.add(&f));
        // a/b == (a d)/(b d)
        prop_assert_eq!(RationalFunction::from_parts(a.mul(&d), b.mul(&d)).unwrap(), f.clone());
        if !a.is_zero() {
            prop_assert!(f.mul(&f.try_inv().unwrap()).is_one());
        }
        let (bv, dv) = (b.eval(&at).unwrap(), d.eval(&at).unwrap());
        if !bv.is_zero() && !dv.is_zero() {
            let fv = a.eval(&at).unwrap().try_div(&bv).unwrap();
            let gv = c.eval(&at).unwrap().try_div(&dv).unwrap();
            prop_assert_eq!(f.add(&g).eval(&at).unwrap(), fv.add(&gv));
            prop_assert_eq!(f.mul(&g).eval(&at).unwrap(), fv.mul(&gv));
        }
    }

    #[test]
    fn eps_polynomials(
        a in prop::collection::vec(rational_strategy(), 0..6),
        b in prop::collection::vec(rational_strategy(), 0..6),
        t in rational_strategy(),
        bound in 0usize..8,
    ) {
        let (p, q) = (EpsPoly::from_coeffs(a), EpsPoly::from_coeffs(b));
        prop_assert_eq!(p.mul(&q).eval(&t), p.eval(&t).mul(&q.eval(&t)));
        prop_assert_eq!(p.mul(&q).truncate(bound), p.mul_truncated(&q, bound));
        prop_assert_eq!(p.add(&q).sub(&q), p.clone());
    }
}

#[test]
fn valuation_at_zero() {
    let [x, y, _] = vars();
    // x^2 / (x + y) has valuation 2 in x only when y stays generic
    let f = RationalFunction::from_parts(
        MultiPoly::var(x).mul(&MultiPoly::var(x)),
        MultiPoly::var(x).add(&MultiPoly::var(y)),
    )
    .unwrap();
    assert_eq!(f.valuation(x), Some(2));
    assert!(f.vanishes_at_zero(x));
    let g = f.try_inv().unwrap();
    assert_eq!(g.valuation(x), Some(-2));
    assert!(!g.vanishes_at_zero(x));
}
