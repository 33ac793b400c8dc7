//! Seeded random exact parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::operators::{params_from_multiplicative, MultiplicativeFunction, ParamSet};
use crate::root_system::RootSystem;
use crate::scalars::{Rational, Ring};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator and denominator uniform in `[1, 97]`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1..=97), rng.gen_range(1..=97)).expect("nonzero denominator")
}

pub fn multiplicative<R: Rng>(rank: usize, rng: &mut R) -> MultiplicativeFunction<Rational> {
    MultiplicativeFunction::new((0..rank).map(|_| small_rational(rng)).collect())
}

/// Random `E1`, `E2`, `kappa_short`, `kappa_long`, redrawn until
/// `E1(alpha) != E2(alpha)` for every positive root.
pub fn mixed_params<R: Rng>(rs: &RootSystem, rng: &mut R) -> ParamSet<Rational> {
    loop {
        let e1 = multiplicative(rs.rank(), rng);
        let e2 = multiplicative(rs.rank(), rng);
        let (ks, kl) = (small_rational(rng), small_rational(rng));
        if let Ok(p) = params_from_multiplicative(rs, &e1, &e2, &ks, &kl) {
            return p;
        }
    }
}

/// Copy of `params` with `q_t` increased by one.
pub fn perturbed(params: &ParamSet<Rational>, t: usize) -> ParamSet<Rational> {
    let mut out = params.clone();
    out.q[t] = out.q[t].add(&Rational::one());
    out
}
