//! Exact scalar rings used by every operator computation.
//!
//! All arithmetic goes through the [`Ring`] and [`Field`] traits so the same
//! operator code runs over rationals, integer polynomials, rational functions
//! and ε-polynomials over any of these.

mod eps;
mod poly;
mod ratfunc;
mod rational;

pub use eps::EpsPoly;
pub use poly::{Monomial, MultiPoly, Var};
pub use ratfunc::RationalFunction;
pub use rational::Rational;

use std::fmt;

use thiserror::Error;

/// Errors raised by scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    EvaluationPole,
    #[error("no value assigned to variable `{0}`")]
    UnassignedVariable(String),
    #[error("cannot parse scalar from `{0}`")]
    Parse(String),
}

/// A commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError>;

    fn try_inv(&self) -> Result<Self, ScalarError> {
        Self::one().try_div(self)
    }
}
