use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring, ScalarError};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self, ScalarError> {
        if denom == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self, ScalarError> {
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::integer(value)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Rational::integer(n)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn add_assign(&mut self, rhs: &Self) {
        self.0 += &rhs.0;
    }
}

impl Field for Rational {
    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.0.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }
}

/// Always prints `n/d`, including `n/1` for integers.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScalarError::Parse(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::from_bigints(n, d)
            }
            None => Ok(Rational::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}
