use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{Field, MultiPoly, Rational, Ring, ScalarError, Var};

/// Quotient of integer polynomials.
///
/// The denominator is kept as `den_const * prod(factor^exp)` where each factor
/// is a primitive, non-constant polynomial with positive leading coefficient.
/// Factors are never tested for coprimality: sums are formed over the
/// factor-wise maximum, which is always a common multiple. No multivariate gcd
/// is computed, so equal functions may have different representations; `==`
/// is decided by exact cross-multiplication (subtraction to zero).
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den_const: BigInt,
    factors: Vec<(MultiPoly, u32)>,
}

impl RationalFunction {
    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction {
            num: p,
            den_const: BigInt::one(),
            factors: Vec::new(),
        }
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn from_rational(r: &Rational) -> Self {
        RationalFunction {
            num: MultiPoly::constant(r.numer().clone()),
            den_const: r.denom().clone(),
            factors: Vec::new(),
        }
        .normalized()
    }

    /// `num / den` for polynomials, rejecting a zero denominator.
    pub fn from_parts(num: MultiPoly, den: MultiPoly) -> Result<Self, ScalarError> {
        let inv = Self::from_poly(den).try_inv()?;
        Ok(Self::from_poly(num).mul(&inv))
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    /// Fully expanded denominator polynomial.
    pub fn denom(&self) -> MultiPoly {
        let mut d = MultiPoly::constant(self.den_const.clone());
        for (f, e) in &self.factors {
            d = d.mul(&f.pow(*e));
        }
        d
    }

    pub fn denominator_factors(&self) -> &[(MultiPoly, u32)] {
        &self.factors
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den_const = BigInt::one();
            self.factors.clear();
            return self;
        }
        let g = self.num.content().gcd(&self.den_const);
        if !g.is_one() {
            self.num = self.num.div_exact_int(&g);
            self.den_const /= &g;
        }
        self.factors.retain(|f| f.1 > 0);
        self
    }

    fn exponent_of(&self, f: &MultiPoly) -> u32 {
        self.factors
            .iter()
            .find(|(g, _)| g == f)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduce(&self) -> Self {
        let mut out = self.clone();
        if out.num.is_zero() {
            return out.normalized();
        }
        for k in 0..out.factors.len() {
            while out.factors[k].1 > 0 {
                match out.num.div_exact(&out.factors[k].0) {
                    Some(q) => {
                        out.num = q;
                        out.factors[k].1 -= 1;
                    }
                    None => break,
                }
            }
        }
        out.normalized()
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, assignment: &BTreeMap<Var, Rational>) -> Result<Rational, ScalarError> {
        let mut den = Rational::integer(self.den_const.clone());
        for (f, e) in &self.factors {
            den = den.mul(&f.eval(assignment)?.pow(*e));
        }
        if den.is_zero() {
            return Err(ScalarError::EvaluationPole);
        }
        self.num.eval(assignment)?.try_div(&den)
    }

    /// Order of vanishing in `v` (negative for a pole); `None` for zero.
    pub fn valuation(&self, v: Var) -> Option<i64> {
        let top = self.num.valuation(v)? as i64;
        let bottom: i64 = self
            .factors
            .iter()
            .map(|(f, e)| f.valuation(v).unwrap_or(0) as i64 * *e as i64)
            .sum();
        Some(top - bottom)
    }

    /// True when the function is zero or vanishes identically on `v = 0`.
    pub fn vanishes_at_zero(&self, v: Var) -> bool {
        self.valuation(v).map(|k| k > 0).unwrap_or(true)
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.factors == other.factors && self.den_const == other.den_const {
            return self.num == other.num;
        }
        self.sub(other).num.is_zero()
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_poly(MultiPoly::constant(n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.factors == rhs.factors && self.den_const == rhs.den_const {
            let mut out = self.clone();
            out.num.add_assign(&rhs.num);
            return out.normalized();
        }
        let mut factors = self.factors.clone();
        for (f, e) in &rhs.factors {
            match factors.iter_mut().find(|(g, _)| g == f) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => factors.push((f.clone(), *e)),
            }
        }
        let den_const = self.den_const.lcm(&rhs.den_const);
        let lift = |x: &RationalFunction| -> MultiPoly {
            let mut n = x.num.scale(&(&den_const / &x.den_const));
            for (f, e) in &factors {
                let missing = e - x.exponent_of(f);
                if missing > 0 {
                    n = n.mul(&f.pow(missing));
                }
            }
            n
        };
        let mut num = lift(self);
        num.add_assign(&lift(rhs));
        RationalFunction {
            num,
            den_const,
            factors,
        }
        .normalized()
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut factors = self.factors.clone();
        for (f, e) in &rhs.factors {
            match factors.iter_mut().find(|(g, _)| g == f) {
                Some(slot) => slot.1 += e,
                None => factors.push((f.clone(), *e)),
            }
        }
        RationalFunction {
            num: self.num.mul(&rhs.num),
            den_const: &self.den_const * &rhs.den_const,
            factors,
        }
        .normalized()
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den_const: self.den_const.clone(),
            factors: self.factors.clone(),
        }
    }
}

impl Field for RationalFunction {
    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&rhs.try_inv()?))
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (content, prim) = self.num.primitive_part();
        let mut num = MultiPoly::constant(self.den_const.clone());
        for (f, e) in &self.factors {
            num = num.mul(&f.pow(*e));
        }
        if content.is_negative() {
            num = num.neg();
        }
        let factors = if prim.is_constant() {
            Vec::new()
        } else {
            vec![(prim, 1)]
        };
        Ok(RationalFunction {
            num,
            den_const: content.abs(),
            factors,
        }
        .normalized())
    }
}

/// Prints `num | den` with both sides expanded in canonical polynomial form.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.num, self.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> RationalFunction {
        RationalFunction::var(Var::new(name))
    }

    #[test]
    fn common_denominator_sum_is_one() {
        let (p, q) = (v("p"), v("q"));
        let d = p.sub(&q);
        let a = p.try_div(&d).unwrap();
        let b = q.neg().try_div(&d).unwrap();
        assert_eq!(a.add(&b), RationalFunction::one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            v("p").try_div(&RationalFunction::zero()).unwrap_err(),
            ScalarError::DivisionByZero
        );
    }

    #[test]
    fn reduce_cancels_exact_factor() {
        let (p, q) = (v("p"), v("q"));
        let f = p.mul(&p).sub(&q.mul(&q)).try_div(&p.sub(&q)).unwrap();
        let r = f.reduce();
        assert!(r.denominator_factors().is_empty());
        assert_eq!(r, p.add(&q));
    }

    #[test]
    fn evaluation_and_pole() {
        let (p, q) = (v("p"), v("q"));
        let f = p.try_div(&p.sub(&q)).unwrap();
        let mut at = BTreeMap::new();
        at.insert(Var::new("p"), Rational::integer(2));
        at.insert(Var::new("q"), Rational::integer(1));
        assert_eq!(f.eval(&at).unwrap(), Rational::integer(2));
        at.insert(Var::new("q"), Rational::integer(2));
        assert_eq!(f.eval(&at).unwrap_err(), ScalarError::EvaluationPole);
    }

    #[test]
    fn valuation_counts_factor_orders() {
        let d = Var::new("vd");
        let dd = RationalFunction::var(d);
        let f = dd.mul(&dd).try_div(&dd.add(&dd.mul(&dd))).unwrap();
        assert_eq!(f.valuation(d), Some(1));
        assert!(f.vanishes_at_zero(d));
        let g = RationalFunction::one().try_div(&dd).unwrap();
        assert!(!g.vanishes_at_zero(d));
    }

    #[test]
    fn negative_content_moves_to_numerator() {
        let p = v("p");
        let f = RationalFunction::one()
            .try_div(&p.mul(&RationalFunction::from_i64(-4)))
            .unwrap();
        assert_eq!(
            f.mul(&p),
            RationalFunction::from_rational(&Rational::new(-1, 4).unwrap())
        );
    }
}
