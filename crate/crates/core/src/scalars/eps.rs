use std::fmt;

use super::{Rational, Ring};

/// Polynomial in the formal variable ε with coefficients in `S`.
///
/// `coeffs[k]` is the coefficient of ε^k; trailing zeros are trimmed so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Ring> EpsPoly<S> {
    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * ε^k`
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn eps() -> Self {
        Self::monomial(S::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().map(Ring::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        EpsPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// Degree in ε, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Drops every term of degree above `bound`.
    pub fn truncate(&self, bound: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(bound + 1).cloned().collect())
    }

    /// Product with all terms of degree above `bound` discarded.
    pub fn mul_truncated(&self, rhs: &Self, bound: usize) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::from_coeffs(Vec::new());
        }
        let len = (self.coeffs.len() + rhs.coeffs.len() - 1).min(bound + 1);
        let mut out = vec![S::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j].add_assign(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiplies by a base scalar.
    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::from_coeffs(Vec::new());
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplies by `c * ε`.
    pub fn shift_scale(&self, c: &S) -> Self {
        if c.is_zero() || self.coeffs.is_empty() {
            return Self::from_coeffs(Vec::new());
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.coeffs.iter().map(|a| a.mul(c)));
        Self::from_coeffs(coeffs)
    }

    /// Evaluates at ε = `at`.
    pub fn eval(&self, at: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }
}

impl<S: Ring> Ring for EpsPoly<S> {
    fn zero() -> Self {
        EpsPoly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Self::constant(S::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(S::from_i64(n))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.mul_truncated(rhs, usize::MAX - 1)
    }

    fn neg(&self) -> Self {
        EpsPoly {
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }

    fn add_assign(&mut self, rhs: &Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), S::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_assign(b);
        }
        while self.coeffs.last().map(Ring::is_zero).unwrap_or(false) {
            self.coeffs.pop();
        }
    }
}

/// Prints terms as `[c]*eps^k` joined by ` + `, lowest degree first.
impl<S: Ring> fmt::Display for EpsPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]*eps")?,
                _ => write!(f, "[{c}]*eps^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl EpsPoly<Rational> {
    /// Coefficients as integers when every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.numer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }
}
