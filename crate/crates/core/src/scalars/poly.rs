use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Ring, ScalarError};

struct Registry {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

fn registry() -> &'static RwLock<Registry> {
    static REGISTRY: OnceLock<RwLock<Registry>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        RwLock::new(Registry {
            names: Vec::new(),
            ids: HashMap::new(),
        })
    })
}

/// A polynomial indeterminate, interned by name.
///
/// Variables compare by registration order, which is also the variable order
/// used by the graded-lexicographic term order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u32);

impl Var {
    pub fn new(name: &str) -> Var {
        if let Some(&id) = registry().read().unwrap().ids.get(name) {
            return Var(id);
        }
        let mut reg = registry().write().unwrap();
        if let Some(&id) = reg.ids.get(name) {
            return Var(id);
        }
        let id = reg.names.len() as u32;
        reg.names.push(name.to_string());
        reg.ids.insert(name.to_string(), id);
        Var(id)
    }

    pub fn name(self) -> String {
        registry().read().unwrap().names[self.0 as usize].clone()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A monomial stored sparsely as `(variable, exponent)` pairs sorted by
/// variable, with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, exp: u32) -> Monomial {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Monomial {
        pairs.sort_by_key(|p| p.0);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|p| p.1 > 0);
        Monomial(out)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|p| p.0 == v).map(|p| p.1).unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                if d > e {
                    return None;
                }
                if e > d {
                    out.push((v, e - d));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }
}

/// Graded lexicographic: total degree first, then exponent vectors compared
/// lexicographically in variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if x.1 != y.1 {
                            return x.1.cmp(&y.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with integer coefficients.
///
/// Terms are kept in a map ordered by the graded-lexicographic monomial
/// order; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn constant(c: impl Into<BigInt>) -> MultiPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::term(1, Monomial::var(v, 1))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> MultiPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_constant() {
            Some(
                self.terms
                    .get(&Monomial::one())
                    .cloned()
                    .unwrap_or_default(),
            )
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Largest power of `v` dividing every term; `None` for the zero polynomial.
    pub fn valuation(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).min()
    }

    /// Gcd of all coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::default();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Exact division of every coefficient by `c`; callers guarantee divisibility.
    pub fn div_exact_int(&self, c: &BigInt) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k / c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), k.clone()))
                .collect(),
        }
    }

    fn accumulate(&mut self, m: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Exact polynomial division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lead_m, lead_c) = divisor.leading()?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::default();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lead_m)?;
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            let step = MultiPoly::term(qc.clone(), qm.clone());
            rem = rem.sub(&divisor.mul(&step));
            quot.accumulate(qm, qc);
        }
        Some(quot)
    }

    /// Splits `self` as `sign * content * primitive` with the primitive part
    /// having a positive leading coefficient.
    pub fn primitive_part(&self) -> (BigInt, MultiPoly) {
        if self.is_zero() {
            return (BigInt::zero(), MultiPoly::default());
        }
        let mut content = self.content();
        if self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            content = -content;
        }
        (content.clone(), self.div_exact_int(&content))
    }

    pub fn eval(&self, assignment: &BTreeMap<Var, Rational>) -> Result<Rational, ScalarError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::integer(c.clone());
            for &(v, e) in m.pairs() {
                let x = assignment
                    .get(&v)
                    .ok_or_else(|| ScalarError::UnassignedVariable(v.name()))?;
                t = t.mul(&x.pow(e));
            }
            acc.add_assign(&t);
        }
        Ok(acc)
    }

    /// Substitutes polynomials for some variables; unassigned variables stay.
    pub fn substitute(&self, assignment: &BTreeMap<Var, MultiPoly>) -> MultiPoly {
        let mut acc = MultiPoly::default();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            let mut kept = Vec::new();
            for &(v, e) in m.pairs() {
                match assignment.get(&v) {
                    Some(p) => t = t.mul(&p.pow(e)),
                    None => kept.push((v, e)),
                }
            }
            acc = acc.add(&t.mul_monomial(&Monomial::from_pairs(kept)));
        }
        acc
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|p| p.0))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }

    fn one() -> Self {
        MultiPoly::constant(1)
    }

    fn from_i64(n: i64) -> Self {
        MultiPoly::constant(n)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    fn add(&self, rhs: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.accumulate(m.clone(), c.clone());
        }
        big
    }

    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), -c);
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::default();
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn add_assign(&mut self, rhs: &Self) {
        for (m, c) in &rhs.terms {
            self.accumulate(m.clone(), c.clone());
        }
    }
}

/// Canonical form: terms in decreasing graded-lex order, e.g. `2*x^2*y - y + 3`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::new("x"))
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Var::new("y"))
    }

    #[test]
    fn graded_lex_display() {
        // x registered before y, so x > y at equal degree.
        let _ = (Var::new("x"), Var::new("y"));
        let p = y()
            .add(&x().mul(&x()).scale(&2.into()))
            .sub(&MultiPoly::constant(3));
        assert_eq!(p.to_string(), "2*x^2 + y - 3");
        let q = x().mul(&y()).sub(&y().mul(&y()));
        assert_eq!(q.to_string(), "x*y - y^2");
    }

    #[test]
    fn exact_division() {
        let a = x().sub(&y());
        let b = x().add(&y());
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&x()), None);
        assert_eq!(prod.add(&MultiPoly::one()).div_exact(&b), None);
    }

    #[test]
    fn primitive_part_has_positive_lead() {
        let p = x().scale(&(-6).into()).add(&MultiPoly::constant(4));
        let (c, prim) = p.primitive_part();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(prim.to_string(), "3*x - 2");
    }

    #[test]
    fn eval_and_valuation() {
        let d = Var::new("delta_t");
        let p = MultiPoly::var(d)
            .pow(3)
            .add(&MultiPoly::var(d).pow(2).mul(&x()));
        assert_eq!(p.valuation(d), Some(2));
        let mut at = BTreeMap::new();
        at.insert(d, Rational::integer(2));
        at.insert(Var::new("x"), Rational::integer(5));
        assert_eq!(p.eval(&at).unwrap(), Rational::integer(28));
        at.remove(&Var::new("x"));
        assert!(matches!(
            p.eval(&at),
            Err(ScalarError::UnassignedVariable(_))
        ));
    }
}
