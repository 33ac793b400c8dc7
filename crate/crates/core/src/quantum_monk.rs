//! Quantum Chevalley formula: multiplication of a Schubert class `[w]` by
//! the class `[s]` of a simple reflection.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::operators::{quantum_bruhat_operator, MultiplicativeFunction};
use crate::root_system::{Pairing, RootSystemError};
use crate::scalars::Ring;
use crate::weyl::WeylGroup;

/// A combination of Schubert classes indexed by group elements. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SchubertExpression<S> {
    terms: BTreeMap<usize, S>,
}

impl<S: Ring> Default for SchubertExpression<S> {
    fn default() -> Self {
        SchubertExpression {
            terms: BTreeMap::new(),
        }
    }
}

impl<S: Ring> SchubertExpression<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: usize) -> Self {
        let mut e = Self::new();
        e.add_term(w, S::one());
        e
    }

    pub fn add_term(&mut self, w: usize, c: S) {
        let entry = self.terms.entry(w).or_insert_with(S::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> &BTreeMap<usize, S> {
        &self.terms
    }

    pub fn coefficient(&self, w: usize) -> S {
        self.terms.get(&w).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> SchubertExpression<T> {
        let mut out = SchubertExpression::new();
        for (&w, c) in &self.terms {
            out.add_term(w, f(c));
        }
        out
    }

    /// Terms as `c[word]`, longest elements first.
    pub fn display<'a>(&'a self, g: &'a WeylGroup) -> impl fmt::Display + 'a {
        DisplayExpr { expr: self, g }
    }

    pub fn to_json(&self, g: &WeylGroup) -> serde_json::Value {
        serde_json::Value::Array(
            self.ordered(g)
                .map(|(w, c)| serde_json::json!({ "element": g.word_string(w), "coefficient": c.to_string() }))
                .collect(),
        )
    }

    fn ordered<'a>(&'a self, g: &WeylGroup) -> impl Iterator<Item = (usize, &'a S)> {
        let mut v: Vec<(usize, &S)> = self.terms.iter().map(|(&w, c)| (w, c)).collect();
        v.sort_by_key(|&(w, _)| (std::cmp::Reverse(g.length(w)), w));
        v.into_iter()
    }
}

struct DisplayExpr<'a, S> {
    expr: &'a SchubertExpression<S>,
    g: &'a WeylGroup,
}

impl<S: Ring> fmt::Display for DisplayExpr<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expr.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.expr.ordered(self.g).enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})")?;
            }
            write!(f, "[{}]", self.g.word_string(w))?;
        }
        Ok(())
    }
}

fn check_simple(g: &WeylGroup, s: usize) -> Result<(), RootSystemError> {
    if s >= g.rank() {
        return Err(RootSystemError::SimpleIndex {
            index: s,
            rank: g.rank(),
        });
    }
    Ok(())
}

/// `[w] * [s]`: the sum of `<omega_s, alpha> [w t]` over `l(wt) = l(w) + 1`
/// plus `<omega_s, alpha> E(alpha) [w t]` over `l(wt) = l(w) - 2 ht(alpha) + 1`.
///
/// `s` is a 0-based simple index.
pub fn quantum_chevalley<S: Ring>(
    g: &WeylGroup,
    w: usize,
    s: usize,
    e: &MultiplicativeFunction<S>,
    pairing: Pairing,
) -> Result<SchubertExpression<S>, RootSystemError> {
    check_simple(g, s)?;
    let rs = g.root_system();
    let lw = g.length(w) as i64;
    let mut out = SchubertExpression::new();
    for t in 0..rs.num_positive_roots() {
        let c = rs.fundamental_weight_coefficient(s, t, pairing);
        if c == 0 {
            continue;
        }
        let v = g.reflect_right(w, t);
        let lv = g.length(v) as i64;
        if lv == lw + 1 {
            out.add_term(v, S::from_i64(c));
        } else if lv == lw - 2 * rs.height(t) + 1 {
            out.add_term(v, S::from_i64(c).mul(&e.value(rs, t)));
        }
    }
    Ok(out)
}

/// The classical Chevalley formula: quantum terms dropped.
pub fn classical_chevalley<S: Ring>(
    g: &WeylGroup,
    w: usize,
    s: usize,
    pairing: Pairing,
) -> Result<SchubertExpression<S>, RootSystemError> {
    quantum_chevalley(
        g,
        w,
        s,
        &MultiplicativeFunction::constant(g.rank(), S::zero()),
        pairing,
    )
}

/// The same product read off the quantum Bruhat operators: the right-hand
/// analogue of `Q_t` is `w -> (Q_t(w^-1))^-1`.
pub fn chevalley_via_operators<S: Ring>(
    g: &Arc<WeylGroup>,
    w: usize,
    s: usize,
    e: &MultiplicativeFunction<S>,
    pairing: Pairing,
) -> Result<SchubertExpression<S>, RootSystemError> {
    check_simple(g, s)?;
    let rs = g.root_system();
    let winv = g.inverse(w);
    let mut out = SchubertExpression::new();
    for t in 0..rs.num_positive_roots() {
        let c = rs.fundamental_weight_coefficient(s, t, pairing);
        if c == 0 {
            continue;
        }
        let q = quantum_bruhat_operator(g, t, e);
        for (v, x) in q.column(winv) {
            out.add_term(g.inverse(*v), S::from_i64(c).mul(x));
        }
    }
    Ok(out)
}
