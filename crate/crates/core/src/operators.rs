//! Operators on the group algebra `k[W]`: mixed Bruhat operators, their
//! R-matrices, rescaling, the Yang family and quantum Bruhat operators.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::root_system::{LengthClass, RootSystem};
use crate::scalars::{EpsPoly, Field, MultiPoly, RationalFunction, Ring, ScalarError, Var};
use crate::weyl::WeylGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("E1 and E2 agree on the root {root}")]
    EqualValues { root: String },
    #[error("scale factor vanishes at {element}")]
    ZeroScale { element: String },
    #[error("<x, alpha> vanishes for alpha = {root}")]
    DegenerateYang { root: String },
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Sparse vector in `k[W]`, keyed by element index.
pub type SparseVec<S> = BTreeMap<usize, S>;

fn accumulate<S: Ring>(v: &mut SparseVec<S>, k: usize, c: S) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(x) => {
            x.add_assign(&c);
            if x.is_zero() {
                v.remove(&k);
            }
        }
        None => {
            v.insert(k, c);
        }
    }
}

/// Linear endomorphism of `k[W]` stored column by column.
#[derive(Clone, Debug)]
pub struct LinearOperator<S> {
    group: Arc<WeylGroup>,
    columns: Vec<Vec<(usize, S)>>,
}

impl<S: Ring> LinearOperator<S> {
    pub fn zero(group: &Arc<WeylGroup>) -> Self {
        LinearOperator {
            group: group.clone(),
            columns: vec![Vec::new(); group.size()],
        }
    }

    pub fn identity(group: &Arc<WeylGroup>) -> Self {
        LinearOperator {
            group: group.clone(),
            columns: (0..group.size()).map(|w| vec![(w, S::one())]).collect(),
        }
    }

    /// Builds from columns, merging repeated rows and dropping zeros.
    pub fn from_columns(group: &Arc<WeylGroup>, columns: Vec<Vec<(usize, S)>>) -> Self {
        assert_eq!(columns.len(), group.size());
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut v = SparseVec::new();
                for (r, c) in col {
                    accumulate(&mut v, r, c);
                }
                v.into_iter().collect()
            })
            .collect();
        LinearOperator {
            group: group.clone(),
            columns,
        }
    }

    fn from_vectors(group: &Arc<WeylGroup>, columns: Vec<SparseVec<S>>) -> Self {
        LinearOperator {
            group: group.clone(),
            columns: columns
                .into_iter()
                .map(|v| v.into_iter().collect())
                .collect(),
        }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn column(&self, w: usize) -> &[(usize, S)] {
        &self.columns[w]
    }

    pub fn entry(&self, row: usize, col: usize) -> S {
        self.columns[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(S::zero)
    }

    pub fn num_entries(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn apply_basis(&self, w: usize) -> SparseVec<S> {
        self.columns[w].iter().cloned().collect()
    }

    pub fn apply(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::new();
        for (&w, c) in v {
            for (r, a) in &self.columns[w] {
                accumulate(&mut out, *r, a.mul(c));
            }
        }
        out
    }

    /// `self ∘ rhs`
    pub fn compose(&self, rhs: &Self) -> Self {
        let cols = rhs
            .columns
            .iter()
            .map(|col| self.apply(&col.iter().cloned().collect()))
            .collect();
        Self::from_vectors(&self.group, cols)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let cols = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| {
                let mut v: SparseVec<S> = a.iter().cloned().collect();
                for (r, c) in b {
                    accumulate(&mut v, *r, c.clone());
                }
                v
            })
            .collect();
        Self::from_vectors(&self.group, cols)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&S::from_i64(-1)))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.mul(c))
    }

    /// `self ∘ rhs − rhs ∘ self`
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> LinearOperator<T> {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(r, c)| (*r, f(c)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        LinearOperator {
            group: self.group.clone(),
            columns,
        }
    }

    /// First `(row, column, self entry, other entry)` where the operators differ,
    /// scanning columns in index order and rows in increasing order.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize, S, S)> {
        for (w, (a, b)) in self.columns.iter().zip(&other.columns).enumerate() {
            if let Some((r, x, y)) =
                first_vector_difference(&a.iter().cloned().collect(), &b.iter().cloned().collect())
            {
                return Some((r, w, x, y));
            }
        }
        None
    }

    /// Entries as `[column word, row word, scalar]` triples.
    pub fn to_json(&self) -> serde_json::Value {
        let g = &self.group;
        let triples: Vec<serde_json::Value> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(w, col)| {
                col.iter().map(move |(r, c)| {
                    serde_json::json!([g.word_string(w), g.word_string(*r), c.to_string()])
                })
            })
            .collect();
        serde_json::Value::Array(triples)
    }
}

impl<S: Ring> PartialEq for LinearOperator<S> {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

/// First row where two sparse vectors differ, with both values.
pub fn first_vector_difference<S: Ring>(
    a: &SparseVec<S>,
    b: &SparseVec<S>,
) -> Option<(usize, S, S)> {
    let rows: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
    for r in rows {
        let x = a.get(&r).cloned().unwrap_or_else(S::zero);
        let y = b.get(&r).cloned().unwrap_or_else(S::zero);
        if x != y {
            return Some((r, x, y));
        }
    }
    None
}

/// Function on positive roots with `E(alpha + beta) = E(alpha) E(beta)`,
/// determined by its values on simple roots.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicativeFunction<S> {
    simple_values: Vec<S>,
}

impl<S: Ring> MultiplicativeFunction<S> {
    pub fn new(simple_values: Vec<S>) -> Self {
        MultiplicativeFunction { simple_values }
    }

    pub fn constant(rank: usize, c: S) -> Self {
        Self::new(vec![c; rank])
    }

    pub fn simple_values(&self) -> &[S] {
        &self.simple_values
    }

    /// `prod_i E(alpha_i)^{c_i}` for the positive root with index `t`.
    pub fn value(&self, rs: &RootSystem, t: usize) -> S {
        rs.root(t)
            .coeffs()
            .iter()
            .zip(&self.simple_values)
            .fold(S::one(), |acc, (&c, v)| acc.mul(&v.pow(c as u32)))
    }

    pub fn values(&self, rs: &RootSystem) -> Vec<S> {
        (0..rs.num_positive_roots())
            .map(|t| self.value(rs, t))
            .collect()
    }
}

/// Parameters `p_t`, `q_t` indexed by positive-root index.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet<S> {
    pub p: Vec<S>,
    pub q: Vec<S>,
}

impl<S: Ring> ParamSet<S> {
    /// `kappa_t = p_t - q_t`
    pub fn kappa(&self, t: usize) -> S {
        self.p[t].sub(&self.q[t])
    }

    /// `(kappa_short, kappa_long)` when `p - q` is constant on each length
    /// class. Simply-laced systems report the single value twice.
    pub fn kappa_by_class(&self, rs: &RootSystem) -> Option<(S, S)> {
        let mut short: Option<S> = None;
        let mut long: Option<S> = None;
        for t in 0..self.p.len() {
            let k = self.kappa(t);
            let slot = match rs.length_class(t) {
                LengthClass::Short => &mut short,
                LengthClass::Long => &mut long,
            };
            match slot {
                Some(x) if *x != k => return None,
                Some(_) => {}
                None => *slot = Some(k),
            }
        }
        let long = long?;
        Some((short.unwrap_or_else(|| long.clone()), long))
    }
}

/// `p_t = kappa_t E1(alpha) / (E1(alpha) - E2(alpha))` and
/// `q_t = kappa_t E2(alpha) / (E1(alpha) - E2(alpha))`.
pub fn params_from_multiplicative<S: Field>(
    rs: &RootSystem,
    e1: &MultiplicativeFunction<S>,
    e2: &MultiplicativeFunction<S>,
    kappa_short: &S,
    kappa_long: &S,
) -> Result<ParamSet<S>, OperatorError> {
    let n = rs.num_positive_roots();
    let mut p = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    for t in 0..n {
        let (a, b) = (e1.value(rs, t), e2.value(rs, t));
        let d = a.sub(&b);
        if d.is_zero() {
            return Err(OperatorError::EqualValues {
                root: rs.root(t).to_string(),
            });
        }
        let kappa = match rs.length_class(t) {
            LengthClass::Short => kappa_short,
            LengthClass::Long => kappa_long,
        };
        let inv = d.try_inv()?;
        p.push(kappa.mul(&a).mul(&inv));
        q.push(kappa.mul(&b).mul(&inv));
    }
    Ok(ParamSet { p, q })
}

/// `M_t(w) = p_t tw` if `l(tw) > l(w)`, else `q_t tw`.
pub fn mixed_bruhat_operator<S: Ring>(
    g: &Arc<WeylGroup>,
    t: usize,
    p: &S,
    q: &S,
) -> LinearOperator<S> {
    let columns = (0..g.size())
        .map(|w| {
            let v = g.reflect_left(t, w);
            let c = if g.length(v) > g.length(w) { p } else { q };
            vec![(v, c.clone())]
        })
        .collect();
    LinearOperator::from_columns(g, columns)
}

pub fn mixed_family<S: Ring>(g: &Arc<WeylGroup>, params: &ParamSet<S>) -> Vec<LinearOperator<S>> {
    (0..g.reflections().len())
        .map(|t| mixed_bruhat_operator(g, t, &params.p[t], &params.q[t]))
        .collect()
}

/// `R = 1 + ε M`
pub fn r_operator<S: Ring>(m: &LinearOperator<S>) -> LinearOperator<EpsPoly<S>> {
    let g = m.group().clone();
    let columns = (0..g.size())
        .map(|w| {
            let mut col = vec![(w, EpsPoly::one())];
            col.extend(
                m.column(w)
                    .iter()
                    .map(|(r, c)| (*r, EpsPoly::monomial(c.clone(), 1))),
            );
            col
        })
        .collect();
    LinearOperator::from_columns(&g, columns)
}

pub fn r_family<S: Ring>(family: &[LinearOperator<S>]) -> Vec<LinearOperator<EpsPoly<S>>> {
    family.iter().map(r_operator).collect()
}

/// Conjugation by `Γ(v) = γ_v v`: the entry at `(row, w)` is multiplied by
/// `γ_row / γ_w`.
pub fn rescale<S: Field>(
    family: &[LinearOperator<S>],
    gamma: &[S],
) -> Result<Vec<LinearOperator<S>>, OperatorError> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let g = first.group().clone();
    if gamma.len() != g.size() {
        return Err(OperatorError::WrongLength {
            expected: g.size(),
            got: gamma.len(),
        });
    }
    let inv: Vec<S> = gamma
        .iter()
        .enumerate()
        .map(|(w, c)| {
            c.try_inv().map_err(|_| OperatorError::ZeroScale {
                element: g.word_string(w),
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(family
        .iter()
        .map(|m| {
            let columns = (0..g.size())
                .map(|w| {
                    m.column(w)
                        .iter()
                        .map(|(r, c)| (*r, c.mul(&gamma[*r]).mul(&inv[w])))
                        .collect()
                })
                .collect();
            LinearOperator::from_columns(&g, columns)
        })
        .collect())
}

/// Direction of the quantum Bruhat step from `w` by the reflection `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// `l(tw) = l(w) + 1`
    Up,
    /// `l(tw) = l(w) - l(t)` and `l(t) = 2 ht(alpha) - 1`
    Down,
}

pub fn quantum_step(g: &WeylGroup, t: usize, w: usize) -> Option<Step> {
    let v = g.reflect_left(t, w);
    let (lw, lv) = (g.length(w), g.length(v));
    let lt = g.length(g.reflection_element(t));
    if lv == lw + 1 {
        Some(Step::Up)
    } else if lv + lt == lw && lt as i64 == 2 * g.root_system().height(t) - 1 {
        Some(Step::Down)
    } else {
        None
    }
}

/// `Q_t(w) = tw` on up steps, `E(alpha) tw` on down steps, zero otherwise.
pub fn quantum_bruhat_operator<S: Ring>(
    g: &Arc<WeylGroup>,
    t: usize,
    e: &MultiplicativeFunction<S>,
) -> LinearOperator<S> {
    let e_alpha = e.value(g.root_system(), t);
    let columns = (0..g.size())
        .map(|w| {
            let v = g.reflect_left(t, w);
            match quantum_step(g, t, w) {
                Some(Step::Up) => vec![(v, S::one())],
                Some(Step::Down) => vec![(v, e_alpha.clone())],
                None => Vec::new(),
            }
        })
        .collect();
    LinearOperator::from_columns(g, columns)
}

pub fn quantum_family<S: Ring>(
    g: &Arc<WeylGroup>,
    e: &MultiplicativeFunction<S>,
) -> Vec<LinearOperator<S>> {
    (0..g.reflections().len())
        .map(|t| quantum_bruhat_operator(g, t, e))
        .collect()
}

/// `<x, alpha>` for every positive root, given `<x, alpha_i>` per simple root.
pub fn root_pairings<S: Ring>(rs: &RootSystem, x: &[S]) -> Vec<S> {
    (0..rs.num_positive_roots())
        .map(|t| {
            rs.root(t)
                .coeffs()
                .iter()
                .zip(x)
                .fold(S::zero(), |acc, (&c, xi)| acc.add(&xi.mul(&S::from_i64(c))))
        })
        .collect()
}

/// Simple-root pairings `x_i - x_{i+1}` for a point of `k^{n+1}` in type A_n.
pub fn type_a_pairings<S: Ring>(coords: &[S]) -> Vec<S> {
    coords.windows(2).map(|w| w[0].sub(&w[1])).collect()
}

/// Left multiplication by `1 + (varkappa_t / <x, alpha>) t`.
pub fn yang_operator<S: Field>(
    g: &Arc<WeylGroup>,
    t: usize,
    x: &[S],
    varkappa: (&S, &S),
) -> Result<LinearOperator<S>, OperatorError> {
    let rs = g.root_system();
    if x.len() != rs.rank() {
        return Err(OperatorError::WrongLength {
            expected: rs.rank(),
            got: x.len(),
        });
    }
    let pairing = root_pairings(rs, x).swap_remove(t);
    let inv = pairing
        .try_inv()
        .map_err(|_| OperatorError::DegenerateYang {
            root: rs.root(t).to_string(),
        })?;
    let k = match rs.length_class(t) {
        LengthClass::Short => varkappa.0,
        LengthClass::Long => varkappa.1,
    };
    let c = k.mul(&inv);
    let columns = (0..g.size())
        .map(|w| vec![(w, S::one()), (g.reflect_left(t, w), c.clone())])
        .collect();
    Ok(LinearOperator::from_columns(g, columns))
}

pub fn yang_family<S: Field>(
    g: &Arc<WeylGroup>,
    x: &[S],
    varkappa: (&S, &S),
) -> Result<Vec<LinearOperator<S>>, OperatorError> {
    (0..g.reflections().len())
        .map(|t| yang_operator(g, t, x, varkappa))
        .collect()
}

/// Indeterminates for symbolic runs.
pub mod symbols {
    use super::*;

    /// `E1(alpha_i)` as the variable `e1_i` (1-based).
    pub fn e1(i: usize) -> Var {
        Var::new(&format!("e1_{}", i + 1))
    }

    pub fn e2(i: usize) -> Var {
        Var::new(&format!("e2_{}", i + 1))
    }

    pub fn kappa_short() -> Var {
        Var::new("k_short")
    }

    pub fn kappa_long() -> Var {
        Var::new("k_long")
    }

    /// Quantum parameter `E(alpha_i)` as `E_i`.
    pub fn quantum(i: usize) -> Var {
        Var::new(&format!("E_{}", i + 1))
    }

    pub fn delta() -> Var {
        Var::new("delta")
    }

    fn rf(v: Var) -> RationalFunction {
        RationalFunction::var(v)
    }

    /// Parameters from fully symbolic `E1`, `E2`, `kappa_short`, `kappa_long`.
    pub fn mixed_params(rs: &RootSystem) -> ParamSet<RationalFunction> {
        let n = rs.rank();
        let e1 = MultiplicativeFunction::new((0..n).map(|i| rf(e1(i))).collect());
        let e2 = MultiplicativeFunction::new((0..n).map(|i| rf(e2(i))).collect());
        params_from_multiplicative(rs, &e1, &e2, &rf(kappa_short()), &rf(kappa_long()))
            .expect("distinct indeterminates never coincide")
    }

    pub fn quantum_function(rank: usize) -> MultiplicativeFunction<RationalFunction> {
        MultiplicativeFunction::new((0..rank).map(|i| rf(quantum(i))).collect())
    }

    pub fn quantum_polynomial_function(rank: usize) -> MultiplicativeFunction<MultiPoly> {
        MultiplicativeFunction::new((0..rank).map(|i| MultiPoly::var(quantum(i))).collect())
    }
}

/// One entry of `M~_t - Q_t` in the degeneration check.
#[derive(Clone, Debug)]
pub struct DegenerationResidual {
    pub reflection: usize,
    pub row: usize,
    pub column: usize,
    pub value: RationalFunction,
}

/// Specializes `E1 = 1`, `E2(alpha) = delta^{2 ht(alpha)} E(alpha)`,
/// `kappa = 1/delta`, rescales by `gamma_w = delta^{l(w)}` and returns every
/// entry of the difference with the quantum Bruhat operator.
pub fn degeneration_residuals(g: &Arc<WeylGroup>) -> Vec<DegenerationResidual> {
    let rs = g.root_system();
    let n = rs.rank();
    let delta = RationalFunction::var(symbols::delta());
    let d2 = delta.mul(&delta);
    let e = symbols::quantum_function(n);
    let e1 = MultiplicativeFunction::constant(n, RationalFunction::one());
    let e2 = MultiplicativeFunction::new(e.simple_values().iter().map(|x| x.mul(&d2)).collect());
    let kappa = delta.try_inv().expect("delta is nonzero");
    let params = params_from_multiplicative(rs, &e1, &e2, &kappa, &kappa)
        .expect("E1 and E2 differ symbolically");
    let gamma: Vec<RationalFunction> = (0..g.size())
        .map(|w| delta.pow(g.length(w) as u32))
        .collect();
    let scaled = rescale(&mixed_family(g, &params), &gamma).expect("gamma is nonzero");
    let mut out = Vec::new();
    for (t, m) in scaled.iter().enumerate() {
        let q = quantum_bruhat_operator(g, t, &e);
        let diff = m.sub(&q);
        for w in 0..g.size() {
            for (r, c) in diff.column(w) {
                out.push(DegenerationResidual {
                    reflection: t,
                    row: *r,
                    column: w,
                    value: c.clone(),
                });
            }
        }
    }
    out
}

/// True when every residual vanishes at `delta = 0`.
pub fn check_quantum_degeneration(g: &Arc<WeylGroup>) -> bool {
    let d = symbols::delta();
    degeneration_residuals(g)
        .iter()
        .all(|r| r.value.vanishes_at_zero(d))
}
