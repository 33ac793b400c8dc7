//! Yang-Baxter checks over dihedral reflection subgroups, the rank-two
//! equation systems and related identities.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::exec::Parallelism;
use crate::operators::{
    first_vector_difference, mixed_family, params_from_multiplicative, LinearOperator,
    MultiplicativeFunction, ParamSet, SparseVec,
};
use crate::root_system::{DihedralSubsystem, DihedralType, RootSystem, TypeLabel};
use crate::scalars::{Rational, Ring};
use crate::weyl::{ReflectionOrdering, WeylGroup};

/// Reflections of the Yang-Baxter equation for `sub`, as root indices:
/// `a, aba, ababa, ..., bab, b`.
pub fn ybe_word(rs: &RootSystem, sub: &DihedralSubsystem) -> Vec<usize> {
    rs.dihedral_sequence(sub)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scope {
    /// Every coset of every subgroup, i.e. the whole of `k[W]`.
    #[default]
    AllCosets,
    /// Only the subgroup itself, `k[W']`.
    IdentityCoset,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct YbeOptions {
    pub scope: Scope,
    pub maximal_only: bool,
    pub parallelism: Parallelism,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct YbeFailure {
    /// Canonical generators as 0-based root indices.
    pub subgroup: (usize, usize),
    pub subtype: String,
    pub coset_representative: String,
    pub row: String,
    pub column: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct YbeReport {
    pub group: String,
    pub subgroup_count: usize,
    /// Number of coset blocks compared.
    pub checked: usize,
    pub failures: Vec<YbeFailure>,
    pub elapsed_ms: u128,
}

impl YbeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Applies `R_{seq[0]} R_{seq[1]} ... R_{seq[m-1]}` to `v` (rightmost first).
fn apply_product<S: Ring>(
    family: &[LinearOperator<S>],
    seq: &[usize],
    v: SparseVec<S>,
) -> SparseVec<S> {
    seq.iter().rev().fold(v, |acc, &t| family[t].apply(&acc))
}

/// Compares both sides of the Yang-Baxter equation for every dihedral
/// reflection subgroup, on basis vectors of the chosen cosets.
///
/// `family[t]` is the R-operator of the reflection with root index `t`.
/// At most one failure (the first differing entry) is reported per subgroup.
pub fn check_ybe<S: Ring>(family: &[LinearOperator<S>], opts: &YbeOptions) -> YbeReport {
    let start = Instant::now();
    let g = family
        .first()
        .map(|r| r.group().clone())
        .expect("family covers at least one reflection");
    let rs = g.root_system();
    let subs = rs.dihedral_subsystems(opts.maximal_only);
    let decomps: Vec<_> = subs.iter().map(|s| g.coset_decomposition(s)).collect();
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for (k, cd) in decomps.iter().enumerate() {
        match opts.scope {
            Scope::AllCosets => blocks.extend((0..cd.num_cosets()).map(|r| (k, r))),
            Scope::IdentityCoset => blocks.push((k, cd.membership[0].0)),
        }
    }
    let seqs: Vec<Vec<usize>> = subs.iter().map(|s| ybe_word(rs, s)).collect();
    let results = opts.parallelism.map(blocks.len(), |b| {
        let (k, r) = blocks[b];
        let cd = &decomps[k];
        let seq = &seqs[k];
        let rev: Vec<usize> = seq.iter().rev().copied().collect();
        for w in cd.coset(&g, r) {
            let e = SparseVec::from([(w, S::one())]);
            let lhs = apply_product(family, seq, e.clone());
            let rhs = apply_product(family, &rev, e);
            if let Some((row, x, y)) = first_vector_difference(&lhs, &rhs) {
                return Some(YbeFailure {
                    subgroup: subs[k].canonical_pair,
                    subtype: subs[k].subtype.to_string(),
                    coset_representative: g.word_string(cd.representatives[r]),
                    row: g.word_string(row),
                    column: g.word_string(w),
                    lhs: x.to_string(),
                    rhs: y.to_string(),
                });
            }
        }
        None
    });
    let mut failures: Vec<YbeFailure> = Vec::new();
    for f in results.into_iter().flatten() {
        if !failures.iter().any(|x| x.subgroup == f.subgroup) {
            failures.push(f);
        }
    }
    YbeReport {
        group: g.name(),
        subgroup_count: subs.len(),
        checked: blocks.len(),
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalReport {
    pub checked: usize,
    /// Canonical pairs of failing A2 subgroups.
    pub failures: Vec<(usize, usize)>,
}

impl ClassicalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `[M_ij, M_jk] = [M_jk, M_ik] + [M_ik, M_ij]` on every A2 subgroup, with
/// `(ij, ik, jk) = (a, aba, b)`.
pub fn check_classical_ybe<S: Ring>(m_family: &[LinearOperator<S>]) -> ClassicalReport {
    let g = m_family[0].group().clone();
    let rs = g.root_system();
    let mut checked = 0;
    let mut failures = Vec::new();
    for sub in rs.dihedral_subsystems(false) {
        if sub.subtype != DihedralType::A2 {
            continue;
        }
        checked += 1;
        let seq = ybe_word(rs, &sub);
        let (ij, ik, jk) = (&m_family[seq[0]], &m_family[seq[1]], &m_family[seq[2]]);
        let lhs = ij.commutator(jk);
        let rhs = jk.commutator(ik).add(&ik.commutator(ij));
        if lhs != rhs {
            failures.push(sub.canonical_pair);
        }
    }
    ClassicalReport { checked, failures }
}

/// Named identities and whether each holds.
#[derive(Clone, Debug, Serialize)]
pub struct SystemReport {
    pub equations: Vec<(String, bool)>,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.equations.iter().all(|(_, ok)| *ok)
    }

    fn push<S: Ring>(&mut self, name: &str, lhs: S, rhs: S) {
        self.equations.push((name.to_string(), lhs == rhs));
    }
}

fn sum<S: Ring>(terms: &[S]) -> S {
    terms.iter().fold(S::zero(), |acc, x| acc.add(x))
}

fn prod<S: Ring>(terms: &[&S]) -> S {
    terms.iter().fold(S::one(), |acc, x| acc.mul(x))
}

/// The six quadratic equations for an A2 subgroup, the cubic equation and,
/// when `p - q` is the same on all three reflections, the reduced equation
/// `q_ik (q_ij + q_jk + kappa) = q_ij q_jk`.
///
/// `p` and `q` are given in the order `(ij, ik, jk) = (a, aba, b)`.
pub fn check_system_a2<S: Ring>(p: [&S; 3], q: [&S; 3]) -> SystemReport {
    let [pij, pik, pjk] = p;
    let [qij, qik, qjk] = q;
    let mut r = SystemReport {
        equations: Vec::new(),
    };
    let z = S::zero();
    let neg = |x: S| x.neg();
    r.push(
        "quadratic-1",
        sum(&[neg(prod(&[qij, qjk])), prod(&[pjk, qik]), prod(&[qik, qij])]),
        z.clone(),
    );
    r.push(
        "quadratic-2",
        sum(&[
            prod(&[qij, qjk]),
            neg(prod(&[qjk, qik])),
            neg(prod(&[qik, pij])),
        ]),
        z.clone(),
    );
    r.push(
        "quadratic-3",
        sum(&[
            prod(&[pij, qjk]),
            neg(prod(&[qjk, pik])),
            neg(prod(&[qik, pij])),
        ]),
        z.clone(),
    );
    r.push(
        "quadratic-4",
        sum(&[neg(prod(&[qij, pjk])), prod(&[pjk, qik]), prod(&[pik, qij])]),
        z.clone(),
    );
    r.push(
        "quadratic-5",
        sum(&[
            prod(&[pij, pjk]),
            neg(prod(&[qjk, pik])),
            neg(prod(&[pik, pij])),
        ]),
        z.clone(),
    );
    r.push(
        "quadratic-6",
        sum(&[neg(prod(&[pij, pjk])), prod(&[pjk, pik]), prod(&[pik, qij])]),
        z,
    );
    r.push("cubic", prod(&[qij, pik, qjk]), prod(&[pij, qik, pjk]));
    let kappa = pij.sub(qij);
    if kappa == pik.sub(qik) && kappa == pjk.sub(qjk) {
        r.push(
            "reduced",
            prod(&[qik, &sum(&[qij.clone(), qjk.clone(), kappa])]),
            prod(&[qij, qjk]),
        );
    }
    r
}

/// The single B2 equation under `p = q + kappa`, with `q` in the order
/// `(a, aba, bab, b)`.
pub fn check_system_b2<S: Ring>(q: [&S; 4], kappa_a: &S, kappa_b: &S) -> SystemReport {
    let [qa, qaba, qbab, qb] = q;
    let mut r = SystemReport {
        equations: Vec::new(),
    };
    let rhs = sum(&[
        prod(&[qa, qaba]),
        prod(&[qaba, qbab]),
        prod(&[qbab, qb]),
        prod(&[kappa_a, qaba]),
        prod(&[kappa_b, qbab]),
    ]);
    r.push("b2", prod(&[qa, qb]), rhs);
    r
}

/// The two G2 equations under `p = q + kappa`, with `q` in the order
/// `(a, aba, ababa, babab, bab, b)`.
pub fn check_system_g2<S: Ring>(q: [&S; 6], kappa_a: &S, kappa_b: &S) -> SystemReport {
    let [qa, qaba, qababa, qbabab, qbab, qb] = q;
    let (ka, kb) = (kappa_a, kappa_b);
    let mut r = SystemReport {
        equations: Vec::new(),
    };
    let rhs1 = sum(&[
        prod(&[qa, qaba]),
        prod(&[qaba, qababa]),
        prod(&[qababa, qbabab]),
        prod(&[qbabab, qbab]),
        prod(&[qbab, qb]),
        prod(&[ka, qaba]),
        prod(&[ka, qbabab]),
        prod(&[kb, qbab]),
        prod(&[kb, qababa]),
    ]);
    r.push("g2-quadratic", prod(&[qa, qb]), rhs1);

    let n = |x: S| x.neg();
    let quadratic = sum(&[
        n(prod(&[qa, qbab])),
        prod(&[qa, qababa]),
        n(prod(&[qb, qaba])),
        prod(&[qb, qbabab]),
        prod(&[qaba, qbabab]),
        prod(&[qbab, qababa]),
    ]);
    let quartic = sum(&[
        prod(&[qa, qb, qaba, qbab]),
        n(prod(&[qa, qb, qaba, qababa])),
        n(prod(&[qa, qb, qbab, qbabab])),
        n(prod(&[qa, qb, qababa, qbabab])),
        prod(&[qa, qaba, qbab, qbabab]),
        prod(&[qb, qbab, qababa, qbabab]),
        prod(&[qb, qaba, qbab, qababa]),
        prod(&[qa, qaba, qababa, qbabab]),
        prod(&[qaba, qbab, qababa, qbabab]),
    ]);
    let with_ka = ka.mul(&sum(&[
        qababa.clone(),
        n(prod(&[qa, qb, qbabab])),
        prod(&[qb, qaba, qbab]),
        prod(&[qa, qaba, qbabab]),
        prod(&[qaba, qbab, qbabab]),
        prod(&[qaba, qababa, qbabab]),
    ]));
    let with_kb = kb.mul(&sum(&[
        qbabab.clone(),
        n(prod(&[qa, qb, qababa])),
        prod(&[qa, qaba, qbab]),
        prod(&[qb, qbab, qababa]),
        prod(&[qaba, qbab, qababa]),
        prod(&[qbab, qababa, qbabab]),
    ]));
    let kappa2 = sum(&[
        prod(&[ka, ka, qaba, qbabab]),
        prod(&[ka, kb, qaba, qbab]),
        prod(&[kb, kb, qbab, qababa]),
    ]);
    r.push(
        "g2-quartic",
        sum(&[quadratic, quartic, with_ka, with_kb, kappa2]),
        S::zero(),
    );
    r
}

/// Runs the equation system matching the subtype of `sub` on `params`,
/// with `kappa_t = p_t - q_t`.
pub fn check_system<S: Ring>(
    rs: &RootSystem,
    sub: &DihedralSubsystem,
    params: &ParamSet<S>,
) -> SystemReport {
    let seq = ybe_word(rs, sub);
    let p: Vec<&S> = seq.iter().map(|&t| &params.p[t]).collect();
    let q: Vec<&S> = seq.iter().map(|&t| &params.q[t]).collect();
    let (ka, kb) = (params.kappa(seq[0]), params.kappa(seq[seq.len() - 1]));
    match sub.subtype {
        DihedralType::A1xA1 => SystemReport {
            equations: Vec::new(),
        },
        DihedralType::A2 => check_system_a2([p[0], p[1], p[2]], [q[0], q[1], q[2]]),
        DihedralType::B2 => check_system_b2([q[0], q[1], q[2], q[3]], &ka, &kb),
        DihedralType::G2 => check_system_g2([q[0], q[1], q[2], q[3], q[4], q[5]], &ka, &kb),
    }
}

/// Ordered product `R_{phi^{-1}(1)} ... R_{phi^{-1}(N)}`.
pub fn invariant_product<S: Ring>(
    family: &[LinearOperator<S>],
    ordering: &ReflectionOrdering,
) -> LinearOperator<S> {
    let g = family[0].group();
    ordering
        .order()
        .iter()
        .fold(LinearOperator::identity(g), |acc, &t| {
            acc.compose(&family[t])
        })
}

/// Applies the ordered product `R_{phi^{-1}(1)} ... R_{phi^{-1}(N)}` to one vector.
pub fn invariant_product_apply<S: Ring>(
    family: &[LinearOperator<S>],
    ordering: &ReflectionOrdering,
    v: SparseVec<S>,
) -> SparseVec<S> {
    apply_product(family, ordering.order(), v)
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidReport {
    /// Per adjacent pair `(i, i+1)` (1-based `i`): whether the braid relation holds.
    pub braid: Vec<bool>,
    /// `M_t^2 = p_t q_t Id` for every reflection.
    pub involutions: bool,
}

/// Type A_{n-1} mixed operators with `E1(alpha_i) = q_i + kappa`,
/// `E2(alpha_i) = q_i`, so that `p_i = q_i + kappa` on simple reflections.
pub fn check_braid_specialization(
    n: usize,
    q_simple: &[Rational],
    kappa: &Rational,
) -> Result<BraidReport, crate::Error> {
    let rs = Arc::new(RootSystem::new(TypeLabel::A, n - 1)?);
    let g = Arc::new(WeylGroup::new(rs.clone())?);
    if q_simple.len() != n - 1 {
        return Err(crate::operators::OperatorError::WrongLength {
            expected: n - 1,
            got: q_simple.len(),
        }
        .into());
    }
    let e1 = MultiplicativeFunction::new(q_simple.iter().map(|q| q.add(kappa)).collect());
    let e2 = MultiplicativeFunction::new(q_simple.to_vec());
    let params = params_from_multiplicative(&rs, &e1, &e2, kappa, kappa)?;
    let m = mixed_family(&g, &params);
    let braid = (0..n.saturating_sub(2))
        .map(|i| {
            let (a, b) = (&m[i], &m[i + 1]);
            a.compose(b).compose(a) == b.compose(a).compose(b)
        })
        .collect();
    let id = LinearOperator::identity(&g);
    let involutions = m
        .iter()
        .enumerate()
        .all(|(t, mt)| mt.compose(mt) == id.scale(&params.p[t].mul(&params.q[t])));
    Ok(BraidReport { braid, involutions })
}
