//! Finite crystallographic root systems built from Cartan matrices.
//!
//! Roots are integer coefficient vectors in the basis of simple roots. The
//! Cartan matrix follows the convention `a[i][j] = <alpha_i, alpha_j^vee>`
//! with Bourbaki numbering of the Dynkin diagram.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("unsupported root system type `{0}`")]
    UnknownType(String),
    #[error("type {label} does not exist in rank {rank}")]
    InvalidRank { label: TypeLabel, rank: usize },
    #[error("root {0:?} is not positive")]
    NotPositive(Vec<i64>),
    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("simple root index {index} out of range for rank {rank}")]
    SimpleIndex { index: usize, rank: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TypeLabel {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "A" | "a" => TypeLabel::A,
            "B" | "b" => TypeLabel::B,
            "C" | "c" => TypeLabel::C,
            "D" | "d" => TypeLabel::D,
            "E" | "e" => TypeLabel::E,
            "F" | "f" => TypeLabel::F,
            "G" | "g" => TypeLabel::G,
            other => return Err(RootSystemError::UnknownType(other.to_string())),
        })
    }
}

/// Type label, rank and Cartan matrix of an irreducible finite root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
}

impl CartanDatum {
    pub fn standard(type_label: TypeLabel, rank: usize) -> Result<Self, RootSystemError> {
        use TypeLabel::*;
        let valid = match type_label {
            A => (1..=8).contains(&rank),
            B => (2..=8).contains(&rank),
            C => (3..=8).contains(&rank),
            D => (4..=8).contains(&rank),
            E => (6..=8).contains(&rank),
            F => rank == 4,
            G => rank == 2,
        };
        if !valid {
            return Err(RootSystemError::InvalidRank {
                label: type_label,
                rank,
            });
        }
        let n = rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match type_label {
            A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            B => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                // alpha_n short
                link(n - 2, n - 1, -2, -1);
            }
            C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                // alpha_n long
                link(n - 2, n - 1, -1, -2);
            }
            D => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            F => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
            G => link(0, 1, -1, -3),
        }
        Ok(CartanDatum {
            type_label,
            rank,
            cartan_matrix: a,
        })
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.type_label, self.rank)
    }
}

/// A root as its coefficient vector in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn negated(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    /// Sum of the simple-root coefficients.
    pub fn height(&self) -> Result<i64, RootSystemError> {
        if !self.is_positive() {
            return Err(RootSystemError::NotPositive(self.0.clone()));
        }
        Ok(self.0.iter().sum())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c > 0 { "+" } else { "-" })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

/// Which pairing to use for `<omega_s, alpha>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pairing {
    /// Coefficient of `alpha_s` in `alpha`.
    #[default]
    Root,
    /// Coefficient of `alpha_s^vee` in the coroot `alpha^vee`.
    Coroot,
}

/// Root subsystem of rank two, generated by two reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralSubsystem {
    /// Indices into the ambient positive roots, sorted.
    pub positive_roots: Vec<usize>,
    /// Canonical generators `(a, b)` as root indices, `a < b`.
    pub canonical_pair: (usize, usize),
    pub subtype: DihedralType,
    pub maximal: bool,
}

impl DihedralSubsystem {
    /// `m(a, b)`: the number of reflections in the subsystem.
    pub fn order_m(&self) -> usize {
        self.positive_roots.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DihedralType {
    A1xA1,
    A2,
    B2,
    G2,
}

impl fmt::Display for DihedralType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DihedralType::A1xA1 => "A1xA1",
            DihedralType::A2 => "A2",
            DihedralType::B2 => "B2",
            DihedralType::G2 => "G2",
        })
    }
}

/// Integer square matrix stored row-major.
pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanDatum,
    positive_roots: Vec<Root>,
    root_index: HashMap<Vec<i64>, usize>,
    /// Gram matrix of the invariant form on simple roots, integer-scaled.
    gram: IntMatrix,
    norms: Vec<i64>,
    length_class: Vec<LengthClass>,
    simple_reflection_matrices: Vec<IntMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RootSystemDoc {
    #[serde(rename = "type")]
    type_label: TypeLabel,
    rank: usize,
    positive_roots: Vec<Vec<i64>>,
    length_class: Vec<LengthClass>,
}

impl RootSystem {
    pub fn new(type_label: TypeLabel, rank: usize) -> Result<Self, RootSystemError> {
        Ok(Self::from_cartan(CartanDatum::standard(type_label, rank)?))
    }

    pub fn from_cartan(cartan: CartanDatum) -> Self {
        let n = cartan.rank;
        let a = &cartan.cartan_matrix;
        let d = symmetrizer(a);
        let gram: IntMatrix = (0..n)
            .map(|i| (0..n).map(|j| a[i][j] * d[j]).collect())
            .collect();

        // s_i(alpha_j) = alpha_j - a[j][i] alpha_i
        let simple_reflection_matrices: Vec<IntMatrix> = (0..n)
            .map(|i| {
                let mut m = identity_matrix(n);
                for j in 0..n {
                    m[i][j] -= a[j][i];
                }
                m
            })
            .collect();

        let mut found: Vec<Vec<i64>> = Vec::new();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            found.push(r.clone());
            for m in &simple_reflection_matrices {
                let image = mat_vec(m, &r);
                if image.iter().all(|&c| c >= 0) && seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        found.sort_by(|x, y| {
            let (hx, hy): (i64, i64) = (x.iter().sum(), y.iter().sum());
            hx.cmp(&hy).then_with(|| y.cmp(x))
        });
        let positive_roots: Vec<Root> = found.into_iter().map(Root).collect();
        let root_index = positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.0.clone(), k))
            .collect();
        let norms: Vec<i64> = positive_roots
            .iter()
            .map(|r| bilinear(&gram, &r.0, &r.0))
            .collect();
        let max_norm = norms.iter().copied().max().unwrap_or(0);
        let length_class = norms
            .iter()
            .map(|&x| {
                if x == max_norm {
                    LengthClass::Long
                } else {
                    LengthClass::Short
                }
            })
            .collect();
        RootSystem {
            cartan,
            positive_roots,
            root_index,
            gram,
            norms,
            length_class,
            simple_reflection_matrices,
        }
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn name(&self) -> String {
        self.cartan.name()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root(&self, index: usize) -> &Root {
        &self.positive_roots[index]
    }

    /// Index of a positive root.
    pub fn index_of(&self, coeffs: &[i64]) -> Option<usize> {
        self.root_index.get(coeffs).copied()
    }

    /// Index of the positive root `±coeffs`, if either sign is a root.
    pub fn index_up_to_sign(&self, coeffs: &[i64]) -> Option<usize> {
        self.index_of(coeffs).or_else(|| {
            let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
            self.index_of(&neg)
        })
    }

    pub fn simple_root_index(&self, i: usize) -> Result<usize, RootSystemError> {
        if i >= self.rank() {
            return Err(RootSystemError::SimpleIndex {
                index: i,
                rank: self.rank(),
            });
        }
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        Ok(self.root_index[&e])
    }

    pub fn contains(&self, coeffs: &[i64]) -> bool {
        self.index_up_to_sign(coeffs).is_some()
            && (Root(coeffs.to_vec()).is_positive()
                || Root(coeffs.to_vec()).negated().is_positive())
    }

    pub fn height(&self, index: usize) -> i64 {
        self.positive_roots[index].0.iter().sum()
    }

    pub fn length_class(&self, index: usize) -> LengthClass {
        self.length_class[index]
    }

    pub fn length_classes(&self) -> &[LengthClass] {
        &self.length_class
    }

    pub fn is_simply_laced(&self) -> bool {
        self.length_class.iter().all(|c| *c == LengthClass::Long)
    }

    pub fn simple_reflection_matrix(&self, i: usize) -> &IntMatrix {
        &self.simple_reflection_matrices[i]
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// Invariant form `(x, y)` in the integer scaling of [`RootSystem::gram`].
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        bilinear(&self.gram, x, y)
    }

    /// `<x, beta^vee> = 2 (x, beta) / (beta, beta)` for a positive root index.
    pub fn coroot_pairing(&self, x: &[i64], beta: usize) -> i64 {
        2 * self.form(x, &self.positive_roots[beta].0) / self.norms[beta]
    }

    /// Image of `x` under the reflection in the positive root `beta`.
    pub fn reflect(&self, beta: usize, x: &[i64]) -> Vec<i64> {
        let c = self.coroot_pairing(x, beta);
        x.iter()
            .zip(&self.positive_roots[beta].0)
            .map(|(xi, bi)| xi - c * bi)
            .collect()
    }

    /// Matrix of the reflection in `beta`; column `j` is the image of `alpha_j`.
    pub fn reflection_matrix(&self, beta: usize) -> IntMatrix {
        let n = self.rank();
        let mut m = vec![vec![0; n]; n];
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let img = self.reflect(beta, &e);
            for i in 0..n {
                m[i][j] = img[i];
            }
        }
        m
    }

    /// Pairing `<omega_s, alpha>` of the fundamental weight for simple index
    /// `s` with the positive root `alpha`.
    pub fn fundamental_weight_coefficient(&self, s: usize, alpha: usize, pairing: Pairing) -> i64 {
        let c = self.positive_roots[alpha].0[s];
        match pairing {
            Pairing::Root => c,
            Pairing::Coroot => {
                let s_norm = self.gram[s][s];
                c * s_norm / self.norms[alpha]
            }
        }
    }

    /// Rank-two subsystems generated by pairs of reflections.
    ///
    /// With `maximal_only == false` every subgroup generated by two distinct
    /// reflections appears exactly once.
    pub fn dihedral_subsystems(&self, maximal_only: bool) -> Vec<DihedralSubsystem> {
        let n = self.positive_roots.len();
        let mut by_roots: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                by_roots.insert(self.reflection_closure(&[i, j]));
            }
        }
        let all: Vec<Vec<usize>> = by_roots.into_iter().collect();
        let mut out = Vec::new();
        for roots in &all {
            let maximal = !all.iter().any(|other| {
                other.len() > roots.len() && roots.iter().all(|r| other.binary_search(r).is_ok())
            });
            if maximal_only && !maximal {
                continue;
            }
            let subtype = match roots.len() {
                2 => DihedralType::A1xA1,
                3 => DihedralType::A2,
                4 => DihedralType::B2,
                6 => DihedralType::G2,
                k => unreachable!("rank-two subsystem with {k} positive roots"),
            };
            out.push(DihedralSubsystem {
                canonical_pair: self.canonical_pair(roots),
                positive_roots: roots.clone(),
                subtype,
                maximal,
            });
        }
        out
    }

    /// Reflections `a, aba, ababa, ..., bab, b` of a dihedral subsystem with
    /// canonical generators `(a, b)`, as root indices.
    pub fn dihedral_sequence(&self, sub: &DihedralSubsystem) -> Vec<usize> {
        let (a, b) = sub.canonical_pair;
        let m = sub.order_m();
        let mut out = Vec::with_capacity(m);
        for k in 0..m {
            // word a b a ... of length k applied to a (k even) or b (k odd)
            let mut x = self.positive_roots[if k % 2 == 0 { a } else { b }]
                .0
                .clone();
            for j in (0..k).rev() {
                x = self.reflect(if j % 2 == 0 { a } else { b }, &x);
            }
            out.push(
                self.index_of(&x)
                    .expect("alternating sequence stays positive"),
            );
        }
        debug_assert_eq!(out.last(), Some(&b));
        out
    }

    /// Positive roots of the reflection subgroup generated by `generators`.
    pub fn reflection_closure(&self, generators: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = generators.iter().copied().collect();
        loop {
            let current: Vec<usize> = set.iter().copied().collect();
            let mut grew = false;
            for &g in &current {
                for &h in &current {
                    let img = self.reflect(g, &self.positive_roots[h].0);
                    let k = self
                        .index_up_to_sign(&img)
                        .expect("reflection maps roots to roots");
                    grew |= set.insert(k);
                }
            }
            if !grew {
                return set.into_iter().collect();
            }
        }
    }

    /// The two roots of a rank-two positive system spanning all others with
    /// nonnegative coefficients.
    fn canonical_pair(&self, roots: &[usize]) -> (usize, usize) {
        for (x, &g1) in roots.iter().enumerate() {
            for &g2 in &roots[x + 1..] {
                let (r1, r2) = (&self.positive_roots[g1].0, &self.positive_roots[g2].0);
                let (a11, a12, a22) = (self.form(r1, r1), self.form(r1, r2), self.form(r2, r2));
                let det = a11 * a22 - a12 * a12;
                if det == 0 {
                    continue;
                }
                let spans = roots.iter().all(|&d| {
                    let rd = &self.positive_roots[d].0;
                    let (b1, b2) = (self.form(rd, r1), self.form(rd, r2));
                    // Cramer's rule; signs of c1, c2 against det.
                    let c1 = b1 * a22 - b2 * a12;
                    let c2 = a11 * b2 - a12 * b1;
                    c1 * det.signum() >= 0 && c2 * det.signum() >= 0
                });
                if spans {
                    return (g1, g2);
                }
            }
        }
        unreachable!("rank-two positive system without simple roots")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RootSystemDoc {
            type_label: self.cartan.type_label,
            rank: self.rank(),
            positive_roots: self.positive_roots.iter().map(|r| r.0.clone()).collect(),
            length_class: self.length_class.clone(),
        })
        .expect("root system serializes")
    }
}

/// Positive integers `d` with `a[i][j] * d[j]` symmetric.
fn symmetrizer(a: &IntMatrix) -> Vec<i64> {
    let n = a.len();
    // d_j / d_i = a[j][i] / a[i][j]; track as rationals num/den.
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    d[0] = Some((1, 1));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (ni, di) = d[i].unwrap();
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                let (num, den) = (ni * a[j][i], di * a[i][j]);
                let g = gcd(num.abs(), den.abs());
                d[j] = Some((num / g, den / g));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<(i64, i64)> = d.into_iter().map(|x| x.unwrap_or((1, 1))).collect();
    let l = d.iter().fold(1, |acc, &(_, den)| lcm(acc, den.abs()));
    d.iter().map(|&(num, den)| (num * l / den).abs()).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

pub(crate) fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub(crate) fn mat_vec(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn bilinear(g: &IntMatrix, x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0 {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            s += xi * g[i][j] * yj;
        }
    }
    s
}
