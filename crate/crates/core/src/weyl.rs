//! Finite Weyl groups: elements, enumeration, reduced words, Bruhat order,
//! reflection orderings and cosets of dihedral reflection subgroups.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use rand::Rng;
use thiserror::Error;

use crate::root_system::{identity_matrix, mat_vec, DihedralSubsystem, IntMatrix, RootSystem};

pub const DEFAULT_GROUP_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("group {name} exceeds the enumeration bound of {bound} elements")]
    TooLarge { name: String, bound: usize },
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("word {0:?} is not a word for the longest element")]
    NotLongest(Vec<usize>),
    #[error("simple index {0} out of range")]
    BadLetter(usize),
    #[error("candidate ordering is not a permutation of the reflections")]
    NotPermutation,
    #[error("matrix does not define an element of the group")]
    NotAnElement,
}

/// A group element as its action on simple-root coordinates.
///
/// Column `j` of `action` is the image of `alpha_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    action: IntMatrix,
    length: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            action: identity_matrix(rank),
            length: 0,
        }
    }

    fn from_matrix(rs: &RootSystem, action: IntMatrix) -> Self {
        let length = rs
            .positive_roots()
            .iter()
            .filter(|r| {
                let img = mat_vec(&action, r.coeffs());
                img.iter().any(|&c| c < 0)
            })
            .count();
        WeylElement { action, length }
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.action, x)
    }

    pub fn multiply(&self, rs: &RootSystem, rhs: &WeylElement) -> WeylElement {
        let n = self.action.len();
        let mut m = vec![vec![0; n]; n];
        for (row, out) in self.action.iter().zip(m.iter_mut()) {
            for (&a, rhs_row) in row.iter().zip(&rhs.action) {
                if a == 0 {
                    continue;
                }
                for (o, &r) in out.iter_mut().zip(rhs_row) {
                    *o += a * r;
                }
            }
        }
        WeylElement::from_matrix(rs, m)
    }

    fn key(&self) -> Vec<i64> {
        self.action.iter().flatten().copied().collect()
    }
}

/// Reflection in the positive root with index `root`; `element` is its index
/// in the enumerated group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Reflection {
    pub root: usize,
    pub element: usize,
}

/// The enumerated group with multiplication tables.
///
/// Elements are indexed in breadth-first order from the identity, so index 0
/// is `e` and indices are sorted by length.
#[derive(Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    simple_left: Vec<Vec<usize>>,
    simple_right: Vec<Vec<usize>>,
    reflection_left: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    reflections: Vec<Reflection>,
    longest: usize,
    upsets: OnceLock<Vec<Vec<u64>>>,
}

impl WeylGroup {
    pub fn new(rs: Arc<RootSystem>) -> Result<Self, WeylError> {
        Self::with_bound(rs, DEFAULT_GROUP_BOUND)
    }

    pub fn with_bound(rs: Arc<RootSystem>, bound: usize) -> Result<Self, WeylError> {
        let n = rs.rank();
        let gens: Vec<WeylElement> = (0..n)
            .map(|i| WeylElement::from_matrix(&rs, rs.simple_reflection_matrix(i).clone()))
            .collect();
        let mut elements = vec![WeylElement::identity(n)];
        let mut index = HashMap::new();
        index.insert(elements[0].key(), 0);
        let mut simple_left: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut queue = VecDeque::from([0usize]);
        let too_large = || WeylError::TooLarge {
            name: rs.name(),
            bound,
        };
        while let Some(w) = queue.pop_front() {
            for (i, s) in gens.iter().enumerate() {
                let sw = s.multiply(&rs, &elements[w]);
                let key = sw.key();
                let k = match index.get(&key) {
                    Some(&k) => k,
                    None => {
                        let k = elements.len();
                        if k >= bound {
                            return Err(too_large());
                        }
                        index.insert(key, k);
                        elements.push(sw);
                        queue.push_back(k);
                        k
                    }
                };
                if simple_left[i].len() <= w {
                    simple_left[i].resize(w + 1, usize::MAX);
                }
                simple_left[i][w] = k;
            }
        }
        let size = elements.len();
        let lookup = |e: &WeylElement| index[&e.key()];
        let inverse: Vec<usize> = (0..size)
            .map(|w| {
                let word = word_by_table(&simple_left, &elements, w);
                word.iter().fold(0, |acc, &i| simple_left[i][acc])
            })
            .collect();
        let simple_right: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..size)
                    .map(|w| inverse[simple_left[i][inverse[w]]])
                    .collect()
            })
            .collect();
        let reflections: Vec<Reflection> = (0..rs.num_positive_roots())
            .map(|t| Reflection {
                root: t,
                element: lookup(&WeylElement::from_matrix(&rs, rs.reflection_matrix(t))),
            })
            .collect();
        let reflection_left: Vec<Vec<usize>> = reflections
            .iter()
            .map(|r| {
                let t = &elements[r.element];
                elements
                    .iter()
                    .map(|w| lookup(&t.multiply(&rs, w)))
                    .collect()
            })
            .collect();
        let longest = (0..size).max_by_key(|&w| elements[w].length).unwrap_or(0);
        Ok(WeylGroup {
            rs,
            elements,
            index,
            simple_left,
            simple_right,
            reflection_left,
            inverse,
            reflections,
            longest,
            upsets: OnceLock::new(),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn name(&self) -> String {
        self.rs.name()
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn index_of(&self, e: &WeylElement) -> Option<usize> {
        self.index.get(&e.key()).copied()
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest_element(&self) -> usize {
        self.longest
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    /// `s_i w`
    pub fn simple_left(&self, i: usize, w: usize) -> usize {
        self.simple_left[i][w]
    }

    /// `w s_i`
    pub fn simple_right(&self, w: usize, i: usize) -> usize {
        self.simple_right[i][w]
    }

    /// `t w` for the reflection in positive root `t`.
    pub fn reflect_left(&self, t: usize, w: usize) -> usize {
        self.reflection_left[t][w]
    }

    /// `w t` for the reflection in positive root `t`.
    pub fn reflect_right(&self, w: usize, t: usize) -> usize {
        self.inverse[self.reflection_left[t][self.inverse[w]]]
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    pub fn reflection_element(&self, t: usize) -> usize {
        self.reflections[t].element
    }

    pub fn multiply(&self, u: usize, v: usize) -> usize {
        let word = self.reduced_word(u);
        word.iter()
            .rev()
            .fold(v, |acc, &i| self.simple_left[i][acc])
    }

    pub fn from_word(&self, word: &[usize]) -> Result<usize, WeylError> {
        let mut w = 0;
        for &i in word.iter().rev() {
            if i >= self.rank() {
                return Err(WeylError::BadLetter(i));
            }
            w = self.simple_left[i][w];
        }
        Ok(w)
    }

    /// Simple indices `i` with `l(s_i w) < l(w)`.
    pub fn left_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.length(self.simple_left[i][w]) < self.length(w))
            .collect()
    }

    /// Lexicographically smallest reduced word (0-based letters), obtained by
    /// always stripping the smallest left descent.
    pub fn reduced_word(&self, w: usize) -> Vec<usize> {
        self.reduced_word_by(w, |d| d[0])
    }

    /// Reduced word whose letters are chosen among the left descents by `pick`.
    pub fn reduced_word_by(
        &self,
        mut w: usize,
        mut pick: impl FnMut(&[usize]) -> usize,
    ) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(w));
        while w != 0 {
            let d = self.left_descents(w);
            let i = pick(&d);
            word.push(i);
            w = self.simple_left[i][w];
        }
        word
    }

    pub fn random_reduced_word<R: Rng>(&self, w: usize, rng: &mut R) -> Vec<usize> {
        self.reduced_word_by(w, |d| d[rng.gen_range(0..d.len())])
    }

    /// True if `u <= v` in the Bruhat order.
    pub fn bruhat_leq(&self, u: usize, v: usize) -> bool {
        let up = &self.upsets()[u];
        up[v / 64] >> (v % 64) & 1 == 1
    }

    /// Bruhat covers of `u`: pairs `(t, tu)` with `l(tu) = l(u) + 1`.
    pub fn bruhat_covers(&self, u: usize) -> Vec<(usize, usize)> {
        (0..self.reflections.len())
            .filter_map(|t| {
                let v = self.reflection_left[t][u];
                (self.length(v) == self.length(u) + 1).then_some((t, v))
            })
            .collect()
    }

    fn upsets(&self) -> &Vec<Vec<u64>> {
        self.upsets.get_or_init(|| {
            let size = self.size();
            let words = size.div_ceil(64);
            let mut up = vec![vec![0u64; words]; size];
            for u in (0..size).rev() {
                let mut bits = vec![0u64; words];
                bits[u / 64] |= 1 << (u % 64);
                for (_, v) in self.bruhat_covers(u) {
                    for (b, x) in bits.iter_mut().zip(&up[v]) {
                        *b |= x;
                    }
                }
                up[u] = bits;
            }
            up
        })
    }

    /// Elements of the reflection subgroup generated by the reflections in
    /// `roots`, in breadth-first order from the identity.
    pub fn subgroup_elements(&self, roots: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        seen[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let w = out[k];
            for &t in roots {
                let v = self.reflection_left[t][w];
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                }
            }
            k += 1;
        }
        out
    }

    /// Reflection ordering from a reduced word of the longest element.
    pub fn reflection_ordering_from_word(
        &self,
        word: &[usize],
    ) -> Result<ReflectionOrdering, WeylError> {
        let w = self.from_word(word)?;
        if self.length(w) != word.len() {
            return Err(WeylError::NotReduced(word.to_vec()));
        }
        if w != self.longest {
            return Err(WeylError::NotLongest(word.to_vec()));
        }
        let n = word.len();
        let mut order = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0i64; self.rank()];
            e[word[j]] = 1;
            // beta_j = s_{i_N} ... s_{i_{j+1}} (alpha_{i_j})
            let mut x = e;
            for &i in &word[j + 1..] {
                x = mat_vec(self.rs.simple_reflection_matrix(i), &x);
            }
            let t = self
                .rs
                .index_of(&x)
                .expect("reduced word produces positive roots");
            order.push(t);
        }
        Ok(ReflectionOrdering::new(order, Some(word.to_vec())))
    }

    /// Ordering from the lexicographically smallest reduced word of `w0`.
    pub fn default_reflection_ordering(&self) -> ReflectionOrdering {
        let word = self.reduced_word(self.longest);
        self.reflection_ordering_from_word(&word)
            .expect("reduced word of the longest element")
    }

    /// Checks that every dihedral reflection subgroup sees its alternating
    /// sequence of reflections in increasing or decreasing order.
    pub fn is_reflection_ordering(&self, candidate: &[usize]) -> Result<bool, WeylError> {
        let n = self.reflections.len();
        let distinct: BTreeSet<usize> = candidate.iter().copied().collect();
        if candidate.len() != n || distinct.len() != n || distinct.iter().any(|&t| t >= n) {
            return Err(WeylError::NotPermutation);
        }
        let mut pos = vec![0; n];
        for (k, &t) in candidate.iter().enumerate() {
            pos[t] = k;
        }
        for sub in self.rs.dihedral_subsystems(false) {
            let labels: Vec<usize> = self
                .rs
                .dihedral_sequence(&sub)
                .iter()
                .map(|&t| pos[t])
                .collect();
            let inc = labels.windows(2).all(|p| p[0] < p[1]);
            let dec = labels.windows(2).all(|p| p[0] > p[1]);
            if !inc && !dec {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn coset_decomposition(&self, sub: &DihedralSubsystem) -> CosetDecomposition {
        CosetDecomposition::new(self, sub)
    }

    /// 1-based word string such as `"121"`, or `"e"` for the identity.
    pub fn word_string(&self, w: usize) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            return "e".to_string();
        }
        let sep = if self.rank() > 9 { "-" } else { "" };
        word.iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

fn word_by_table(simple_left: &[Vec<usize>], elements: &[WeylElement], mut w: usize) -> Vec<usize> {
    let mut word = Vec::new();
    while w != 0 {
        let l = elements[w].length;
        let i = (0..simple_left.len())
            .find(|&i| elements[simple_left[i][w]].length < l)
            .expect("nonidentity element has a descent");
        word.push(i);
        w = simple_left[i][w];
    }
    word
}

/// Total order on reflections stored as positive-root indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionOrdering {
    order: Vec<usize>,
    label: Vec<usize>,
    source_word: Option<Vec<usize>>,
}

impl ReflectionOrdering {
    pub fn new(order: Vec<usize>, source_word: Option<Vec<usize>>) -> Self {
        let mut label = vec![0; order.len()];
        for (k, &t) in order.iter().enumerate() {
            label[t] = k + 1;
        }
        ReflectionOrdering {
            order,
            label,
            source_word,
        }
    }

    /// Reflections in increasing order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `phi(t)`, 1-based.
    pub fn label(&self, t: usize) -> usize {
        self.label[t]
    }

    /// `phi^{-1}(k)` for 1-based `k`.
    pub fn reflection_at(&self, k: usize) -> usize {
        self.order[k - 1]
    }

    pub fn source_word(&self) -> Option<&[usize]> {
        self.source_word.as_deref()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let order = self.order.iter().rev().copied().collect();
        ReflectionOrdering::new(order, None)
    }
}

/// Left cosets `W' w` of a dihedral reflection subgroup.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    pub subgroup: DihedralSubsystem,
    /// Subgroup elements as group indices, identity first.
    pub subgroup_elements: Vec<usize>,
    /// Minimal coset representatives, in increasing index order.
    pub representatives: Vec<usize>,
    /// Per group element: `(representative index, position in subgroup_elements)`.
    pub membership: Vec<(usize, usize)>,
    /// Length of each subgroup element as a Coxeter group with its own generators.
    pub subgroup_lengths: Vec<usize>,
}

impl CosetDecomposition {
    fn new(g: &WeylGroup, sub: &DihedralSubsystem) -> Self {
        let sub_elems = g.subgroup_elements(&sub.positive_roots);
        let mut membership = vec![(usize::MAX, usize::MAX); g.size()];
        let mut representatives = Vec::new();
        for w in 0..g.size() {
            if membership[w].0 != usize::MAX {
                continue;
            }
            let r = representatives.len();
            representatives.push(w);
            for (k, &x) in sub_elems.iter().enumerate() {
                membership[g.multiply(x, w)] = (r, k);
            }
        }
        let rs = g.root_system();
        let subgroup_lengths = sub_elems
            .iter()
            .map(|&x| {
                sub.positive_roots
                    .iter()
                    .filter(|&&t| {
                        g.element(x)
                            .apply(rs.root(t).coeffs())
                            .iter()
                            .any(|&c| c < 0)
                    })
                    .count()
            })
            .collect();
        CosetDecomposition {
            subgroup: sub.clone(),
            subgroup_elements: sub_elems,
            representatives,
            membership,
            subgroup_lengths,
        }
    }

    pub fn num_cosets(&self) -> usize {
        self.representatives.len()
    }

    /// Elements `x w~` of coset `r`, in the order of `subgroup_elements`.
    pub fn coset(&self, g: &WeylGroup, r: usize) -> Vec<usize> {
        let rep = self.representatives[r];
        self.subgroup_elements
            .iter()
            .map(|&x| g.multiply(x, rep))
            .collect()
    }

    /// Every coset has exactly one element of minimal length, and it is the
    /// stored representative.
    pub fn verify_unique_minima(&self, g: &WeylGroup) -> bool {
        (0..self.num_cosets()).all(|r| {
            let rep_len = g.length(self.representatives[r]);
            let coset = self.coset(g, r);
            coset.iter().filter(|&&w| g.length(w) <= rep_len).count() == 1
        })
    }

    /// For `t` in the subgroup: `l(t w' w~) < l(w' w~)` iff `l(t w') < l(w')`.
    pub fn verify_descent_correspondence(&self, g: &WeylGroup) -> bool {
        let pos: HashMap<usize, usize> = self
            .subgroup_elements
            .iter()
            .enumerate()
            .map(|(k, &x)| (x, k))
            .collect();
        for r in 0..self.num_cosets() {
            let rep = self.representatives[r];
            for (k, &x) in self.subgroup_elements.iter().enumerate() {
                let xw = g.multiply(x, rep);
                for &t in &self.subgroup.positive_roots {
                    let tx = g.reflect_left(t, x);
                    let down_sub = self.subgroup_lengths[pos[&tx]] < self.subgroup_lengths[k];
                    let down = g.length(g.reflect_left(t, xw)) < g.length(xw);
                    if down != down_sub {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Bruhat order of the subgroup as a Coxeter group with its canonical
    /// generators, as a matrix over positions in `subgroup_elements`.
    pub fn subgroup_bruhat(&self, g: &WeylGroup) -> Vec<Vec<bool>> {
        let lengths = self.subgroup_lengths.clone();
        self.closure(g, |x, y| lengths[y] > lengths[x])
    }

    /// Order on coset `r` generated by `x w~ < t x w~` for reflections `t` of
    /// the subgroup that raise the length in `W`.
    pub fn coset_bruhat(&self, g: &WeylGroup, r: usize) -> Vec<Vec<bool>> {
        let coset = self.coset(g, r);
        self.closure(g, |x, y| g.length(coset[y]) > g.length(coset[x]))
    }

    /// Order on coset `r` induced from the Bruhat order of `W`.
    pub fn induced_bruhat(&self, g: &WeylGroup, r: usize) -> Vec<Vec<bool>> {
        let coset = self.coset(g, r);
        coset
            .iter()
            .map(|&x| coset.iter().map(|&y| g.bruhat_leq(x, y)).collect())
            .collect()
    }

    fn closure(&self, g: &WeylGroup, up: impl Fn(usize, usize) -> bool) -> Vec<Vec<bool>> {
        let m = self.subgroup_elements.len();
        let pos: HashMap<usize, usize> = self
            .subgroup_elements
            .iter()
            .enumerate()
            .map(|(k, &x)| (x, k))
            .collect();
        let mut leq = vec![vec![false; m]; m];
        for (k, &x) in self.subgroup_elements.iter().enumerate() {
            leq[k][k] = true;
            for &t in &self.subgroup.positive_roots {
                let j = pos[&g.reflect_left(t, x)];
                if up(k, j) {
                    leq[k][j] = true;
                }
            }
        }
        for z in 0..m {
            let above = leq[z].clone();
            for row in leq.iter_mut().filter(|row| row[z]) {
                for (cell, &b) in row.iter_mut().zip(&above) {
                    *cell |= b;
                }
            }
        }
        leq
    }

    /// On every coset the order generated by the subgroup's reflections
    /// matches the subgroup's own Bruhat order under `w' -> w' w~`, and the
    /// subgroup's order is contained in the order induced from `W`.
    ///
    /// Equality with the induced order is not checked: for the orthogonal
    /// pair `alpha_2`, `alpha_1 + alpha_2 + alpha_3` in A3 the two reflections
    /// are incomparable in the subgroup but comparable in `W`.
    pub fn verify_bruhat_isomorphism(&self, g: &WeylGroup) -> bool {
        let own = self.subgroup_bruhat(g);
        let identity_coset = self.membership[0].0;
        let induced = self.induced_bruhat(g, identity_coset);
        let contained = own
            .iter()
            .zip(&induced)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| !*x || *y));
        contained && (0..self.num_cosets()).all(|r| own == self.coset_bruhat(g, r))
    }
}
