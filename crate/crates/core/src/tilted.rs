//! The quantum Bruhat digraph with reflection-ordering labels, tilted
//! distances, tilted intervals and orders.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Parallelism;
use crate::operators::{
    quantum_family, quantum_step, r_family, MultiplicativeFunction, SparseVec, Step,
};
use crate::poset::GradedPoset;
use crate::scalars::{EpsPoly, Rational, Ring};
use crate::weyl::{ReflectionOrdering, WeylGroup};

const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TiltedError {
    #[error("no path from element {from} to element {to}")]
    Unreachable { from: usize, to: usize },
    #[error("expected one {kind} path from {from} to {to}, found {found}")]
    MonotonePaths {
        kind: &'static str,
        from: usize,
        to: usize,
        found: usize,
    },
    #[error("no labeled path {from} -> {via} -> {to} with decreasing labels")]
    NotDecreasing { from: usize, via: usize, to: usize },
    #[error("no diamond completion for {from} -> {via} -> {to}")]
    NoCompletion { from: usize, via: usize, to: usize },
    #[error("ordering has {got} reflections, expected {expected}")]
    OrderingSize { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TiltedEdge {
    pub source: usize,
    pub target: usize,
    /// Positive-root index of the reflection.
    pub reflection: usize,
    pub label: usize,
    /// True when the edge lowers length.
    pub down: bool,
}

/// Edges `u -> tu` where `tu` covers `u` in Bruhat order or `tu` is as short
/// as `l(t)` allows, labeled by a reflection ordering.
#[derive(Clone, Debug)]
pub struct TiltedDigraph {
    group: Arc<WeylGroup>,
    ordering: ReflectionOrdering,
    edges: Vec<TiltedEdge>,
    /// `out[u]` is the range of `edges` leaving `u`.
    out: Vec<std::ops::Range<usize>>,
    dist: Vec<Vec<u32>>,
}

/// A completed diamond `u -m-> y -n-> v` next to `u -k-> x -l-> v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub y: usize,
    pub m: usize,
    pub n: usize,
    /// `y` lies in the coset `W' u` of the dihedral subgroup generated by
    /// the reflections labeled `k` and `l`.
    pub in_coset: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiamondReport {
    pub configurations: usize,
    /// `(u, x, v)` with no completion or a completion outside the coset.
    pub failures: Vec<(usize, usize, usize)>,
}

impl DiamondReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MonotoneReport {
    pub pairs: usize,
    /// `(u, v, increasing count, decreasing count)` when a count is not 1.
    pub count_failures: Vec<(usize, usize, usize, usize)>,
    /// `(u, v)` where a monotone path is not a shortest path.
    pub length_failures: Vec<(usize, usize)>,
    /// `(u, v)` where the increasing word is not the lex-first shortest word
    /// or the decreasing word is not the lex-last.
    pub lex_failures: Vec<(usize, usize)>,
}

impl MonotoneReport {
    pub fn passed(&self) -> bool {
        self.count_failures.is_empty()
            && self.length_failures.is_empty()
            && self.lex_failures.is_empty()
    }
}

impl TiltedDigraph {
    pub fn new(group: &Arc<WeylGroup>, ordering: ReflectionOrdering) -> Result<Self, TiltedError> {
        Self::with_parallelism(group, ordering, Parallelism::default())
    }

    /// Digraph labeled by the default reflection ordering.
    pub fn with_default_ordering(group: &Arc<WeylGroup>) -> Self {
        Self::new(group, group.default_reflection_ordering())
            .expect("default ordering has the right size")
    }

    pub fn with_parallelism(
        group: &Arc<WeylGroup>,
        ordering: ReflectionOrdering,
        par: Parallelism,
    ) -> Result<Self, TiltedError> {
        let n_refl = group.reflections().len();
        if ordering.len() != n_refl {
            return Err(TiltedError::OrderingSize {
                expected: n_refl,
                got: ordering.len(),
            });
        }
        let size = group.size();
        let mut edges = Vec::new();
        let mut out = Vec::with_capacity(size);
        for u in 0..size {
            let start = edges.len();
            for t in 0..n_refl {
                if let Some(step) = quantum_step(group, t, u) {
                    edges.push(TiltedEdge {
                        source: u,
                        target: group.reflect_left(t, u),
                        reflection: t,
                        label: ordering.label(t),
                        down: step == Step::Down,
                    });
                }
            }
            edges[start..].sort_by_key(|e| e.label);
            out.push(start..edges.len());
        }
        let mut d = TiltedDigraph {
            group: Arc::clone(group),
            ordering,
            edges,
            out,
            dist: Vec::new(),
        };
        d.dist = par.map(size, |u| d.bfs(u));
        Ok(d)
    }

    fn bfs(&self, u: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.group.size()];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(w) = queue.pop_front() {
            for e in self.out_edges(w) {
                if dist[e.target] == UNREACHABLE {
                    dist[e.target] = dist[w] + 1;
                    queue.push_back(e.target);
                }
            }
        }
        dist
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn ordering(&self) -> &ReflectionOrdering {
        &self.ordering
    }

    pub fn size(&self) -> usize {
        self.group.size()
    }

    /// All edges sorted by source, then label.
    pub fn edges(&self) -> &[TiltedEdge] {
        &self.edges
    }

    /// Edges leaving `u` in increasing label order.
    pub fn out_edges(&self, u: usize) -> &[TiltedEdge] {
        &self.edges[self.out[u].clone()]
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<&TiltedEdge> {
        self.out_edges(u).iter().find(|e| e.target == v)
    }

    pub fn try_distance(&self, u: usize, v: usize) -> Result<usize, TiltedError> {
        match self.dist[u][v] {
            UNREACHABLE => Err(TiltedError::Unreachable { from: u, to: v }),
            d => Ok(d as usize),
        }
    }

    /// Tilted distance `l(u, v)`. Panics if `v` is unreachable, which would
    /// mean the digraph was built wrongly.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.try_distance(u, v)
            .expect("digraph is strongly connected")
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.dist
            .iter()
            .all(|row| row.iter().all(|&d| d != UNREACHABLE))
    }

    fn on_geodesic(&self, u: usize, w: usize, v: usize) -> bool {
        let (a, b, c) = (self.dist[u][w], self.dist[w][v], self.dist[u][v]);
        a != UNREACHABLE && b != UNREACHABLE && a as u64 + b as u64 == c as u64
    }

    /// `w1 <=_u w2`: some shortest path from `u` to `w2` passes through `w1`.
    pub fn tilted_leq(&self, u: usize, w1: usize, w2: usize) -> bool {
        self.on_geodesic(u, w1, w2)
    }

    /// Elements on geodesics `u -> v`, sorted by distance from `u`.
    pub fn interval_elements(&self, u: usize, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.size())
            .filter(|&w| self.on_geodesic(u, w, v))
            .collect();
        out.sort_by_key(|&w| (self.dist[u][w], w));
        out
    }

    fn poset_on(&self, u: usize, elements: Vec<usize>) -> GradedPoset {
        let mut local = vec![usize::MAX; self.size()];
        for (i, &w) in elements.iter().enumerate() {
            local[w] = i;
        }
        let rank: Vec<usize> = elements.iter().map(|&w| self.dist[u][w] as usize).collect();
        let mut covers = Vec::new();
        for (i, &w) in elements.iter().enumerate() {
            for e in self.out_edges(w) {
                let j = local[e.target];
                if j != usize::MAX && rank[j] == rank[i] + 1 {
                    covers.push((i, j, e.label));
                }
            }
        }
        GradedPoset::new(elements, rank, covers)
    }

    /// The tilted interval `D(u, v)` ranked by distance from `u`.
    pub fn interval(&self, u: usize, v: usize) -> GradedPoset {
        self.poset_on(u, self.interval_elements(u, v))
    }

    /// All of `W` under `<=_u`, ranked by distance from `u`.
    pub fn tilted_order(&self, u: usize) -> GradedPoset {
        let mut elements: Vec<usize> = (0..self.size()).collect();
        elements.sort_by_key(|&w| (self.dist[u][w], w));
        self.poset_on(u, elements)
    }

    /// Every path from `u` with strictly increasing (or decreasing) labels,
    /// as edge lists. The empty path is included.
    pub fn monotone_paths_from(&self, u: usize, increasing: bool) -> Vec<Vec<TiltedEdge>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.monotone_dfs(u, increasing, &mut path, &mut out);
        out
    }

    fn monotone_dfs(
        &self,
        w: usize,
        increasing: bool,
        path: &mut Vec<TiltedEdge>,
        out: &mut Vec<Vec<TiltedEdge>>,
    ) {
        out.push(path.clone());
        let last = path.last().map(|e| e.label);
        for e in self.out_edges(w) {
            let ok = match last {
                None => true,
                Some(l) if increasing => e.label > l,
                Some(l) => e.label < l,
            };
            if ok {
                path.push(*e);
                self.monotone_dfs(e.target, increasing, path, out);
                path.pop();
            }
        }
    }

    fn unique_monotone_path(
        &self,
        u: usize,
        v: usize,
        increasing: bool,
    ) -> Result<Vec<TiltedEdge>, TiltedError> {
        let mut found: Vec<Vec<TiltedEdge>> = self
            .monotone_paths_from(u, increasing)
            .into_iter()
            .filter(|p| p.last().map_or(u, |e| e.target) == v)
            .collect();
        if found.len() != 1 {
            return Err(TiltedError::MonotonePaths {
                kind: if increasing {
                    "increasing"
                } else {
                    "decreasing"
                },
                from: u,
                to: v,
                found: found.len(),
            });
        }
        Ok(found.pop().expect("one path"))
    }

    /// The path `u -> v` with strictly increasing labels, checked unique by
    /// exhaustive search.
    pub fn unique_increasing_path(
        &self,
        u: usize,
        v: usize,
    ) -> Result<Vec<TiltedEdge>, TiltedError> {
        self.unique_monotone_path(u, v, true)
    }

    pub fn unique_decreasing_path(
        &self,
        u: usize,
        v: usize,
    ) -> Result<Vec<TiltedEdge>, TiltedError> {
        self.unique_monotone_path(u, v, false)
    }

    /// Calls `f` on the label word of every shortest path `u -> v`.
    pub fn for_each_shortest_path(&self, u: usize, v: usize, mut f: impl FnMut(&[usize])) {
        let mut word = Vec::new();
        self.shortest_dfs(u, v, &mut word, &mut f);
    }

    fn shortest_dfs(
        &self,
        w: usize,
        v: usize,
        word: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if w == v {
            f(word);
            return;
        }
        let remaining = self.dist[w][v];
        for e in self.out_edges(w) {
            if self.dist[e.target][v] != UNREACHABLE && self.dist[e.target][v] + 1 == remaining {
                word.push(e.label);
                self.shortest_dfs(e.target, v, word, f);
                word.pop();
            }
        }
    }

    pub fn count_shortest_paths(&self, u: usize, v: usize) -> usize {
        let mut n = 0;
        self.for_each_shortest_path(u, v, |_| n += 1);
        n
    }

    /// Lexicographically first label word among shortest paths, by greedy
    /// choice of the smallest label that stays on a geodesic.
    pub fn lexmin_shortest_word(&self, u: usize, v: usize) -> Vec<usize> {
        self.greedy_shortest_word(u, v, false)
    }

    /// Lexicographically last label word among shortest paths.
    pub fn lexmax_shortest_word(&self, u: usize, v: usize) -> Vec<usize> {
        self.greedy_shortest_word(u, v, true)
    }

    fn greedy_shortest_word(&self, u: usize, v: usize, largest: bool) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = u;
        while w != v {
            let mut steps = self.out_edges(w).iter().filter(|e| {
                self.dist[e.target][v] != UNREACHABLE
                    && self.dist[e.target][v] + 1 == self.dist[w][v]
            });
            let e = if largest {
                steps.next_back()
            } else {
                steps.next()
            }
            .expect("a geodesic continues");
            word.push(e.label);
            w = e.target;
        }
        word
    }

    /// Checks unique monotone paths from `u` to every `v`, their lengths,
    /// and that they are the lexicographic extremes among shortest paths.
    fn monotone_report_from(&self, u: usize, enumerate: bool) -> MonotoneReport {
        let size = self.size();
        let mut report = MonotoneReport {
            pairs: size,
            ..Default::default()
        };
        let mut inc: Vec<Vec<Vec<usize>>> = vec![Vec::new(); size];
        let mut dec: Vec<Vec<Vec<usize>>> = vec![Vec::new(); size];
        for (store, increasing) in [(&mut inc, true), (&mut dec, false)] {
            for p in self.monotone_paths_from(u, increasing) {
                let v = p.last().map_or(u, |e| e.target);
                store[v].push(p.iter().map(|e| e.label).collect());
            }
        }
        for v in 0..size {
            if inc[v].len() != 1 || dec[v].len() != 1 {
                report
                    .count_failures
                    .push((u, v, inc[v].len(), dec[v].len()));
                continue;
            }
            let d = self.dist[u][v] as usize;
            let (iw, dw) = (&inc[v][0], &dec[v][0]);
            if iw.len() != d || dw.len() != d {
                report.length_failures.push((u, v));
                continue;
            }
            let (min, max) = if enumerate {
                let mut min: Option<Vec<usize>> = None;
                let mut max: Option<Vec<usize>> = None;
                self.for_each_shortest_path(u, v, |w| {
                    if min.as_deref().is_none_or(|m| w < m) {
                        min = Some(w.to_vec());
                    }
                    if max.as_deref().is_none_or(|m| w > m) {
                        max = Some(w.to_vec());
                    }
                });
                (min, max)
            } else {
                (
                    Some(self.lexmin_shortest_word(u, v)),
                    Some(self.lexmax_shortest_word(u, v)),
                )
            };
            if min.as_ref() != Some(iw) || max.as_ref() != Some(dw) {
                report.lex_failures.push((u, v));
            }
        }
        report
    }

    /// Monotone path checks for every ordered pair. Lexicographic extremes
    /// among shortest paths are found greedily.
    pub fn check_monotone_paths(&self, par: Parallelism) -> MonotoneReport {
        self.monotone_report(par, false)
    }

    /// As `check_monotone_paths`, but compares against every shortest path
    /// found by exhaustive enumeration.
    pub fn check_monotone_paths_enumerated(&self, par: Parallelism) -> MonotoneReport {
        self.monotone_report(par, true)
    }

    fn monotone_report(&self, par: Parallelism, enumerate: bool) -> MonotoneReport {
        let parts = par.map(self.size(), |u| self.monotone_report_from(u, enumerate));
        let mut report = MonotoneReport::default();
        for p in parts {
            report.pairs += p.pairs;
            report.count_failures.extend(p.count_failures);
            report.length_failures.extend(p.length_failures);
            report.lex_failures.extend(p.lex_failures);
        }
        report
    }

    /// `R_{phi^-1(1)} ... R_{phi^-1(N)}` applied to every basis element, with
    /// `R_t = 1 + eps Q_t` and `E = 1`. Row `u` is the image of `u`.
    pub fn ordered_product_images(&self, par: Parallelism) -> Vec<SparseVec<EpsPoly<Rational>>> {
        let e = MultiplicativeFunction::constant(self.group.rank(), Rational::one());
        let rs = r_family(&quantum_family(&self.group, &e));
        par.map(self.size(), |u| {
            let mut v = SparseVec::new();
            v.insert(u, EpsPoly::one());
            for k in (1..=self.ordering.len()).rev() {
                v = rs[self.ordering.reflection_at(k)].apply(&v);
            }
            v
        })
    }

    /// Checks that the ordered product sends `u` to the sum of
    /// `eps^{l(u, v)} v` over all `v`, for every `u`. Returns the failing `u`.
    pub fn check_product_identity(&self, par: Parallelism) -> Vec<usize> {
        self.ordered_product_images(par)
            .iter()
            .enumerate()
            .filter(|&(u, img)| !self.is_distance_generating(u, img, |u, v| self.distance(u, v)))
            .map(|(u, _)| u)
            .collect()
    }

    /// True if `img` equals the sum of `eps^{dist(u, v)} v` over all `v`.
    pub fn is_distance_generating(
        &self,
        u: usize,
        img: &SparseVec<EpsPoly<Rational>>,
        dist: impl Fn(usize, usize) -> usize,
    ) -> bool {
        img.len() == self.size()
            && img
                .iter()
                .all(|(&v, c)| *c == EpsPoly::monomial(Rational::one(), dist(u, v)))
    }

    /// Completes `u -k-> x -l-> v` with `k > l` to `u -m-> y -n-> v` where
    /// `l < n`, `m < n` and `m < k`. Returns the first completion by `(m, n)`.
    pub fn diamond_completion(&self, u: usize, x: usize, v: usize) -> Result<Diamond, TiltedError> {
        let not_decreasing = TiltedError::NotDecreasing {
            from: u,
            via: x,
            to: v,
        };
        let e1 = self.edge(u, x).ok_or(not_decreasing.clone())?;
        let e2 = self.edge(x, v).ok_or(not_decreasing.clone())?;
        let (k, l) = (e1.label, e2.label);
        if k <= l {
            return Err(not_decreasing);
        }
        let coset: Vec<usize> = self
            .group
            .subgroup_elements(&[e1.reflection, e2.reflection])
            .into_iter()
            .map(|w| self.group.multiply(w, u))
            .collect();
        for a in self.out_edges(u) {
            let m = a.label;
            if m >= k {
                break;
            }
            if let Some(b) = self.edge(a.target, v) {
                let n = b.label;
                if l < n && m < n {
                    return Ok(Diamond {
                        y: a.target,
                        m,
                        n,
                        in_coset: coset.contains(&a.target),
                    });
                }
            }
        }
        Err(TiltedError::NoCompletion {
            from: u,
            via: x,
            to: v,
        })
    }

    /// Runs `diamond_completion` on every path of two edges with decreasing
    /// labels.
    pub fn check_diamonds(&self, par: Parallelism) -> DiamondReport {
        let parts = par.map(self.size(), |u| {
            let mut r = DiamondReport::default();
            for e1 in self.out_edges(u) {
                for e2 in self.out_edges(e1.target) {
                    if e2.label >= e1.label {
                        continue;
                    }
                    r.configurations += 1;
                    match self.diamond_completion(u, e1.target, e2.target) {
                        Ok(d) if d.in_coset => {}
                        _ => r.failures.push((u, e1.target, e2.target)),
                    }
                }
            }
            r
        });
        let mut report = DiamondReport::default();
        for p in parts {
            report.configurations += p.configurations;
            report.failures.extend(p.failures);
        }
        report
    }

    /// Pairs `w1 <=_u w2` whose interval in `D_u(W)` differs from `D(w1, w2)`.
    pub fn interval_heredity_failures(&self, u: usize) -> Vec<(usize, usize)> {
        let mut failures = Vec::new();
        for w1 in 0..self.size() {
            for w2 in 0..self.size() {
                if !self.tilted_leq(u, w1, w2) {
                    continue;
                }
                let mut inside: Vec<usize> = (0..self.size())
                    .filter(|&z| self.tilted_leq(u, w1, z) && self.tilted_leq(u, z, w2))
                    .collect();
                let mut direct = self.interval_elements(w1, w2);
                inside.sort_unstable();
                direct.sort_unstable();
                if inside != direct {
                    failures.push((w1, w2));
                }
            }
        }
        failures
    }

    /// DOT rendering of the digraph; down edges are dashed.
    pub fn to_dot(&self, name: impl Fn(usize) -> String) -> String {
        let mut s = format!("digraph \"D({})\" {{\n", self.group.name());
        for w in 0..self.size() {
            s.push_str(&format!("  n{w} [label=\"{}\"];\n", name(w)));
        }
        for e in &self.edges {
            let style = if e.down { ", style=dashed" } else { "" };
            s.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"{style}];\n",
                e.source, e.target, e.label
            ));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, name: impl Fn(usize) -> String) -> serde_json::Value {
        let rs = self.group.root_system();
        serde_json::json!({
            "group": self.group.name(),
            "ordering": self.ordering.order().iter().map(|&t| rs.root(t).to_string()).collect::<Vec<_>>(),
            "vertices": (0..self.size()).map(|w| serde_json::json!({
                "id": w,
                "word": name(w),
                "length": self.group.length(w),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "source": e.source,
                "target": e.target,
                "label": e.label,
                "down": e.down,
            })).collect::<Vec<_>>(),
        })
    }

    /// One line per edge, `source -> target label up|down`, sorted; handy
    /// for golden files.
    pub fn edge_lines(&self, name: impl Fn(usize) -> String) -> Vec<String> {
        let mut lines: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                format!(
                    "{} -> {} {} {}",
                    name(e.source),
                    name(e.target),
                    e.label,
                    if e.down { "down" } else { "up" }
                )
            })
            .collect();
        lines.sort();
        lines
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{RootSystem, TypeLabel};

    fn digraph(t: TypeLabel, n: usize) -> TiltedDigraph {
        let g = Arc::new(WeylGroup::new(Arc::new(RootSystem::new(t, n).unwrap())).unwrap());
        TiltedDigraph::with_default_ordering(&g)
    }

    #[test]
    fn a1_has_two_edges() {
        let d = digraph(TypeLabel::A, 1);
        assert_eq!(d.edges().len(), 2);
        assert!(d.edges()[1].down);
        assert_eq!(d.distance(1, 0), 1);
    }

    #[test]
    fn b2_counts() {
        let d = digraph(TypeLabel::B, 2);
        assert_eq!(d.edges().len(), 22);
        assert!(d.is_strongly_connected());
        let w0 = d.group().longest_element();
        assert_eq!(d.distance(w0, 0), 2);
        assert_eq!(d.interval(w0, 0).len(), 4);
        assert!(d.check_product_identity(Parallelism::Sequential).is_empty());
    }

    #[test]
    fn distance_from_identity_is_length() {
        let d = digraph(TypeLabel::A, 3);
        for v in 0..d.size() {
            assert_eq!(d.distance(0, v), d.group().length(v));
        }
    }

    #[test]
    fn wrong_ordering_size() {
        let g =
            Arc::new(WeylGroup::new(Arc::new(RootSystem::new(TypeLabel::A, 2).unwrap())).unwrap());
        let err = TiltedDigraph::new(&g, ReflectionOrdering::new(vec![0, 1], None)).unwrap_err();
        assert_eq!(
            err,
            TiltedError::OrderingSize {
                expected: 3,
                got: 2
            }
        );
    }
}
