//! Finite graded posets with labeled covers.

use serde::Serialize;

/// Graded poset on `0..len` with cover labels.
///
/// Element 0 is the bottom. `elements[i]` is an external id (a group element
/// index for tilted posets).
#[derive(Clone, Debug)]
pub struct GradedPoset {
    elements: Vec<usize>,
    rank: Vec<usize>,
    covers: Vec<(usize, usize, usize)>,
    up: Vec<Vec<(usize, usize)>>,
    /// `leq[x]` as a bitset over elements.
    leq: Vec<Vec<u64>>,
    top: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ShellingReport {
    pub intervals: usize,
    /// `(x, y)` pairs (local indices) violating the increasing-chain condition.
    pub increasing_failures: Vec<(usize, usize)>,
    /// `(x, y)` pairs violating the decreasing-chain condition.
    pub decreasing_failures: Vec<(usize, usize)>,
}

impl ShellingReport {
    pub fn passed(&self) -> bool {
        self.increasing_failures.is_empty() && self.decreasing_failures.is_empty()
    }
}

impl GradedPoset {
    /// Builds from external ids, ranks and covers `(lower, upper, label)` in
    /// local indices. The bottom must be element 0 with rank 0.
    ///
    /// Panics if a cover does not raise the rank by one.
    pub fn new(elements: Vec<usize>, rank: Vec<usize>, covers: Vec<(usize, usize, usize)>) -> Self {
        let n = elements.len();
        assert_eq!(rank.len(), n);
        assert!(n > 0 && rank[0] == 0, "element 0 must be a rank-0 bottom");
        let mut up = vec![Vec::new(); n];
        for &(x, y, l) in &covers {
            assert_eq!(rank[y], rank[x] + 1, "cover must raise rank by one");
            up[x].push((y, l));
        }
        for v in up.iter_mut() {
            v.sort_by_key(|&(z, l)| (l, z));
        }
        let words = n.div_ceil(64);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| std::cmp::Reverse(rank[x]));
        let mut leq = vec![vec![0u64; words]; n];
        for &x in &order {
            let mut bits = vec![0u64; words];
            bits[x / 64] |= 1 << (x % 64);
            for &(y, _) in &up[x] {
                for (b, o) in bits.iter_mut().zip(&leq[y]) {
                    *b |= o;
                }
            }
            leq[x] = bits;
        }
        let max_rank = rank.iter().copied().max().unwrap_or(0);
        let top = (0..n)
            .find(|&x| rank[x] == max_rank)
            .filter(|&t| (0..n).all(|x| Self::bit(&leq[x], t)));
        GradedPoset {
            elements,
            rank,
            covers,
            up,
            leq,
            top,
        }
    }

    fn bit(bits: &[u64], y: usize) -> bool {
        bits[y / 64] >> (y % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn local_index(&self, id: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == id)
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn covers(&self) -> &[(usize, usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> &[(usize, usize)] {
        &self.up[x]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        Self::bit(&self.leq[x], y)
    }

    /// Elements `z` with `x <= z <= y`, sorted by rank.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.len())
            .filter(|&z| self.leq(x, z) && self.leq(z, y))
            .collect();
        out.sort_by_key(|&z| (self.rank[z], z));
        out
    }

    /// `mu(x, z)` for every `z` (zero when `x` is not below `z`).
    pub fn mobius_from(&self, x: usize) -> Vec<i64> {
        let mut above: Vec<usize> = (0..self.len()).filter(|&z| self.leq(x, z)).collect();
        above.sort_by_key(|&z| self.rank[z]);
        let mut mu = vec![0i64; self.len()];
        for &y in &above {
            if y == x {
                mu[y] = 1;
                continue;
            }
            mu[y] = -above
                .iter()
                .filter(|&&z| z != y && self.leq(z, y))
                .map(|&z| mu[z])
                .sum::<i64>();
        }
        mu
    }

    pub fn mobius(&self, x: usize, y: usize) -> i64 {
        self.mobius_from(x)[y]
    }

    /// `mu(x, y) = (-1)^{rank y - rank x}` for all `x <= y`.
    pub fn is_lower_eulerian(&self) -> bool {
        (0..self.len()).all(|x| {
            let mu = self.mobius_from(x);
            (0..self.len()).filter(|&y| self.leq(x, y)).all(|y| {
                let d = self.rank[y] - self.rank[x];
                mu[y] == if d.is_multiple_of(2) { 1 } else { -1 }
            })
        })
    }

    /// Lower Eulerian with a maximum element.
    pub fn is_eulerian(&self) -> bool {
        self.top.is_some() && self.is_lower_eulerian()
    }

    /// For every `x < y`: exactly one strictly increasing maximal chain, and
    /// its label word is the lexicographically first; exactly one strictly
    /// decreasing maximal chain, lexicographically last.
    pub fn el_shelling_check(&self) -> ShellingReport {
        let n = self.len();
        let mut report = ShellingReport::default();
        // lexmin[z]/lexmax[z]: extreme label words of maximal chains z -> y
        for y in 0..n {
            let below: Vec<usize> = {
                let mut v: Vec<usize> = (0..n).filter(|&z| self.leq(z, y)).collect();
                v.sort_by_key(|&z| std::cmp::Reverse(self.rank[z]));
                v
            };
            let mut lexmin: Vec<Option<Vec<usize>>> = vec![None; n];
            let mut lexmax: Vec<Option<Vec<usize>>> = vec![None; n];
            let mut inc: Vec<Vec<u64>> = vec![Vec::new(); n];
            let mut dec: Vec<Vec<u64>> = vec![Vec::new(); n];
            // slot l + 1 holds label l; slot 0 and the last slot are sentinels
            let slots = self.covers.iter().map(|c| c.2).max().unwrap_or(0) + 3;
            for &z in &below {
                if z == y {
                    lexmin[z] = Some(Vec::new());
                    lexmax[z] = Some(Vec::new());
                    // the empty chain counts as starting above (resp. below) every label
                    inc[z] = vec![0; slots];
                    inc[z][slots - 1] = 1;
                    dec[z] = vec![0; slots];
                    dec[z][0] = 1;
                    continue;
                }
                let mut best_min: Option<Vec<usize>> = None;
                let mut best_max: Option<Vec<usize>> = None;
                let mut inc_z = vec![0u64; slots];
                let mut dec_z = vec![0u64; slots];
                for &(w, l) in &self.up[z] {
                    if !self.leq(w, y) {
                        continue;
                    }
                    let mut cand = vec![l];
                    cand.extend(lexmin[w].as_ref().expect("processed"));
                    if best_min.as_ref().is_none_or(|b| cand < *b) {
                        best_min = Some(cand);
                    }
                    let mut cand = vec![l];
                    cand.extend(lexmax[w].as_ref().expect("processed"));
                    if best_max.as_ref().is_none_or(|b| cand > *b) {
                        best_max = Some(cand);
                    }
                    // increasing chains from z starting with label l continue
                    // with a chain from w whose first label exceeds l
                    inc_z[l + 1] += inc[w][l + 2..].iter().sum::<u64>();
                    dec_z[l + 1] += dec[w][..l + 1].iter().sum::<u64>();
                }
                lexmin[z] = best_min;
                lexmax[z] = best_max;
                inc[z] = inc_z;
                dec[z] = dec_z;
            }
            for &x in &below {
                if x == y {
                    continue;
                }
                report.intervals += 1;
                let n_inc: u64 = inc[x].iter().sum();
                let n_dec: u64 = dec[x].iter().sum();
                let min_word = lexmin[x].as_ref().expect("processed");
                let max_word = lexmax[x].as_ref().expect("processed");
                if n_inc != 1 || !min_word.windows(2).all(|p| p[0] < p[1]) {
                    report.increasing_failures.push((x, y));
                }
                if n_dec != 1 || !max_word.windows(2).all(|p| p[0] > p[1]) {
                    report.decreasing_failures.push((x, y));
                }
            }
        }
        report.increasing_failures.sort();
        report.decreasing_failures.sort();
        report
    }

    /// DOT rendering; `name` labels vertices by external id.
    pub fn to_dot(&self, name: impl Fn(usize) -> String) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n");
        for (x, &id) in self.elements.iter().enumerate() {
            s.push_str(&format!("  n{x} [label=\"{}\"];\n", name(id)));
        }
        for &(x, y, l) in &self.covers {
            s.push_str(&format!("  n{x} -> n{y} [label=\"{l}\"];\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, name: impl Fn(usize) -> String) -> serde_json::Value {
        serde_json::json!({
            "elements": self.elements.iter().enumerate().map(|(x, &id)| serde_json::json!({
                "id": x,
                "word": name(id),
                "rank": self.rank[x],
            })).collect::<Vec<_>>(),
            "covers": self.covers.iter().map(|&(x, y, l)| serde_json::json!([x, y, l])).collect::<Vec<_>>(),
            "bottom": 0,
            "top": self.top,
        })
    }
}
