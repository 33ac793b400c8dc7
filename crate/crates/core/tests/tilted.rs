use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use proptest::prelude::*;
use tilted_bruhat::exec::Parallelism;
use tilted_bruhat::random;
use tilted_bruhat::tilted::TiltedDigraph;
use tilted_bruhat::{RootSystem, TypeLabel, WeylGroup};

fn group(t: TypeLabel, n: usize) -> Arc<WeylGroup> {
    Arc::new(WeylGroup::new(Arc::new(RootSystem::new(t, n).unwrap())).unwrap())
}

/// B2 words in the letters a (short simple root) and b (long simple root).
fn b2_name(g: &WeylGroup, w: usize) -> String {
    if w == g.longest_element() {
        return "w0".into();
    }
    if w == 0 {
        return "e".into();
    }
    g.reduced_word(w)
        .iter()
        .map(|&i| if i == 1 { 'a' } else { 'b' })
        .collect()
}

/// The ordering a < aba < bab < b, from the reduced word abab.
fn b2_digraph(g: &Arc<WeylGroup>) -> TiltedDigraph {
    TiltedDigraph::new(g, g.reflection_ordering_from_word(&[1, 0, 1, 0]).unwrap()).unwrap()
}

fn b2_element(g: &WeylGroup, name: &str) -> usize {
    (0..g.size()).find(|&w| b2_name(g, w) == name).unwrap()
}

#[test]
fn b2_digraph_matches_golden_file() {
    let g = group(TypeLabel::B, 2);
    let d = b2_digraph(&g);
    let got = d.edge_lines(|w| b2_name(&g, w)).join("\n") + "\n";
    let want = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/b2_digraph.txt"
    ))
    .unwrap();
    assert_eq!(got, want);
}

#[test]
fn b2_intervals() {
    let g = group(TypeLabel::B, 2);
    let d = b2_digraph(&g);
    let el = |s| b2_element(&g, s);
    let (w0, e, a, ab) = (el("w0"), el("e"), el("a"), el("ab"));

    let top_down = d.interval(w0, e);
    let names: BTreeSet<String> = top_down
        .elements()
        .iter()
        .map(|&w| b2_name(&g, w))
        .collect();
    assert_eq!(
        names,
        ["w0", "a", "bab", "e"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    );
    assert_eq!(top_down.mobius(0, top_down.top().unwrap()), 1);
    assert!(top_down.is_eulerian());

    let path = d.unique_increasing_path(w0, e).unwrap();
    assert_eq!(path.iter().map(|e| e.label).collect::<Vec<_>>(), vec![1, 3]);
    let path = d.unique_decreasing_path(w0, e).unwrap();
    assert_eq!(path.iter().map(|e| e.label).collect::<Vec<_>>(), vec![3, 1]);

    assert_eq!(d.distance(ab, a), 3);
    let wide = d.interval(ab, a);
    assert_eq!(wide.len(), 8);
    let mid: Vec<usize> = [e, w0]
        .iter()
        .map(|&w| wide.local_index(w).unwrap())
        .collect();
    assert!(mid.iter().all(|&x| wide.rank(x) == 1 || wide.rank(x) == 2));

    // not dual: D(e, w0) is all of B2
    assert_eq!(d.interval(e, w0).len(), 8);

    let order = d.tilted_order(a);
    assert_eq!(order.top(), None);
    assert!(order.el_shelling_check().passed());
    assert!(order.is_lower_eulerian());
}

#[test]
fn b2_product_coefficient() {
    let g = group(TypeLabel::B, 2);
    let d = b2_digraph(&g);
    let a = b2_element(&g, "a");
    let img = &d.ordered_product_images(Parallelism::Sequential)[a];
    let top = img.get(&g.longest_element()).unwrap();
    assert_eq!(top.degree(), Some(3));
    assert_eq!(img[&a].degree(), Some(0));
    assert!(img
        .values()
        .all(|c| c.integer_coeffs().unwrap().iter().sum::<i64>() == 1));
}

#[test]
fn type_a_down_edges_need_no_height_condition() {
    let g = group(TypeLabel::A, 3);
    let d = TiltedDigraph::with_default_ordering(&g);
    let mut expected = BTreeSet::new();
    for u in 0..g.size() {
        for t in 0..g.reflections().len() {
            let v = g.reflect_left(t, u);
            let lt = g.length(g.reflection_element(t));
            if g.length(v) == g.length(u) + 1 || g.length(v) + lt == g.length(u) {
                expected.insert((u, v));
            }
        }
    }
    let got: BTreeSet<(usize, usize)> = d.edges().iter().map(|e| (e.source, e.target)).collect();
    assert_eq!(got, expected);
}

#[test]
fn identity_order_is_bruhat_order() {
    for (t, n) in [(TypeLabel::A, 3), (TypeLabel::B, 3), (TypeLabel::G, 2)] {
        let g = group(t, n);
        let d = TiltedDigraph::with_default_ordering(&g);
        let p = d.tilted_order(0);
        for x in 0..p.len() {
            for y in 0..p.len() {
                let (u, v) = (p.elements()[x], p.elements()[y]);
                assert_eq!(p.leq(x, y), g.bruhat_leq(u, v));
                assert_eq!(p.leq(x, y), d.tilted_leq(0, u, v));
            }
        }
        for v in 0..g.size() {
            let got: BTreeSet<usize> = d.interval_elements(0, v).into_iter().collect();
            let want: BTreeSet<usize> = (0..g.size()).filter(|&w| g.bruhat_leq(w, v)).collect();
            assert_eq!(got, want);
        }
    }
}

#[test]
fn intervals_of_tilted_orders_are_tilted_intervals() {
    for (t, n) in [(TypeLabel::B, 2), (TypeLabel::G, 2), (TypeLabel::A, 2)] {
        let g = group(t, n);
        let d = TiltedDigraph::with_default_ordering(&g);
        for u in 0..g.size() {
            assert!(
                d.interval_heredity_failures(u).is_empty(),
                "{} u={u}",
                g.name()
            );
        }
    }
}

#[test]
fn diamonds_g2_and_b3() {
    for (t, n) in [(TypeLabel::G, 2), (TypeLabel::B, 3)] {
        let d = TiltedDigraph::with_default_ordering(&group(t, n));
        let r = d.check_diamonds(Parallelism::Rayon);
        assert!(r.configurations > 0);
        assert!(r.passed(), "{:?}", r.failures);
    }
}

#[test]
fn b2_diamond_from_figure() {
    let g = group(TypeLabel::B, 2);
    let d = b2_digraph(&g);
    let (w0, a, e) = (
        b2_element(&g, "w0"),
        b2_element(&g, "a"),
        b2_element(&g, "e"),
    );
    let c = d.diamond_completion(w0, a, e).unwrap();
    assert_eq!((b2_name(&g, c.y).as_str(), c.m, c.n), ("bab", 1, 3));
    assert!(c.in_coset);
    assert!(d.diamond_completion(w0, b2_element(&g, "bab"), e).is_err());
}

#[test]
fn monotone_paths_small_groups() {
    for (t, n) in [
        (TypeLabel::A, 1),
        (TypeLabel::A, 2),
        (TypeLabel::B, 2),
        (TypeLabel::G, 2),
    ] {
        let d = TiltedDigraph::with_default_ordering(&group(t, n));
        let r = d.check_monotone_paths(Parallelism::Sequential);
        assert_eq!(r.pairs, d.size() * d.size());
        assert!(r.passed(), "{r:?}");
        assert!(d
            .check_monotone_paths_enumerated(Parallelism::Sequential)
            .passed());
        for u in 0..d.size() {
            for v in 0..d.size() {
                let word: Vec<usize> = d
                    .unique_increasing_path(u, v)
                    .unwrap()
                    .iter()
                    .map(|e| e.label)
                    .collect();
                assert_eq!(word, d.lexmin_shortest_word(u, v));
                let word: Vec<usize> = d
                    .unique_decreasing_path(u, v)
                    .unwrap()
                    .iter()
                    .map(|e| e.label)
                    .collect();
                assert_eq!(word, d.lexmax_shortest_word(u, v));
            }
        }
    }
}

fn bfs_oracle(g: &WeylGroup, u: usize) -> Vec<usize> {
    // plain BFS over the length rule, independent of the digraph's tables
    let mut dist = vec![usize::MAX; g.size()];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(w) = queue.pop_front() {
        for t in 0..g.reflections().len() {
            let v = g.reflect_left(t, w);
            let lt = g.length(g.reflection_element(t)) as i64;
            let ht = g.root_system().root(t).0.iter().sum::<i64>();
            let up = g.length(v) == g.length(w) + 1;
            let down = g.length(v) as i64 == g.length(w) as i64 - lt && lt == 2 * ht - 1;
            if (up || down) && dist[v] == usize::MAX {
                dist[v] = dist[w] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

#[test]
fn distances_match_oracle() {
    let g = group(TypeLabel::C, 3);
    let d = TiltedDigraph::with_default_ordering(&g);
    assert!(d.is_strongly_connected());
    for u in 0..g.size() {
        let oracle = bfs_oracle(&g, u);
        assert!((0..g.size()).all(|v| d.distance(u, v) == oracle[v]));
    }
}

#[test]
fn dot_and_json_exports() {
    let g = group(TypeLabel::B, 2);
    let d = TiltedDigraph::with_default_ordering(&g);
    let dot = d.to_dot(|w| g.word_string(w));
    assert_eq!(dot.matches("->").count(), 22);
    assert_eq!(dot.matches("dashed").count(), 10);
    let json = d.to_json(|w| g.word_string(w));
    assert_eq!(json["edges"].as_array().unwrap().len(), 22);
    assert_eq!(json["vertices"].as_array().unwrap().len(), 8);
    let poset = d.tilted_order(0).to_dot(|w| g.word_string(w));
    assert!(poset.starts_with("digraph poset"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn any_reduced_word_ordering_works(seed in any::<u64>()) {
        let g = group(TypeLabel::B, 3);
        let word = g.random_reduced_word(g.longest_element(), &mut random::rng(seed));
        let ordering = g.reflection_ordering_from_word(&word).unwrap();
        prop_assert!(g.is_reflection_ordering(ordering.order()).unwrap());
        let d = TiltedDigraph::new(&g, ordering).unwrap();
        prop_assert!(d.check_product_identity(Parallelism::Rayon).is_empty());
        let u = (seed % g.size() as u64) as usize;
        for v in 0..g.size() {
            let path = d.unique_increasing_path(u, v).unwrap();
            prop_assert_eq!(path.len(), d.distance(u, v));
        }
    }
}
