mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use common::*;
use starlab::augment::augmentations;
use starlab::canon::{canonical_form, canonical_labeling};
use starlab::stars::{count_maximal_stars, StarEnumerator};
use starlab::{maximal_stars, Graph};

fn library_stars(g: &Graph) -> BTreeSet<(usize, u64)> {
    maximal_stars(g)
        .iter()
        .map(|s| (s.center, s.vertex_set()))
        .collect()
}

/// Connected graphs on `n` vertices via the library (fast, not independent).
fn connected_graphs(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1).unwrap()];
    for _ in 1..n {
        let mut next = BTreeMap::new();
        for g in &level {
            for c in augmentations(g).unwrap() {
                next.entry(canonical_form(&c)).or_insert(c);
            }
        }
        level = next.into_values().collect();
    }
    level
}

#[test]
fn generator_counts_match_known_sequence() {
    for (n, &want) in CONNECTED_COUNTS.iter().enumerate().skip(1) {
        assert_eq!(connected_graphs_oracle(n).len(), want, "oracle n={n}");
        assert_eq!(connected_graphs(n).len(), want, "library n={n}");
    }
}

#[test]
fn stars_match_subset_oracle_on_connected_graphs_up_to_8() {
    for n in 1..=7 {
        for g in connected_graphs_oracle(n) {
            assert_eq!(library_stars(&g), brute_force_stars(&g), "{g:?}");
        }
    }
    for g in connected_graphs(8) {
        assert_eq!(library_stars(&g), brute_force_stars(&g), "{g:?}");
    }
}

#[test]
fn stars_match_subset_oracle_on_all_labeled_graphs_up_to_5() {
    for n in 0..=5 {
        for code in 0..1u64 << (n * (n.max(1) - 1) / 2) {
            let g = graph_from_code(n, code);
            let stars = library_stars(&g);
            assert_eq!(stars, brute_force_stars(&g), "{g:?}");
            assert_eq!(stars.len(), count_maximal_stars(&g));
        }
    }
}

#[test]
fn canonical_form_matches_permutation_oracle_up_to_6() {
    for (n, &want) in GRAPH_COUNTS.iter().enumerate().take(7) {
        let perms = permutations(n);
        let mut by_code: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
        let mut oracle_classes = BTreeSet::new();
        for code in 0..1u64 << (n * (n.max(1) - 1) / 2) {
            let g = graph_from_code(n, code);
            let key = permutation_oracle(&g, &perms);
            oracle_classes.insert(key.clone());
            let c = canonical_form(&g).as_str().to_string();
            match by_code.get(&c) {
                Some(k) => assert_eq!(*k, key, "same code, different classes: {g:?}"),
                None => {
                    by_code.insert(c, key);
                }
            }
        }
        assert_eq!(by_code.len(), oracle_classes.len(), "n={n}");
        assert_eq!(by_code.len(), want);
    }
}

#[test]
fn canonical_form_partitions_all_7_vertex_graphs() {
    let mut codes = HashSet::new();
    for code in 0..1u64 << 21 {
        let g = graph_from_code(7, code);
        let lab = canonical_labeling(&g);
        assert_eq!(g.relabel(&lab.perm), lab.graph);
        codes.insert(lab.graph.to_graph6());
    }
    // every code is a relabeling of its input, so equal codes imply
    // isomorphic inputs; the count then rules out split classes
    assert_eq!(codes.len(), GRAPH_COUNTS[7]);
}

#[test]
fn augmentations_are_complete_and_distinct() {
    for n in 1..=5 {
        let perms = permutations(n + 1);
        for g in connected_graphs_oracle(n) {
            let members = augmentations(&g).unwrap();
            let keys: BTreeSet<_> = members
                .iter()
                .map(|m| permutation_oracle(m, &perms))
                .collect();
            assert_eq!(keys.len(), members.len(), "isomorphic members for {g:?}");
            for nb in 1..1u64 << n {
                let ext = g.with_vertex(nb).unwrap();
                assert!(keys.contains(&permutation_oracle(&ext, &perms)));
            }
        }
    }
}

#[test]
fn enumeration_delay_statistics() {
    // Moon–Moser-type graphs have many stars; measure the gap between
    // successive stars.
    let mut g = Graph::empty(16).unwrap();
    for u in 0..16 {
        for v in u + 1..16 {
            if u / 3 != v / 3 {
                g.try_add_edge(u, v).unwrap();
            }
        }
    }
    let mut enumerator = StarEnumerator::new(&g);
    let mut gaps = Vec::new();
    let mut last = Instant::now();
    while enumerator.next().is_some() {
        let now = Instant::now();
        gaps.push(now - last);
        last = now;
    }
    assert_eq!(gaps.len(), count_maximal_stars(&g));
    let total: f64 = gaps.iter().map(|d| d.as_secs_f64()).sum();
    let mean = total / gaps.len() as f64;
    let max = gaps.iter().map(|d| d.as_secs_f64()).fold(0.0, f64::max);
    println!(
        "stars {} mean delay {:.2e}s max delay {:.2e}s",
        gaps.len(),
        mean,
        max
    );
    assert!(max < 0.05, "max delay {max}");
}
