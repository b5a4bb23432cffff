//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's star enumeration or canonical labeling.

#![allow(dead_code)]

use std::collections::BTreeSet;

use starlab::Graph;

/// Does `set` induce a star (at least two vertices, one center adjacent to
/// every other vertex, the others pairwise non-adjacent)? Returns the center,
/// taking the lower endpoint for a single edge.
pub fn induced_star_center(g: &Graph, set: u64) -> Option<usize> {
    let size = set.count_ones();
    if size < 2 {
        return None;
    }
    let members: Vec<usize> = (0..g.order()).filter(|&v| set >> v & 1 == 1).collect();
    if size == 2 {
        return g.has_edge(members[0], members[1]).then_some(members[0]);
    }
    members.iter().copied().find(|&c| {
        let rest: Vec<usize> = members.iter().copied().filter(|&x| x != c).collect();
        rest.iter().all(|&x| g.has_edge(c, x))
            && rest
                .iter()
                .all(|&x| rest.iter().all(|&y| x == y || !g.has_edge(x, y)))
    })
}

/// Maximal induced stars by testing every vertex subset:
/// `(center, vertex set)` pairs.
pub fn brute_force_stars(g: &Graph) -> BTreeSet<(usize, u64)> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for set in 0u64..(1u64 << n) {
        let Some(c) = induced_star_center(g, set) else {
            continue;
        };
        let extendable = (0..n)
            .filter(|&x| set >> x & 1 == 0)
            .any(|x| induced_star_center(g, set | 1 << x).is_some());
        if !extendable {
            out.insert((c, set));
        }
    }
    out
}

/// Graph on `n` vertices from a bit string over the upper triangle.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let mut b = 0;
    for u in 0..n {
        for v in u + 1..n {
            if code >> b & 1 == 1 {
                g.try_add_edge(u, v).unwrap();
            }
            b += 1;
        }
    }
    g
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Lexicographically smallest edge list over all relabelings.
pub fn permutation_oracle(g: &Graph, perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = g
                .edges()
                .map(|(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                .collect();
            e.sort();
            e
        })
        .min()
        .unwrap_or_default()
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class,
/// grown by attaching vertices and deduplicated by the permutation oracle.
/// Slow beyond seven vertices.
pub fn connected_graphs_oracle(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1).unwrap()];
    for m in 1..n {
        let perms = permutations(m + 1);
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for nb in 1..(1u64 << m) {
                let c = g.with_vertex(nb).unwrap();
                if seen.insert(permutation_oracle(&c, &perms)) {
                    next.push(c);
                }
            }
        }
        level = next;
    }
    level
}

/// Connected graphs on 1..=7 vertices (OEIS A001349).
pub const CONNECTED_COUNTS: [usize; 8] = [0, 1, 1, 2, 6, 21, 112, 853];

/// Connected triangle-free graphs on 1..=9 vertices (OEIS A024607).
pub const CONNECTED_TRIANGLE_FREE_COUNTS: [usize; 10] = [0, 1, 1, 1, 3, 6, 19, 59, 267, 1380];

/// All graphs on 0..=7 vertices (OEIS A000088).
pub const GRAPH_COUNTS: [usize; 8] = [1, 1, 2, 4, 11, 34, 156, 1044];
