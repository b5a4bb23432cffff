//! Maximal induced stars and the star operator.
//!
//! A maximal induced star with at least three vertices is `{v} ∪ M` for a
//! maximal independent set `M` of `H[N(v)]` with `|M| ≥ 2`. Stars on two
//! vertices are exactly the edges between true twins; their center is the
//! lower endpoint.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MaximalStar {
    pub center: usize,
    /// Leaf set as a vertex mask.
    pub leaves: u64,
}

impl MaximalStar {
    /// Center and leaves as one vertex mask.
    #[inline]
    pub fn vertex_set(&self) -> u64 {
        self.leaves | bit(self.center)
    }

    pub fn leaf_list(&self) -> Vec<usize> {
        bits(self.leaves).collect()
    }

    #[inline]
    pub fn intersects(&self, other: &MaximalStar) -> bool {
        self.vertex_set() & other.vertex_set() != 0
    }
}

impl fmt::Display for MaximalStar {
    /// `c: l1 l2 ...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.center)?;
        for l in bits(self.leaves) {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Star graph plus the star realizing each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarGraphResult {
    pub graph: Graph,
    pub star_of_vertex: Vec<MaximalStar>,
}

// ----------------------------------------------------------------------
// maximal independent sets of H[cand]
// ----------------------------------------------------------------------

/// Pivot for Bron–Kerbosch on the complement: the vertex of `p ∪ x` with
/// the fewest neighbors in `p`, ties to the lowest index. Returns the branch
/// set `p ∩ N[pivot]`.
#[inline]
fn branch_set(rows: &[u64], p: u64, x: u64) -> u64 {
    let mut best = u32::MAX;
    let mut pivot = 0;
    for u in bits(p | x) {
        let d = (rows[u] & p).count_ones();
        if d < best {
            best = d;
            pivot = u;
            if d == 0 {
                break;
            }
        }
    }
    p & (rows[pivot] | bit(pivot))
}

/// Count maximal independent sets of size at least two inside `cand`,
/// stopping early once the count exceeds `limit`.
fn count_mis_ge2(rows: &[u64], r_size: u32, p: u64, x: u64, limit: usize, acc: &mut usize) {
    if p == 0 {
        if x == 0 && r_size >= 2 {
            *acc += 1;
        }
        return;
    }
    let mut p = p;
    let mut x = x;
    let mut todo = branch_set(rows, p, x);
    while todo != 0 {
        if *acc > limit {
            return;
        }
        let w = todo.trailing_zeros() as usize;
        todo &= todo - 1;
        let keep = !(rows[w] | bit(w));
        count_mis_ge2(rows, r_size + 1, p & keep, x & keep, limit, acc);
        p &= !bit(w);
        x |= bit(w);
    }
}

/// Number of maximal stars of `h`.
pub fn count_maximal_stars(h: &Graph) -> usize {
    count_maximal_stars_bounded(h, usize::MAX)
}

/// Number of maximal stars of `h`, or some value greater than `limit` as
/// soon as the count is known to exceed it.
pub fn count_maximal_stars_bounded(h: &Graph, limit: usize) -> usize {
    let rows = h.rows();
    let mut total = 0usize;
    for (u, v) in h.edges() {
        if rows[u] | bit(u) == rows[v] | bit(v) {
            total += 1;
        }
    }
    for v in 0..h.order() {
        if total > limit {
            return total;
        }
        let nb = rows[v];
        if nb.count_ones() >= 2 && !h.is_clique(nb) {
            count_mis_ge2(rows, 0, nb, 0, limit, &mut total);
        }
    }
    total
}

/// Streaming enumerator of the maximal stars of a graph.
///
/// Twin stars come first in lexicographic edge order, then for each center in
/// vertex order the maximal independent sets of its neighborhood, in the
/// order produced by pivoted Bron–Kerbosch on the complement, skipping sets
/// of size one.
pub struct StarEnumerator<'a> {
    h: &'a Graph,
    twin_edges: Vec<(usize, usize)>,
    twin_next: usize,
    center: usize,
    stack: Vec<Frame>,
}

struct Frame {
    r: u64,
    p: u64,
    x: u64,
    todo: u64,
}

impl<'a> StarEnumerator<'a> {
    pub fn new(h: &'a Graph) -> Self {
        let twin_edges = h.true_twin_pairs();
        StarEnumerator {
            h,
            twin_edges,
            twin_next: 0,
            center: 0,
            stack: Vec::new(),
        }
    }

    /// Prime the stack for the current center, or return false when the
    /// center has nothing to contribute.
    fn start_center(&mut self) -> bool {
        let nb = self.h.neighbors(self.center);
        if nb.count_ones() < 2 {
            return false;
        }
        let rows = self.h.rows();
        self.stack.push(Frame {
            r: 0,
            p: nb,
            x: 0,
            todo: branch_set(rows, nb, 0),
        });
        true
    }
}

impl Iterator for StarEnumerator<'_> {
    type Item = MaximalStar;

    fn next(&mut self) -> Option<MaximalStar> {
        if self.twin_next < self.twin_edges.len() {
            let (u, v) = self.twin_edges[self.twin_next];
            self.twin_next += 1;
            return Some(MaximalStar {
                center: u,
                leaves: bit(v),
            });
        }
        let rows = self.h.rows();
        loop {
            let Some(top) = self.stack.last_mut() else {
                if self.center >= self.h.order() {
                    return None;
                }
                let started = self.start_center();
                if !started {
                    self.center += 1;
                    continue;
                }
                // `center` advances once its stack drains (below).
                continue;
            };
            if top.todo == 0 {
                self.stack.pop();
                if self.stack.is_empty() {
                    self.center += 1;
                }
                continue;
            }
            let w = top.todo.trailing_zeros() as usize;
            top.todo &= top.todo - 1;
            let keep = !(rows[w] | bit(w));
            let r = top.r | bit(w);
            let p = top.p & keep;
            let x = top.x & keep;
            top.p &= !bit(w);
            top.x |= bit(w);
            if p == 0 {
                if x == 0 && r.count_ones() >= 2 {
                    return Some(MaximalStar {
                        center: self.center,
                        leaves: r,
                    });
                }
                continue;
            }
            let todo = branch_set(rows, p, x);
            self.stack.push(Frame { r, p, x, todo });
        }
    }
}

/// All maximal stars of `h` in enumeration order.
pub fn maximal_stars(h: &Graph) -> Vec<MaximalStar> {
    StarEnumerator::new(h).collect()
}

/// Intersection graph of a family of stars, in the given order.
pub fn intersection_graph(stars: &[MaximalStar]) -> Result<Graph> {
    if stars.len() > MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "{} maximal stars exceed the {MAX_VERTICES}-vertex limit",
            stars.len()
        )));
    }
    let mut g = Graph::empty(stars.len())?;
    for (a, sa) in stars.iter().enumerate() {
        for (b, sb) in stars.iter().enumerate().skip(a + 1) {
            if sa.intersects(sb) {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// The star graph of `h`. Fails only when `h` has more than 62 maximal stars.
pub fn star_graph(h: &Graph) -> Result<StarGraphResult> {
    let star_of_vertex = maximal_stars(h);
    let graph = intersection_graph(&star_of_vertex)?;
    Ok(StarGraphResult {
        graph,
        star_of_vertex,
    })
}

/// Apply the star operator `i ≥ 1` times.
pub fn iterated_star(h: &Graph, i: usize) -> Result<Graph> {
    if i == 0 {
        return Err(Error::Precondition(
            "iteration count must be at least 1".into(),
        ));
    }
    let mut g = h.clone();
    for step in 1..=i {
        g = star_graph(&g)
            .map_err(|e| Error::Capacity(format!("iteration {step}: {e}")))?
            .graph;
    }
    Ok(g)
}

/// Whether `s` is a maximal induced star of `h`.
pub fn is_maximal_star(h: &Graph, s: &MaximalStar) -> bool {
    let n = h.order();
    if s.center >= n || s.leaves == 0 || s.leaves & !h.vertex_mask() != 0 {
        return false;
    }
    if s.leaves & bit(s.center) != 0 || s.leaves & !h.neighbors(s.center) != 0 {
        return false;
    }
    if !h.is_independent(s.leaves) {
        return false;
    }
    let set = s.vertex_set();
    if s.leaves.count_ones() == 1 {
        // An edge extends iff some vertex sees exactly one endpoint.
        let l = s.leaves.trailing_zeros() as usize;
        return h.closed_neighbors(s.center) == h.closed_neighbors(l);
    }
    // Larger stars only extend by new leaves of the same center.
    let extra = h.neighbors(s.center) & !set;
    bits(extra).all(|w| h.neighbors(w) & s.leaves != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::graph::named::*;

    /// Subset brute force: every vertex subset that induces a star, keeping
    /// those with no star superset.
    fn oracle(h: &Graph) -> Vec<u64> {
        let n = h.order();
        let is_star = |set: u64| -> bool {
            let k = set.count_ones();
            if k < 2 {
                return false;
            }
            let sub = h.induced(set);
            if sub.edge_count() != k as usize - 1 {
                return false;
            }
            (0..sub.order()).any(|c| sub.degree(c) == k as usize - 1)
        };
        let stars: Vec<u64> = (1u64..(1 << n)).filter(|&s| is_star(s)).collect();
        let mut out: Vec<u64> = stars
            .iter()
            .copied()
            .filter(|&s| !stars.iter().any(|&t| t != s && t & s == s))
            .collect();
        out.sort_unstable();
        out
    }

    fn sets(h: &Graph) -> Vec<u64> {
        let mut v: Vec<u64> = maximal_stars(h).iter().map(|s| s.vertex_set()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn named_star_counts() {
        assert_eq!(
            maximal_stars(&path(3)),
            vec![MaximalStar {
                center: 1,
                leaves: 0b101
            }]
        );
        let c4 = maximal_stars(&cycle(4));
        assert_eq!(c4.len(), 4);
        assert_eq!(
            c4.iter().map(|s| s.center).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
        let k4 = maximal_stars(&complete(4));
        assert_eq!(k4.len(), 6);
        assert!(k4
            .iter()
            .all(|s| s.leaves.count_ones() == 1 && s.leaves > bit(s.center)));
    }

    #[test]
    fn matches_subset_oracle_on_named_graphs() {
        for g in [
            path(5),
            cycle(5),
            gem(),
            net(),
            paw(),
            diamond(),
            octahedron(),
            twin_triangles(),
            critical_example(),
        ] {
            assert_eq!(sets(&g), oracle(&g), "{g:?}");
        }
    }

    #[test]
    fn star_graph_examples() {
        let sg = |g: &Graph| star_graph(g).unwrap().graph;
        assert!(are_isomorphic(&sg(&path(4)), &complete(2)));
        assert!(are_isomorphic(&sg(&path(6)), &diamond()));
        assert!(are_isomorphic(&sg(&path(7)), &gem()));
        assert!(are_isomorphic(&sg(&complete(4)), &octahedron()));
        assert!(are_isomorphic(&sg(&diamond()), &complete(3)));
        assert_eq!(sg(&Graph::empty(1).unwrap()).order(), 0);
        assert!(are_isomorphic(&sg(&complete(2)), &complete(1)));
    }

    #[test]
    fn iterated_examples() {
        assert!(are_isomorphic(
            &iterated_star(&cycle(4), 2).unwrap(),
            &octahedron()
        ));
        let gem_star = star_graph(&gem()).unwrap().graph;
        assert!(are_isomorphic(
            &iterated_star(&path(7), 2).unwrap(),
            &gem_star
        ));
        assert_eq!(sets(&gem()), oracle(&gem()));
        assert!(iterated_star(&path(3), 0).is_err());
    }

    #[test]
    fn maximality_checks() {
        let k4 = complete(4);
        assert!(is_maximal_star(
            &k4,
            &MaximalStar {
                center: 0,
                leaves: bit(1)
            }
        ));
        let p4 = path(4);
        assert!(!is_maximal_star(
            &p4,
            &MaximalStar {
                center: 1,
                leaves: bit(0)
            }
        ));
        assert!(is_maximal_star(
            &p4,
            &MaximalStar {
                center: 1,
                leaves: bit(0) | bit(2)
            }
        ));
        assert!(!is_maximal_star(
            &p4,
            &MaximalStar {
                center: 0,
                leaves: bit(2)
            }
        ));
    }

    #[test]
    fn count_agrees_with_enumeration() {
        for g in [path(7), cycle(6), octahedron(), petersen(), net(), star(5)] {
            assert_eq!(count_maximal_stars(&g), maximal_stars(&g).len());
            assert!(count_maximal_stars_bounded(&g, 0) >= 1.min(maximal_stars(&g).len()));
        }
    }

    #[test]
    fn display_format() {
        let s = MaximalStar {
            center: 2,
            leaves: 0b10011,
        };
        assert_eq!(s.to_string(), "2: 0 1 4");
    }
}
