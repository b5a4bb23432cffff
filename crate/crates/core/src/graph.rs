//! Dense simple graphs on at most 62 vertices.
//!
//! Row `v` of the adjacency is a `u64` whose set bits are the neighbors of
//! `v`. Everything in the crate is built on top of these bit rows, so vertex
//! sets are plain `u64` masks as well (see [`bits`]).

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 62;

/// Iterate over the set bits of a mask in increasing order.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A length that may be infinite: the diameter of a disconnected graph or
/// the girth of a forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<usize> {
        match self {
            Length::Finite(d) => Some(d),
            Length::Infinite => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(d) => write!(f, "{d}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

/// Undirected simple graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph({}, {:?})",
            self.to_graph6(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_graph6())
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Graph::from_graph6(&text).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for Length {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(d) => s.serialize_u64(*d as u64),
            Length::Infinite => s.serialize_str("inf"),
        }
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "{n} vertices requested, at most {MAX_VERTICES} supported"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from adjacency rows, validating symmetry, loops and range.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "{n} vertices requested, at most {MAX_VERTICES} supported"
            )));
        }
        let all = low_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !all != 0 {
                return Err(Error::Input(format!("row {v} has bits beyond vertex {n}")));
            }
            if row & bit(v) != 0 {
                return Err(Error::Input(format!("loop at vertex {v}")));
            }
            for u in bits(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(Error::Input(format!("asymmetric edge {v}-{u}")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Rows are trusted to be symmetric and loop-free.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph {
            n: rows.len(),
            adj: rows,
        }
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::Input(format!("loop at vertex {u}")));
        }
        self.add_edge(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Mask with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> u64 {
        self.adj[v] | bit(v)
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] >> u >> 1).map(move |d| (u, u + 1 + d)))
    }

    pub fn is_independent(&self, set: u64) -> bool {
        bits(set).all(|v| self.adj[v] & set == 0)
    }

    pub fn is_clique(&self, set: u64) -> bool {
        bits(set).all(|v| (self.adj[v] | bit(v)) & set == set)
    }

    /// Subgraph induced by `keep`, vertices relabeled `0..` in increasing
    /// original order.
    pub fn induced(&self, keep: u64) -> Graph {
        let keep = keep & self.vertex_mask();
        let verts: Vec<usize> = bits(keep).collect();
        let rows = verts
            .iter()
            .map(|&v| {
                let row = self.adj[v] & keep;
                verts
                    .iter()
                    .enumerate()
                    .filter(|(_, &u)| row & bit(u) != 0)
                    .fold(0u64, |acc, (i, _)| acc | bit(i))
            })
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    /// Delete `v`; vertices above `v` shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let low = low_mask(v);
        let high = !low_mask(v + 1);
        let rows = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| {
                let r = self.adj[u];
                (r & low) | ((r & high) >> 1)
            })
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    /// New graph on `n + 1` vertices where vertex `n` is adjacent to `nbhd`.
    pub fn with_vertex(&self, nbhd: u64) -> Result<Graph> {
        if self.n >= MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "cannot add a vertex to a graph with {} vertices",
                self.n
            )));
        }
        let nbhd = nbhd & self.vertex_mask();
        let y = self.n;
        let mut rows = Vec::with_capacity(y + 1);
        rows.extend(self.adj.iter().enumerate().map(|(v, &r)| {
            if nbhd & bit(v) != 0 {
                r | bit(y)
            } else {
                r
            }
        }));
        rows.push(nbhd);
        Ok(Graph {
            n: y + 1,
            adj: rows,
        })
    }

    /// Apply `perm`, sending vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for (v, &row) in self.adj.iter().enumerate() {
            rows[perm[v]] = bits(row).fold(0, |acc, u| acc | bit(perm[u]));
        }
        Graph {
            n: self.n,
            adj: rows,
        }
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let rows = (0..self.n).map(|v| !self.adj[v] & all & !bit(v)).collect();
        Graph {
            n: self.n,
            adj: rows,
        }
    }

    // ------------------------------------------------------------------
    // graph6
    // ------------------------------------------------------------------

    /// Short-form graph6 encoding.
    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
        out.push((n as u8 + 63) as char);
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | u8::from(self.has_edge(i, j));
                filled += 1;
                if filled == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((acc << (6 - filled)) + 63) as char);
        }
        out
    }

    /// Parse one graph6 record. Surrounding whitespace is ignored.
    pub fn from_graph6(text: &str) -> Result<Graph> {
        let bytes = text.trim().as_bytes();
        let err = |offset: usize, reason: &str| Error::Graph6 {
            offset,
            reason: reason.to_string(),
        };
        let Some(&head) = bytes.first() else {
            return Err(err(0, "empty record"));
        };
        if !(63..=126).contains(&head) {
            return Err(err(0, "header byte outside 63..=126"));
        }
        if head == 126 {
            return Err(err(
                0,
                "long-form header: more than 62 vertices is not supported",
            ));
        }
        let n = (head - 63) as usize;
        let nbits = n * n.saturating_sub(1) / 2;
        let expected = 1 + nbits.div_ceil(6);
        if bytes.len() != expected {
            return Err(err(
                bytes.len().min(expected),
                &format!(
                    "expected {expected} bytes for {n} vertices, found {}",
                    bytes.len()
                ),
            ));
        }
        let mut g = Graph::empty(n)?;
        let mut idx = 0usize;
        for (off, &b) in bytes.iter().enumerate().skip(1) {
            if !(63..=126).contains(&b) {
                return Err(err(off, "data byte outside 63..=126"));
            }
            let six = b - 63;
            for k in 0..6 {
                let set = six & (0x20 >> k) != 0;
                if idx < nbits {
                    if set {
                        let (i, j) = triangle_pair(idx);
                        g.add_edge(i, j);
                    }
                } else if set {
                    return Err(err(off, "nonzero padding bits"));
                }
                idx += 1;
            }
        }
        Ok(g)
    }

    // ------------------------------------------------------------------
    // structure queries
    // ------------------------------------------------------------------

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: u64) -> u64 {
        let mut seen = bit(start) & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components as vertex masks, ordered by lowest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let c = self.reach(left.trailing_zeros() as usize, left);
            out.push(c);
            left &= !c;
        }
        out
    }

    /// The empty graph and `K1` count as connected.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Vertices whose removal increases the number of components.
    pub fn cut_vertices(&self) -> u64 {
        let mut out = 0;
        for comp in self.components() {
            if comp.count_ones() < 3 {
                continue;
            }
            for v in bits(comp) {
                let rest = comp & !bit(v);
                let start = rest.trailing_zeros() as usize;
                if self.reach(start, rest) != rest {
                    out |= bit(v);
                }
            }
        }
        out
    }

    /// BFS distances from `s`; `None` for unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut seen = bit(s);
        let mut frontier = bit(s);
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            for v in bits(next) {
                dist[v] = Some(d);
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    pub fn distance_matrix(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n).map(|s| self.distances_from(s)).collect()
    }

    pub fn distance(&self, u: usize, v: usize) -> Length {
        match self.distances_from(u)[v] {
            Some(d) => Length::Finite(d),
            None => Length::Infinite,
        }
    }

    /// Diameter; infinite when disconnected, 0 for graphs with at most one
    /// vertex.
    pub fn diameter(&self) -> Length {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.distances_from(s) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Length::Infinite,
                }
            }
        }
        Length::Finite(best)
    }

    /// Length of a shortest cycle; infinite for forests.
    pub fn girth(&self) -> Length {
        let mut best = usize::MAX;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            let mut queue = VecDeque::from([s]);
            dist[s] = 0;
            while let Some(v) = queue.pop_front() {
                if 2 * dist[v] + 1 >= best {
                    break;
                }
                for u in bits(self.adj[v]) {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        parent[u] = v;
                        queue.push_back(u);
                    } else if parent[v] != u {
                        best = best.min(dist[u] + dist[v] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Length::Infinite
        } else {
            Length::Finite(best)
        }
    }

    /// Vertices whose neighborhood is a clique (isolated vertices included).
    pub fn simplicial_vertices(&self) -> u64 {
        (0..self.n)
            .filter(|&v| self.is_clique(self.adj[v]))
            .fold(0, |acc, v| acc | bit(v))
    }

    pub fn is_simplicial(&self, v: usize) -> bool {
        self.is_clique(self.adj[v])
    }

    /// Adjacent pairs `u < v` with `N[u] = N[v]`.
    pub fn true_twin_pairs(&self) -> Vec<(usize, usize)> {
        self.edges()
            .filter(|&(u, v)| self.closed_neighbors(u) == self.closed_neighbors(v))
            .collect()
    }

    pub fn contains_triangle(&self) -> bool {
        self.edges().any(|(u, v)| self.adj[u] & self.adj[v] != 0)
    }
}

/// Index of bit `idx` in the column-major upper triangle: `(i, j)`, `i < j`.
fn triangle_pair(idx: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= idx {
        start += j;
        j += 1;
    }
    (idx - start, j)
}

/// Small named graphs used across the crate, its tests and the CLI.
pub mod named {
    use super::Graph;

    fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).expect("named graph fits")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build(n, &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        build(n, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        build(n, &edges)
    }

    /// `K_{1,p}` with center 0.
    pub fn star(p: usize) -> Graph {
        let edges: Vec<_> = (1..=p).map(|v| (0, v)).collect();
        build(p + 1, &edges)
    }

    /// `K4` minus the edge 2-3.
    pub fn diamond() -> Graph {
        build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    }

    /// `P4` 0-1-2-3 plus the dominating vertex 4.
    pub fn gem() -> Graph {
        build(5, &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)])
    }

    /// Triangle 0,1,2 with pendant 3+i on vertex i.
    pub fn net() -> Graph {
        build(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    }

    /// Triangle 0,1,2 with pendant 3 on vertex 0.
    pub fn paw() -> Graph {
        build(4, &[(0, 1), (1, 2), (0, 2), (0, 3)])
    }

    /// `K_{2,2,2}`; opposite pairs are (0,1), (2,3), (4,5).
    pub fn octahedron() -> Graph {
        let edges: Vec<_> = (0..6)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .filter(|&(u, v)| u / 2 != v / 2)
            .collect();
        build(6, &edges)
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        build(10, &edges)
    }

    /// Two triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
    pub fn twin_triangles() -> Graph {
        build(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])
    }

    /// Four vertices a,b,c,d (0..4) with the triangle a,b,c, edges a-d, b-d,
    /// c-d, and x (4) adjacent to a and d.
    pub fn critical_example() -> Graph {
        build(
            5,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (0, 3),
                (3, 1),
                (2, 3),
                (3, 4),
                (4, 0),
            ],
        )
    }

    /// Triangle-free graph built from two 4-cycles with two pendants each,
    /// joined by one edge.
    pub fn two_squares_with_pendants() -> Graph {
        // a0..a3 = 0..4, 1a = 4, 3a = 5; b0..b3 = 6..10, 1b = 10, 3b = 11
        build(
            12,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 1),
                (5, 3),
                (6, 7),
                (7, 8),
                (8, 9),
                (9, 6),
                (10, 7),
                (11, 9),
                (0, 8),
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn graph6_examples() {
        assert_eq!(Graph::from_graph6("@").unwrap(), Graph::empty(1).unwrap());
        assert_eq!(Graph::from_graph6("A_").unwrap(), complete(2));
        assert_eq!(Graph::from_graph6("C~").unwrap(), complete(4));
        assert_eq!(complete(1).to_graph6(), "@");
        assert_eq!(complete(2).to_graph6(), "A_");
        assert_eq!(complete(4).to_graph6(), "C~");
        assert_eq!(Graph::empty(0).unwrap().to_graph6(), "?");
        assert_eq!(
            petersen().to_graph6(),
            Graph::from_graph6(&petersen().to_graph6())
                .unwrap()
                .to_graph6()
        );
    }

    #[test]
    fn graph6_errors_name_offsets() {
        // header beyond 62 vertices
        assert!(matches!(
            Graph::from_graph6("~"),
            Err(Error::Graph6 { offset: 0, .. })
        ));
        // padding bits set: K2 has one data bit, "A`" sets a padding bit
        assert!(matches!(
            Graph::from_graph6("A`"),
            Err(Error::Graph6 { offset: 1, .. })
        ));
        // truncated
        assert!(matches!(Graph::from_graph6("C"), Err(Error::Graph6 { .. })));
        assert!(matches!(
            Graph::from_graph6(""),
            Err(Error::Graph6 { offset: 0, .. })
        ));
        assert!(matches!(
            Graph::from_graph6("C\x10"),
            Err(Error::Graph6 { offset: 1, .. })
        ));
    }

    #[test]
    fn remove_and_induce_agree() {
        let g = petersen();
        for v in 0..10 {
            let a = g.remove_vertex(v);
            let b = g.induced(g.vertex_mask() & !bit(v));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn structure_examples() {
        let p4 = path(4);
        assert_eq!(p4.cut_vertices(), 0b0110);
        assert_eq!(p4.diameter(), Length::Finite(3));
        let k4 = complete(4);
        assert_eq!(k4.true_twin_pairs().len(), 6);
        assert_eq!(k4.girth(), Length::Finite(3));
        let p = petersen();
        assert_eq!(p.girth(), Length::Finite(5));
        assert_eq!(p.diameter(), Length::Finite(2));
        assert_eq!(cycle(5).girth(), Length::Finite(5));
        assert_eq!(star(4).girth(), Length::Infinite);
        let disc = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(disc.diameter(), Length::Infinite);
        assert!(!disc.is_connected());
        assert_eq!(cycle(4).girth(), Length::Finite(4));
        assert_eq!(octahedron().edge_count(), 12);
        assert_eq!(gem().simplicial_vertices(), 0b01001);
    }

    #[test]
    fn from_rows_validates() {
        assert!(Graph::from_rows(vec![0b10, 0]).is_err());
        assert!(Graph::from_rows(vec![0b1]).is_err());
        assert!(Graph::from_rows(vec![0b100, 0]).is_err());
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
    }
}
