//! Canonical labeling by partition refinement and individualization.
//!
//! The canonical form of a graph is the relabeling reached at the maximum
//! leaf of the search tree, where leaves are ordered first by the sequence of
//! refinement traces along their path and then by the relabeled adjacency
//! rows. Subtrees are skipped when a vertex is a twin of an already explored
//! sibling or lies in the same orbit under automorphisms found so far that
//! fix the current prefix.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, bits, Graph};

/// graph6 string of the canonically relabeled graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn graph(&self) -> Graph {
        Graph::from_graph6(&self.0).expect("canonical codes are valid graph6")
    }

    /// Wrap a graph6 string that is known to be canonical (e.g. read back
    /// from a checkpoint written by this crate).
    pub fn from_trusted(code: String) -> Self {
        CanonicalCode(code)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Canonical labeling: `perm[v]` is the canonical position of vertex `v`.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub perm: Vec<usize>,
    pub graph: Graph,
}

pub fn canonical_form(g: &Graph) -> CanonicalCode {
    CanonicalCode(canonical_labeling(g).graph.to_graph6())
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    if n == 0 {
        return Labeling {
            perm: Vec::new(),
            graph: g.clone(),
        };
    }
    let mut search = Search::new(g);
    let mut cells = initial_partition(g);
    let root_trace = refine(g, &mut cells);
    search.path.push(root_trace);
    search.descend(cells, Ordering::Equal);
    let best = search.best.expect("search always reaches a leaf");
    let graph = g.relabel(&best.perm);
    Labeling {
        perm: best.perm,
        graph,
    }
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.order()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

/// A bijection `map` with `map[v]` in `b` for every `v` in `a` carrying
/// `E(a)` onto `E(b)`, if one exists.
pub fn isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    let la = canonical_labeling(a);
    let lb = canonical_labeling(b);
    if la.graph != lb.graph {
        return None;
    }
    let mut inv_b = vec![0; b.order()];
    for (v, &p) in lb.perm.iter().enumerate() {
        inv_b[p] = v;
    }
    Some(la.perm.iter().map(|&p| inv_b[p]).collect())
}

/// Check that `map` is an isomorphism from `a` to `b`.
pub fn is_isomorphism(a: &Graph, b: &Graph, map: &[usize]) -> bool {
    if a.order() != b.order() || map.len() != a.order() {
        return false;
    }
    let mut seen = 0u64;
    for &m in map {
        if m >= b.order() || seen & bit(m) != 0 {
            return false;
        }
        seen |= bit(m);
    }
    a.edge_count() == b.edge_count() && a.edges().all(|(u, v)| b.has_edge(map[u], map[v]))
}

fn initial_partition(g: &Graph) -> Vec<u64> {
    vec![g.vertex_mask()]
}

/// Refine `cells` to the coarsest equitable partition below it. Returns a
/// hash of the splitting trace, which is invariant under relabeling.
fn refine(g: &Graph, cells: &mut Vec<u64>) -> u64 {
    let mut trace: u64 = 0xcbf2_9ce4_8422_2325;
    let mix = |h: &mut u64, x: u64| {
        *h ^= x;
        *h = h.wrapping_mul(0x0100_0000_01b3);
    };
    let rows = g.rows();
    let mut counts = [0u8; 64];
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut c = 0;
            while c < cells.len() {
                let cell = cells[c];
                if cell & (cell - 1) == 0 {
                    c += 1;
                    continue;
                }
                let mut lo = u8::MAX;
                let mut hi = 0u8;
                for v in bits(cell) {
                    let k = (rows[v] & splitter).count_ones() as u8;
                    counts[v] = k;
                    lo = lo.min(k);
                    hi = hi.max(k);
                }
                if lo == hi {
                    c += 1;
                    continue;
                }
                changed = true;
                let mut parts: Vec<(u8, u64)> = Vec::new();
                for v in bits(cell) {
                    let k = counts[v];
                    match parts.iter_mut().find(|(key, _)| *key == k) {
                        Some((_, m)) => *m |= bit(v),
                        None => parts.push((k, bit(v))),
                    }
                }
                parts.sort_unstable_by_key(|&(k, _)| k);
                mix(&mut trace, (s as u64) << 32 | c as u64);
                for &(k, m) in &parts {
                    mix(&mut trace, (k as u64) << 8 | m.count_ones() as u64);
                }
                let added = parts.len();
                cells.splice(c..=c, parts.into_iter().map(|(_, m)| m));
                c += added;
            }
            s += 1;
        }
        if !changed {
            break;
        }
    }
    mix(&mut trace, cells.len() as u64);
    trace
}

struct Leaf {
    path: Vec<u64>,
    rows: Vec<u64>,
    perm: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    twin_class: Vec<u64>,
    path: Vec<u64>,
    prefix: Vec<usize>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

const MAX_STORED_AUTOMORPHISMS: usize = 64;

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        let twin_class = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u == v || g.neighbors(u) & !bit(v) == g.neighbors(v) & !bit(u))
                    .fold(0u64, |acc, u| acc | bit(u))
            })
            .collect();
        Search {
            g,
            twin_class,
            path: Vec::new(),
            prefix: Vec::new(),
            best: None,
            automorphisms: Vec::new(),
        }
    }

    /// `state` compares the current path with the best leaf's path so far.
    fn descend(&mut self, cells: Vec<u64>, state: Ordering) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i);
        let Some(ti) = target else {
            self.leaf(&cells, state);
            return;
        };
        let cell = cells[ti];
        let mut tried = 0u64;
        for v in bits(cell) {
            if tried & self.twin_class[v] != 0 {
                continue;
            }
            if self.orbit_of(v, cell) & tried != 0 {
                continue;
            }
            tried |= bit(v);
            let mut child = cells.clone();
            child.splice(ti..=ti, [bit(v), cell & !bit(v)]);
            let trace = refine(self.g, &mut child);
            let depth = self.path.len();
            let mut child_state = state;
            if state == Ordering::Equal {
                if let Some(best) = &self.best {
                    child_state = trace.cmp(&best.path[depth]);
                    if child_state == Ordering::Less {
                        continue;
                    }
                }
            }
            self.path.push(trace);
            self.prefix.push(v);
            self.descend(child, child_state);
            self.prefix.pop();
            self.path.pop();
        }
    }

    fn leaf(&mut self, cells: &[u64], state: Ordering) {
        let n = self.g.order();
        let mut perm = vec![0usize; n];
        for (pos, &c) in cells.iter().enumerate() {
            perm[c.trailing_zeros() as usize] = pos;
        }
        let mut rows = vec![0u64; n];
        for (v, &row) in self.g.rows().iter().enumerate() {
            rows[perm[v]] = bits(row).fold(0, |acc, u| acc | bit(n - 1 - perm[u]));
        }
        let order = match (&self.best, state) {
            (None, _) => Ordering::Greater,
            (Some(_), Ordering::Greater) => Ordering::Greater,
            (Some(best), _) => rows.cmp(&best.rows),
        };
        match order {
            Ordering::Greater => {
                self.best = Some(Leaf {
                    path: self.path.clone(),
                    rows,
                    perm,
                });
            }
            Ordering::Equal => {
                // Same relabeled graph: best.perm^-1 . perm is an automorphism.
                let best = self.best.as_ref().unwrap();
                let mut inv = vec![0; n];
                for (v, &p) in best.perm.iter().enumerate() {
                    inv[p] = v;
                }
                let auto: Vec<usize> = perm.iter().map(|&p| inv[p]).collect();
                if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                    self.automorphisms.push(auto);
                }
            }
            Ordering::Less => {}
        }
    }

    /// Orbit of `v` inside `cell` under stored automorphisms fixing the
    /// current prefix pointwise.
    fn orbit_of(&self, v: usize, cell: u64) -> u64 {
        let usable: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|a| self.prefix.iter().all(|&p| a[p] == p))
            .collect();
        if usable.is_empty() {
            return bit(v);
        }
        let mut orbit = bit(v);
        let mut frontier = bit(v);
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                for a in &usable {
                    next |= bit(a[u]);
                }
            }
            next &= !orbit;
            orbit |= next;
            frontier = next;
        }
        orbit & cell
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn relabeled_cycles_share_a_code() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn distinguishes_claw_and_path() {
        assert_ne!(canonical_form(&star(3)), canonical_form(&path(4)));
        assert!(!are_isomorphic(&diamond(), &cycle(4)));
        assert!(are_isomorphic(&complete(4), &complete(4)));
    }

    #[test]
    fn isomorphism_map_is_valid() {
        let g = petersen();
        let perm = [3, 7, 1, 0, 9, 2, 8, 6, 5, 4];
        let h = g.relabel(&perm);
        let map = isomorphism(&g, &h).unwrap();
        assert!(is_isomorphism(&g, &h, &map));
        assert!(isomorphism(&g, &complete(10)).is_none());
    }

    #[test]
    fn symmetric_graphs_finish() {
        for g in [
            complete(12),
            star(20),
            cycle(30),
            Graph::empty(40).unwrap(),
            octahedron(),
        ] {
            let c = canonical_form(&g);
            assert_eq!(c.graph().edge_count(), g.edge_count());
        }
    }
}
