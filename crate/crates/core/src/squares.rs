//! Graph powers and the triangle-free link between stars and squares.

use serde::Serialize;

use crate::canon::are_isomorphic;
use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph, Length, MAX_VERTICES};
use crate::stars::star_graph;

/// `g^k`: same vertices, `uv` an edge iff `1 ≤ dist(u, v) ≤ k`.
pub fn graph_power(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Precondition("power must be at least 1".into()));
    }
    let rows = (0..g.order())
        .map(|s| {
            let mut seen = bit(s);
            let mut frontier = bit(s);
            for _ in 0..k {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= g.neighbors(v);
                }
                next &= !seen;
                if next == 0 {
                    break;
                }
                seen |= next;
                frontier = next;
            }
            seen & !bit(s)
        })
        .collect();
    Graph::from_rows(rows)
}

pub fn girth(g: &Graph) -> Length {
    g.girth()
}

/// Outcome of comparing `S(h)` with `h[D]²`.
#[derive(Clone, Debug, Serialize)]
pub struct TriangleFreeIdentity {
    pub holds: bool,
    /// Vertices of degree at least two.
    pub d: Vec<usize>,
    pub star_graph: Graph,
    pub square: Graph,
}

/// Check `S(h) ≃ h[D]²` for a connected triangle-free `h` on at least three
/// vertices, where `D` is the set of vertices of degree at least two. Both
/// sides are recomputed; a mismatch is reported, not assumed away.
pub fn triangle_free_identity(h: &Graph) -> Result<TriangleFreeIdentity> {
    if h.order() < 3 {
        return Err(Error::Precondition("need at least 3 vertices".into()));
    }
    if h.contains_triangle() {
        return Err(Error::Precondition("graph contains a triangle".into()));
    }
    if !h.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    let d_mask = (0..h.order())
        .filter(|&v| h.degree(v) >= 2)
        .fold(0u64, |m, v| m | bit(v));
    let square = graph_power(&h.induced(d_mask), 2)?;
    let sg = star_graph(h)?.graph;
    Ok(TriangleFreeIdentity {
        holds: are_isomorphic(&sg, &square),
        d: bits(d_mask).collect(),
        star_graph: sg,
        square,
    })
}

/// `h` plus a pendant vertex `n + v` on every vertex `v`.
pub fn pendant_extension(h: &Graph) -> Result<Graph> {
    let n = h.order();
    if n == 0 {
        return Err(Error::Precondition("need at least one vertex".into()));
    }
    if 2 * n > MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "pendant extension of {n} vertices needs {} > {MAX_VERTICES}",
            2 * n
        )));
    }
    let mut g = Graph::empty(2 * n)?;
    for (u, v) in h.edges() {
        g.add_edge(u, v);
    }
    for v in 0..n {
        g.add_edge(v, n + v);
    }
    Ok(g)
}
