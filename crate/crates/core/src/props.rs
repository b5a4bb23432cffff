//! Necessary properties of star graphs and bounds tying a pre-image to its
//! star graph.

use serde::Serialize;

use crate::canon::are_isomorphic;
use crate::critical::is_star_critical;
use crate::error::{Error, Result};
use crate::graph::{bit, bits, named, Graph, Length};
use crate::stars::{star_graph, StarGraphResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub order: usize,
    pub edges: usize,
    /// `None` below three vertices, where the property is not claimed.
    pub biconnected: Option<bool>,
    pub edges_in_triangles: Option<bool>,
    /// Edges with an endpoint of degree two.
    pub e2: usize,
    /// `|E₂| ≤ min(|V| − 1, 4|E|/7)`; `None` for the triangle and diamond.
    pub e2_bound_holds: Option<bool>,
}

impl PropertyReport {
    /// False when some applicable property fails.
    pub fn consistent(&self) -> bool {
        self.biconnected != Some(false)
            && self.edges_in_triangles != Some(false)
            && self.e2_bound_holds != Some(false)
    }
}

/// Check the necessary conditions on a candidate star graph.
pub fn check_star_graph_properties(g: &Graph) -> PropertyReport {
    let n = g.order();
    let big = n >= 3;
    let biconnected = big.then(|| g.is_connected() && g.cut_vertices() == 0);
    let edges_in_triangles =
        big.then(|| g.edges().all(|(u, v)| g.neighbors(u) & g.neighbors(v) != 0));
    let deg2: u64 = (0..n)
        .filter(|&v| g.degree(v) == 2)
        .fold(0, |m, v| m | bit(v));
    let e2 = g
        .edges()
        .filter(|&(u, v)| (bit(u) | bit(v)) & deg2 != 0)
        .count();
    let exempt =
        n < 3 || are_isomorphic(g, &named::complete(3)) || are_isomorphic(g, &named::diamond());
    let m = g.edge_count();
    let e2_bound_holds = (!exempt).then(|| e2 < n && 7 * e2 <= 4 * m);
    PropertyReport {
        order: n,
        edges: m,
        biconnected,
        edges_in_triangles,
        e2,
        e2_bound_holds,
    }
}

/// How a degree-two vertex of `S(h)` arises in `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DegreeTwoShape {
    /// Induced path `u v w z` with `u` a leaf, `N(v) = {u, w}`,
    /// `N(w) = {v, z}` and `N(z)` independent; the star is `v: u w`.
    PendingP4 {
        u: usize,
        v: usize,
        w: usize,
        z: usize,
    },
    /// Triangle `u v z` with `N[u] = N[v] = {u, v, z}` and no other edge
    /// inside `N(z)`; the star is the twin edge `u v`.
    TerminalTriangle { u: usize, v: usize, z: usize },
    /// Neither shape fits.
    Unexplained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTwoVertex {
    /// Vertex of the star graph.
    pub vertex: usize,
    pub shape: DegreeTwoShape,
    /// Some neighbor of the vertex has no other degree-two neighbor.
    pub neighbor_clause: bool,
}

/// Explain each degree-two vertex of `S(h)` by a local shape of `h`.
/// Requires `h` star-critical with a connected star graph other than the
/// diamond.
pub fn classify_degree_two(h: &Graph, result: &StarGraphResult) -> Result<Vec<DegreeTwoVertex>> {
    let g = &result.graph;
    if !g.is_connected() {
        return Err(Error::Precondition("star graph must be connected".into()));
    }
    if are_isomorphic(g, &named::diamond()) {
        return Err(Error::Precondition("the diamond is excluded".into()));
    }
    if !is_star_critical(h)?.is_star_critical() {
        return Err(Error::Precondition(
            "pre-image must be star-critical".into(),
        ));
    }
    let deg2: u64 = (0..g.order())
        .filter(|&a| g.degree(a) == 2)
        .fold(0, |m, a| m | bit(a));
    Ok(bits(deg2)
        .map(|a| {
            let star = &result.star_of_vertex[a];
            let neighbor_clause =
                bits(g.neighbors(a)).any(|b| g.neighbors(b) & deg2 & !bit(a) == 0);
            DegreeTwoVertex {
                vertex: a,
                shape: shape_of(h, star.center, star.leaves),
                neighbor_clause,
            }
        })
        .collect())
}

fn shape_of(h: &Graph, center: usize, leaves: u64) -> DegreeTwoShape {
    if leaves.count_ones() != 1 && leaves.count_ones() != 2 {
        return DegreeTwoShape::Unexplained;
    }
    let ls: Vec<usize> = bits(leaves).collect();
    if ls.len() == 1 {
        let (u, v) = (center, ls[0]);
        let closed = h.closed_neighbors(u);
        if closed.count_ones() == 3 && closed == h.closed_neighbors(v) {
            let z = (closed & !bit(u) & !bit(v)).trailing_zeros() as usize;
            let others = h.neighbors(z) & !bit(u) & !bit(v);
            if h.is_independent(others) {
                return DegreeTwoShape::TerminalTriangle { u, v, z };
            }
        }
        return DegreeTwoShape::Unexplained;
    }
    let v = center;
    for (u, w) in [(ls[0], ls[1]), (ls[1], ls[0])] {
        if h.degree(u) != 1 || h.neighbors(v) != bit(u) | bit(w) || h.degree(w) != 2 {
            continue;
        }
        let z = (h.neighbors(w) & !bit(v)).trailing_zeros() as usize;
        if h.is_independent(h.neighbors(z)) {
            return DegreeTwoShape::PendingP4 { u, v, w, z };
        }
    }
    DegreeTwoShape::Unexplained
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreimageBounds {
    pub n: usize,
    pub max_degree: usize,
    pub stars: usize,
    /// `|V(G)| ≤ n · 3^(Δ/3)`.
    pub mis_bound_holds: bool,
    pub diameter_h: Length,
    pub diameter_g: Length,
    /// `diam(G) ≤ ⌊diam(h)/2⌋ + 2`; `None` when `G` is complete.
    pub diameter_bound_holds: Option<bool>,
}

/// Compare `h` with its star graph against the size and diameter bounds.
pub fn check_preimage_bounds(h: &Graph) -> Result<PreimageBounds> {
    if !h.is_connected() || h.order() < 2 {
        return Err(Error::Precondition(
            "need a connected graph on at least 2 vertices".into(),
        ));
    }
    let g = star_graph(h)?.graph;
    let n = h.order();
    let delta = h.max_degree();
    let stars = g.order();
    // |V(G)|³ ≤ n³ · 3^Δ, exactly in integers
    let lhs = (stars as u128).pow(3);
    let rhs = (n as u128)
        .pow(3)
        .saturating_mul(3u128.saturating_pow(delta as u32));
    let complete = g.edge_count() * 2 == stars * stars.saturating_sub(1);
    let (dh, dg) = (h.diameter(), g.diameter());
    let diameter_bound_holds = (!complete).then(|| match (dh, dg) {
        (Length::Finite(a), Length::Finite(b)) => b <= a / 2 + 2,
        _ => false,
    });
    Ok(PreimageBounds {
        n,
        max_degree: delta,
        stars,
        mis_bound_holds: lhs <= rhs,
        diameter_h: dh,
        diameter_g: dg,
        diameter_bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn gem_properties() {
        let r = check_star_graph_properties(&gem());
        assert_eq!(r.biconnected, Some(true));
        assert_eq!(r.edges_in_triangles, Some(true));
        assert_eq!(r.e2, 4);
        assert_eq!(r.e2_bound_holds, Some(true));
        assert!(r.consistent());
    }

    #[test]
    fn c4_and_path_fail() {
        let c4 = check_star_graph_properties(&cycle(4));
        assert_eq!(c4.edges_in_triangles, Some(false));
        assert!(!c4.consistent());
        let p3 = check_star_graph_properties(&path(3));
        assert_eq!(p3.biconnected, Some(false));
        assert_eq!(check_star_graph_properties(&diamond()).e2_bound_holds, None);
        assert_eq!(
            check_star_graph_properties(&complete(3)).e2_bound_holds,
            None
        );
    }

    #[test]
    fn p7_degree_two() {
        let h = path(7);
        let sg = star_graph(&h).unwrap();
        let out = classify_degree_two(&h, &sg).unwrap();
        assert_eq!(out.len(), 2);
        for d in &out {
            assert!(matches!(d.shape, DegreeTwoShape::PendingP4 { .. }), "{d:?}");
            assert!(d.neighbor_clause);
        }
    }

    #[test]
    fn terminal_triangles() {
        let h = twin_triangles();
        let sg = star_graph(&h).unwrap();
        let out = classify_degree_two(&h, &sg).unwrap();
        assert!(!out.is_empty());
        assert!(out
            .iter()
            .all(|d| matches!(d.shape, DegreeTwoShape::TerminalTriangle { .. })));
    }

    #[test]
    fn diamond_excluded() {
        let h = path(6);
        let sg = star_graph(&h).unwrap();
        assert!(classify_degree_two(&h, &sg).is_err());
    }

    #[test]
    fn preimage_bounds() {
        let b = check_preimage_bounds(&twin_triangles()).unwrap();
        assert!(b.mis_bound_holds);
        assert_eq!(b.diameter_h, Length::Finite(3));
        assert_eq!(b.diameter_bound_holds, Some(true));
        let k3 = check_preimage_bounds(&complete(3)).unwrap();
        assert_eq!(k3.diameter_bound_holds, None);
        assert_eq!(
            check_preimage_bounds(&complete(4))
                .unwrap()
                .diameter_bound_holds,
            Some(true)
        );
        assert!(check_preimage_bounds(&Graph::empty(3).unwrap()).is_err());
    }
}
