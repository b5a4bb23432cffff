//! Star-criticality of vertices and graphs.
//!
//! A vertex is star-critical when deleting it changes the star graph up to
//! isomorphism. For a critical vertex the evidence names how the change
//! happens; for a non-critical one it is an explicit isomorphism between the
//! two star graphs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::augment::augmentations;
use crate::canon::{canonical_form, is_isomorphism, isomorphism};
use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph};
use crate::stars::{count_maximal_stars, maximal_stars, star_graph, MaximalStar};

/// Why deleting a vertex changes the star graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CriticalEvidence {
    /// `|S(H)| ≠ |S(H − v)|`.
    StarCountChanged { before: usize, after: usize },
    /// A maximal star through `v` loses maximality (or stops being a star)
    /// once `v` is gone. `star` indexes the star list of `H`.
    StarAbsorbed { star: usize },
    /// Two maximal stars of `H` meet exactly in `v`.
    EdgeLost { a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum VertexCriticality {
    Critical {
        evidence: Vec<CriticalEvidence>,
    },
    /// `map[a]` is the vertex of `S(H − v)` matched to vertex `a` of `S(H)`.
    NonCritical {
        map: Vec<usize>,
    },
}

impl VertexCriticality {
    pub fn is_critical(&self) -> bool {
        matches!(self, VertexCriticality::Critical { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub order: usize,
    pub critical: Vec<usize>,
    pub non_critical: Vec<usize>,
    pub vertices: Vec<VertexCriticality>,
}

impl CriticalityReport {
    pub fn is_star_critical(&self) -> bool {
        self.non_critical.is_empty()
    }
}

/// Classify `v`. Vertex ids in `S(H − v)` follow the relabeling of
/// [`Graph::remove_vertex`].
pub fn is_vertex_star_critical(h: &Graph, v: usize) -> Result<VertexCriticality> {
    if v >= h.order() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: h.order(),
        });
    }
    let full = star_graph(h)?;
    Ok(classify_vertex(h, &full.star_of_vertex, &full.graph, v))
}

fn classify_vertex(h: &Graph, stars: &[MaximalStar], sg: &Graph, v: usize) -> VertexCriticality {
    let reduced = h.remove_vertex(v);
    let Ok(reduced_sg) = star_graph(&reduced) else {
        // More than 62 stars after deletion means the count changed.
        return VertexCriticality::Critical {
            evidence: vec![CriticalEvidence::StarCountChanged {
                before: stars.len(),
                after: count_maximal_stars(&reduced),
            }],
        };
    };
    if let Some(map) = isomorphism(sg, &reduced_sg.graph) {
        return VertexCriticality::NonCritical { map };
    }
    let mut evidence = Vec::new();
    if stars.len() != reduced_sg.star_of_vertex.len() {
        evidence.push(CriticalEvidence::StarCountChanged {
            before: stars.len(),
            after: reduced_sg.star_of_vertex.len(),
        });
    }
    let reduced_sets: Vec<u64> = reduced_sg
        .star_of_vertex
        .iter()
        .map(|s| s.vertex_set())
        .collect();
    for (i, s) in stars.iter().enumerate() {
        if s.vertex_set() & bit(v) != 0 && !survives(s, v, &reduced_sets) {
            evidence.push(CriticalEvidence::StarAbsorbed { star: i });
        }
    }
    for a in 0..stars.len() {
        for b in a + 1..stars.len() {
            if stars[a].vertex_set() & stars[b].vertex_set() == bit(v) {
                evidence.push(CriticalEvidence::EdgeLost { a, b });
            }
        }
    }
    VertexCriticality::Critical { evidence }
}

/// Whether `s − v` is a maximal star of `H − v`, given the star vertex sets
/// of `H − v` in its own labels.
fn survives(s: &MaximalStar, v: usize, reduced_sets: &[u64]) -> bool {
    let rest = s.vertex_set() & !bit(v);
    if s.center == v || rest.count_ones() < 2 {
        return false;
    }
    let shifted = squeeze(rest, v);
    reduced_sets.contains(&shifted)
}

/// Relabel a mask of `H` (not containing `v`) into `H − v`.
fn squeeze(mask: u64, v: usize) -> u64 {
    let low = bit(v) - 1;
    (mask & low) | ((mask & !low & !bit(v)) >> 1)
}

/// Re-derive the evidence of one vertex from scratch; true when it checks out.
pub fn validate_vertex(h: &Graph, v: usize, claim: &VertexCriticality) -> bool {
    let Ok(full) = star_graph(h) else {
        return false;
    };
    let reduced = h.remove_vertex(v);
    match claim {
        VertexCriticality::NonCritical { map } => match star_graph(&reduced) {
            Ok(r) => is_isomorphism(&full.graph, &r.graph, map),
            Err(_) => false,
        },
        VertexCriticality::Critical { evidence } => {
            let reduced_stars = maximal_stars(&reduced);
            if evidence.is_empty() {
                return false;
            }
            let reduced_sets: Vec<u64> = reduced_stars.iter().map(|s| s.vertex_set()).collect();
            let ok = evidence.iter().all(|e| match *e {
                CriticalEvidence::StarCountChanged { before, after } => {
                    before == full.star_of_vertex.len()
                        && after == reduced_stars.len()
                        && before != after
                }
                CriticalEvidence::StarAbsorbed { star } => {
                    full.star_of_vertex.get(star).is_some_and(|s| {
                        s.vertex_set() & bit(v) != 0 && !survives(s, v, &reduced_sets)
                    })
                }
                CriticalEvidence::EdgeLost { a, b } => {
                    let s = &full.star_of_vertex;
                    a < s.len() && b < s.len() && s[a].vertex_set() & s[b].vertex_set() == bit(v)
                }
            });
            let reduced_sg = crate::stars::intersection_graph(&reduced_stars);
            ok && reduced_sg.map_or(true, |g| !crate::canon::are_isomorphic(&full.graph, &g))
        }
    }
}

/// Classify every vertex of `h`. Vertices are checked in parallel; the report
/// is ordered by vertex.
pub fn is_star_critical(h: &Graph) -> Result<CriticalityReport> {
    let full = star_graph(h)?;
    let vertices: Vec<VertexCriticality> = (0..h.order())
        .into_par_iter()
        .map(|v| classify_vertex(h, &full.star_of_vertex, &full.graph, v))
        .collect();
    let critical = (0..h.order())
        .filter(|&v| vertices[v].is_critical())
        .collect();
    let non_critical = (0..h.order())
        .filter(|&v| !vertices[v].is_critical())
        .collect();
    Ok(CriticalityReport {
        order: h.order(),
        critical,
        non_critical,
        vertices,
    })
}

/// Lowest-index vertex of `h` that is not star-critical, given `|S(h)| = k`.
/// Skips evidence construction; used on hot paths.
pub fn first_non_critical(h: &Graph, k: usize) -> Option<usize> {
    let mut reference = None;
    for v in 0..h.order() {
        let reduced = h.remove_vertex(v);
        if count_maximal_stars(&reduced) != k {
            continue;
        }
        let code = reference
            .get_or_insert_with(|| canonical_form(&star_graph(h).expect("k stars fit").graph));
        let rg = star_graph(&reduced).expect("k stars fit").graph;
        if canonical_form(&rg) == *code {
            return Some(v);
        }
    }
    None
}

/// Whether every vertex of `h` (which has `k` maximal stars) is star-critical.
pub fn all_critical(h: &Graph, k: usize) -> bool {
    first_non_critical(h, k).is_none()
}

/// Repeatedly delete the lowest-indexed non-critical vertex until the graph
/// is star-critical.
pub fn critical_core(h: &Graph) -> Result<Graph> {
    if !h.is_connected() {
        return Err(Error::Precondition(
            "critical_core expects a connected graph".into(),
        ));
    }
    let mut g = h.clone();
    loop {
        let k = count_maximal_stars(&g);
        if k > crate::graph::MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "{k} maximal stars exceed the vertex limit"
            )));
        }
        match first_non_critical(&g, k) {
            Some(v) => g = g.remove_vertex(v),
            None => return Ok(g),
        }
    }
}

/// Size facts for a star-critical graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    /// `(3k² − k) / 2`.
    pub bound: usize,
    pub holds: bool,
    /// The stated bound fails only for `k = 1` (`K2`); `(3k² − k)/2 + k`
    /// covers it.
    pub corrected_bound: usize,
    pub corrected_holds: bool,
    pub k1_anomaly: bool,
    pub has_simplicial: bool,
    /// `|V| ≤ |S|`, reported when there are no simplicial vertices.
    pub no_simplicial_bound_holds: Option<bool>,
    /// `|V| ≤ 2|S|`, reported when every simplicial vertex is a leaf.
    pub leaf_simplicial_bound_holds: Option<bool>,
}

pub fn bound_report(h: &Graph) -> Result<BoundReport> {
    let k = count_maximal_stars(h);
    if first_non_critical(h, k).is_some() {
        return Err(Error::Precondition(
            "bound_report expects a star-critical graph".into(),
        ));
    }
    let n = h.order();
    let bound = (3 * k * k).saturating_sub(k) / 2;
    let corrected_bound = bound + k;
    let simplicial = h.simplicial_vertices();
    let has_simplicial = simplicial != 0;
    let only_leaves = has_simplicial && bits(simplicial).all(|v| h.degree(v) == 1);
    Ok(BoundReport {
        n,
        k,
        bound,
        holds: n <= bound,
        corrected_bound,
        corrected_holds: n <= corrected_bound,
        k1_anomaly: k == 1 && n > bound,
        has_simplicial,
        no_simplicial_bound_holds: (!has_simplicial).then_some(n <= k),
        leaf_simplicial_bound_holds: only_leaves.then_some(n <= 2 * k),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityOutcome {
    pub holds: bool,
    pub checked: usize,
    pub counterexample: Option<Graph>,
}

/// Every augmentation of a graph with a non-critical vertex either has a
/// non-critical vertex or at least one more maximal star.
pub fn monotonicity_check(h: &Graph) -> Result<MonotonicityOutcome> {
    let k = count_maximal_stars(h);
    if first_non_critical(h, k).is_none() {
        return Err(Error::Precondition(
            "monotonicity_check expects a graph with a non-critical vertex".into(),
        ));
    }
    let children = augmentations(h)?;
    for child in &children {
        let kc = count_maximal_stars(child);
        if kc > k {
            continue;
        }
        if kc <= crate::graph::MAX_VERTICES && first_non_critical(child, kc).is_some() {
            continue;
        }
        return Ok(MonotonicityOutcome {
            holds: false,
            checked: children.len(),
            counterexample: Some(child.clone()),
        });
    }
    Ok(MonotonicityOutcome {
        holds: true,
        checked: children.len(),
        counterexample: None,
    })
}
