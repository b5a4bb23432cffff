//! Star-partitioned edge clique covers.
//!
//! Clique `i` of a cover stands for a vertex `v_i` of a pre-image and is
//! split into a center part (stars centered at `v_i`) and a leaf part (stars
//! having `v_i` as a leaf). A cover certifies a star graph when it is an edge
//! clique cover that is star-compatible and star-differentiable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph, MAX_VERTICES};
use crate::stars::{star_graph, StarGraphResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverClique {
    pub center: u64,
    pub leaf: u64,
}

impl CoverClique {
    #[inline]
    pub fn all(&self) -> u64 {
        self.center | self.leaf
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarPartitionedCover {
    /// Order of the graph the cover refers to.
    pub order: usize,
    pub cliques: Vec<CoverClique>,
}

impl StarPartitionedCover {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// `cf(i, j)`: center-leaf intersection.
    #[inline]
    pub fn cf(&self, i: usize, j: usize) -> u64 {
        let (a, b) = (&self.cliques[i], &self.cliques[j]);
        (a.center & b.leaf) | (a.leaf & b.center)
    }

    /// `ff(i, j)`: leaf-leaf intersection.
    #[inline]
    pub fn ff(&self, i: usize, j: usize) -> u64 {
        self.cliques[i].leaf & self.cliques[j].leaf
    }

    /// Clique indices whose center part holds `a`.
    pub fn centers_of(&self, a: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.cliques[i].center & bit(a) != 0)
            .collect()
    }

    /// `F(a)`.
    pub fn leaf_set(&self, a: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.cliques[i].leaf & bit(a) != 0)
            .collect()
    }

    /// `Q(a)`: every clique containing `a`.
    pub fn cover_of(&self, a: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.cliques[i].all() & bit(a) != 0)
            .collect()
    }
}

/// Which condition a witness refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Cover,
    CompatCenter,
    CompatCfff,
    #[serde(rename = "diff-1")]
    Diff1,
    #[serde(rename = "diff-2")]
    Diff2,
    #[serde(rename = "diff-3")]
    Diff3,
    #[serde(rename = "diff-4")]
    Diff4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub condition: Condition,
    pub cliques: Vec<usize>,
    pub vertices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverVerdict {
    pub is_cover: bool,
    pub is_compatible: bool,
    pub is_differentiable: bool,
    /// At most `(3n² − n) / 2` cliques.
    pub within_size_bound: bool,
    pub witness: Option<Witness>,
}

impl CoverVerdict {
    pub fn is_valid(&self) -> bool {
        self.is_cover && self.is_compatible && self.is_differentiable
    }
}

/// One clique per vertex of `h` that lies in some maximal star.
pub fn extract_cover(h: &Graph) -> Result<(StarPartitionedCover, StarGraphResult)> {
    let sg = star_graph(h)?;
    let mut cliques = Vec::new();
    for v in 0..h.order() {
        let mut center = 0u64;
        let mut leaf = 0u64;
        for (a, s) in sg.star_of_vertex.iter().enumerate() {
            if s.center == v {
                center |= bit(a);
            } else if s.leaves & bit(v) != 0 {
                leaf |= bit(a);
            }
        }
        if center | leaf != 0 {
            cliques.push(CoverClique { center, leaf });
        }
    }
    Ok((
        StarPartitionedCover {
            order: sg.graph.order(),
            cliques,
        },
        sg,
    ))
}

/// `v_i ~ v_j` iff `cf(i, j) ≠ ∅`.
pub fn reconstruct_preimage(q: &StarPartitionedCover) -> Result<Graph> {
    let m = q.len();
    if m > MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "{m} cliques exceed the {MAX_VERTICES}-vertex limit"
        )));
    }
    let mut h = Graph::empty(m)?;
    for i in 0..m {
        for j in i + 1..m {
            if q.cf(i, j) != 0 {
                h.add_edge(i, j);
            }
        }
    }
    Ok(h)
}

/// No two vertices have nested clique sets `Q(a) ⊆ Q(a')`.
pub fn covers_nonnested(q: &StarPartitionedCover) -> bool {
    let sets: Vec<Vec<usize>> = (0..q.order).map(|a| q.cover_of(a)).collect();
    let subset = |x: &[usize], y: &[usize]| x.iter().all(|i| y.contains(i));
    for a in 0..q.order {
        for b in a + 1..q.order {
            if subset(&sets[a], &sets[b]) || subset(&sets[b], &sets[a]) {
                return false;
            }
        }
    }
    true
}

fn witness(
    condition: Condition,
    cliques: Vec<usize>,
    vertices: Vec<usize>,
    detail: impl Into<String>,
) -> Witness {
    Witness {
        condition,
        cliques,
        vertices,
        detail: detail.into(),
    }
}

/// Check the cover, compatibility and differentiability conditions. The
/// witness names the first failure in scan order: cover, then
/// compatibility, then differentiability by `(i, a, a')`.
pub fn verify_cover(g: &Graph, q: &StarPartitionedCover) -> Result<CoverVerdict> {
    let n = g.order();
    if q.order != n {
        return Err(Error::Input(format!(
            "cover is for {} vertices, graph has {n}",
            q.order
        )));
    }
    let all = g.vertex_mask();
    for (i, c) in q.cliques.iter().enumerate() {
        if c.all() & !all != 0 {
            let bad = (c.all() & !all).trailing_zeros() as usize;
            return Err(Error::Input(format!(
                "clique {i} names vertex {bad}, graph has {n} vertices"
            )));
        }
    }
    let (is_cover, w_cover) = check_cover(g, q);
    let (is_compatible, w_compat) = check_compatibility(q);
    let (is_differentiable, w_diff) = check_differentiability(q);
    let witness = w_cover.or(w_compat).or(w_diff);
    Ok(CoverVerdict {
        is_cover,
        is_compatible,
        is_differentiable,
        within_size_bound: 2 * q.len() <= (3 * n * n).saturating_sub(n),
        witness,
    })
}

fn check_cover(g: &Graph, q: &StarPartitionedCover) -> (bool, Option<Witness>) {
    let mut first = None;
    let mut ok = true;
    for (i, c) in q.cliques.iter().enumerate() {
        if c.center & c.leaf != 0 {
            ok = false;
            let a = (c.center & c.leaf).trailing_zeros() as usize;
            first.get_or_insert_with(|| {
                witness(Condition::Cover, vec![i], vec![a], "vertex in both parts")
            });
        } else if !g.is_clique(c.all()) {
            ok = false;
            let (a, b) = bits(c.all())
                .flat_map(|a| bits(c.all()).map(move |b| (a, b)))
                .find(|&(a, b)| a < b && !g.has_edge(a, b))
                .unwrap();
            first.get_or_insert_with(|| {
                witness(Condition::Cover, vec![i], vec![a, b], "not a clique")
            });
        }
    }
    for (a, b) in g.edges() {
        let pair = bit(a) | bit(b);
        if !q.cliques.iter().any(|c| c.all() & pair == pair) {
            ok = false;
            first.get_or_insert_with(|| {
                witness(Condition::Cover, vec![], vec![a, b], "edge not covered")
            });
        }
    }
    (ok, first)
}

fn check_compatibility(q: &StarPartitionedCover) -> (bool, Option<Witness>) {
    let mut first = None;
    let mut ok = true;
    for a in 0..q.order {
        let centers = q.centers_of(a);
        let cover = q.cover_of(a);
        if centers.len() != 1 {
            ok = false;
            first.get_or_insert_with(|| {
                witness(
                    Condition::CompatCenter,
                    centers.clone(),
                    vec![a],
                    format!("{} center cliques", centers.len()),
                )
            });
        } else if cover.len() < 2 {
            ok = false;
            first.get_or_insert_with(|| {
                witness(
                    Condition::CompatCenter,
                    cover.clone(),
                    vec![a],
                    "|Q(a)| < 2",
                )
            });
        }
    }
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            if q.cliques[i].all() & q.cliques[j].all() == 0 {
                continue;
            }
            let (cf, ff) = (q.cf(i, j), q.ff(i, j));
            if cf != 0 && ff != 0 {
                ok = false;
                first.get_or_insert_with(|| {
                    let verts = vec![cf.trailing_zeros() as usize, ff.trailing_zeros() as usize];
                    witness(
                        Condition::CompatCfff,
                        vec![i, j],
                        verts,
                        "cf and ff both nonempty",
                    )
                });
            }
        }
    }
    (ok, first)
}

fn check_differentiability(q: &StarPartitionedCover) -> (bool, Option<Witness>) {
    let m = q.len();
    // c(a): lowest center clique, if any.
    let center: Vec<Option<usize>> = (0..q.order)
        .map(|a| q.centers_of(a).first().copied())
        .collect();
    let cf: Vec<Vec<u64>> = (0..m)
        .map(|i| (0..m).map(|j| q.cf(i, j)).collect())
        .collect();
    let ff: Vec<Vec<u64>> = (0..m)
        .map(|i| (0..m).map(|j| q.ff(i, j)).collect())
        .collect();
    let leaf_sets: Vec<Vec<usize>> = (0..q.order).map(|a| q.leaf_set(a)).collect();
    let in_leaf = |a: usize, i: usize| q.cliques[i].leaf & bit(a) != 0;

    for i in 0..m {
        let clique = q.cliques[i];
        for a in bits(clique.all()) {
            for a2 in bits(clique.all()) {
                if a == a2 {
                    continue;
                }
                let a_center_here = clique.center & bit(a) != 0;
                let a2_center_here = clique.center & bit(a2) != 0;
                if a_center_here && a2_center_here {
                    if a > a2 {
                        continue;
                    }
                    // exists j, k with a ∈ Qf_j \ Qf_k, a' ∈ Qf_k \ Qf_j, cf(j,k) ≠ ∅,
                    // and (Qc_i ∩ Qf_j ∩ Qf_k = ∅ ⇒ cf(j,k) ≠ ∅).
                    let found = leaf_sets[a].iter().any(|&j| {
                        leaf_sets[a2].iter().any(|&k| {
                            let exists = !in_leaf(a, k) && !in_leaf(a2, j) && cf[j][k] != 0;
                            let conditional = clique.center & ff[j][k] != 0 || cf[j][k] != 0;
                            exists && conditional
                        })
                    });
                    if !found {
                        return (
                            false,
                            Some(witness(
                                Condition::Diff1,
                                vec![i],
                                vec![a, a2],
                                "no distinguishing adjacent leaves",
                            )),
                        );
                    }
                } else if a_center_here {
                    let Some(k) = center[a2] else { continue };
                    if k == i {
                        continue;
                    }
                    if !in_leaf(a, k) {
                        let q_a2 = q.cover_of(a2);
                        let exists = leaf_sets[a]
                            .iter()
                            .any(|&j| cf[j][k] != 0 && !q_a2.contains(&j));
                        let mut meet = clique.center;
                        for &j in &leaf_sets[a] {
                            if cf[j][k] == 0 {
                                meet &= ff[j][k];
                            }
                        }
                        let any_empty = leaf_sets[a].iter().any(|&j| cf[j][k] == 0);
                        if !exists || (any_empty && meet == 0) {
                            let detail = if !exists {
                                "no leaf clique j with cf(j,k) nonempty outside Q(a')"
                            } else {
                                "center part misses the common leaf-leaf intersection"
                            };
                            return (
                                false,
                                Some(witness(Condition::Diff2, vec![i, k], vec![a, a2], detail)),
                            );
                        }
                    } else {
                        let bad = leaf_sets[a].iter().find(|&&j| j != k && cf[j][k] != 0);
                        if let Some(&j) = bad {
                            return (
                                false,
                                Some(witness(
                                    Condition::Diff3,
                                    vec![i, j, k],
                                    vec![a, a2],
                                    "cf(j,k) nonempty",
                                )),
                            );
                        }
                    }
                } else if !a2_center_here {
                    if a > a2 {
                        continue;
                    }
                    let (Some(j), Some(k)) = (center[a], center[a2]) else {
                        continue;
                    };
                    if j == k {
                        continue;
                    }
                    if clique.center & ff[j][k] == 0 && cf[j][k] == 0 {
                        return (
                            false,
                            Some(witness(
                                Condition::Diff4,
                                vec![i, j, k],
                                vec![a, a2],
                                "centers neither linked nor sharing a leaf",
                            )),
                        );
                    }
                }
            }
        }
    }
    (true, None)
}

/// Re-evaluate the condition a witness names on the vertices and cliques it
/// cites; true when the violation is genuine.
pub fn witness_is_genuine(g: &Graph, q: &StarPartitionedCover, w: &Witness) -> bool {
    let single = StarPartitionedCover {
        order: q.order,
        cliques: q.cliques.clone(),
    };
    match w.condition {
        Condition::Cover => {
            if w.cliques.is_empty() {
                let (a, b) = (w.vertices[0], w.vertices[1]);
                let pair = bit(a) | bit(b);
                g.has_edge(a, b) && !q.cliques.iter().any(|c| c.all() & pair == pair)
            } else {
                let c = q.cliques[w.cliques[0]];
                c.center & c.leaf != 0 || !g.is_clique(c.all())
            }
        }
        Condition::CompatCenter => {
            let a = w.vertices[0];
            single.centers_of(a).len() != 1 || single.cover_of(a).len() < 2
        }
        Condition::CompatCfff => {
            let (i, j) = (w.cliques[0], w.cliques[1]);
            q.cf(i, j) != 0 && q.ff(i, j) != 0
        }
        _ => !check_differentiability(q).0,
    }
}

// ----------------------------------------------------------------------
// JSON
// ----------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CliqueJson {
    center: Vec<usize>,
    leaf: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CoverJson {
    graph: String,
    cliques: Vec<CliqueJson>,
}

/// `{"graph": "<graph6>", "cliques": [{"center": [...], "leaf": [...]}, ...]}`
pub fn cover_to_json(g: &Graph, q: &StarPartitionedCover) -> String {
    let doc = CoverJson {
        graph: g.to_graph6(),
        cliques: q
            .cliques
            .iter()
            .map(|c| CliqueJson {
                center: bits(c.center).collect(),
                leaf: bits(c.leaf).collect(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn cover_from_json(text: &str) -> Result<(Graph, StarPartitionedCover)> {
    let doc: CoverJson =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("cover JSON: {e}")))?;
    let g = Graph::from_graph6(&doc.graph)?;
    let n = g.order();
    let mask = |list: &[usize]| -> Result<u64> {
        list.iter().try_fold(0u64, |m, &v| {
            if v >= n {
                Err(Error::VertexOutOfRange { vertex: v, n })
            } else {
                Ok(m | bit(v))
            }
        })
    };
    let cliques = doc
        .cliques
        .iter()
        .map(|c| {
            Ok(CoverClique {
                center: mask(&c.center)?,
                leaf: mask(&c.leaf)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((g, StarPartitionedCover { order: n, cliques }))
}
