//! Census of star-critical pre-images and star-graph recognition.
//!
//! Every star graph on `k` vertices is the star graph of a star-critical
//! connected graph with exactly `k` maximal stars. Those graphs are found by
//! growing connected graphs one vertex at a time from `K2`, discarding any
//! graph with more than `k` stars, and stopping at the first order where
//! graphs with exactly `k` stars exist but none of them is star-critical.
//!
//! Each level is kept as a sorted list of canonical graph6 codes, so results
//! do not depend on worker count or scheduling. Levels may be written to a
//! checkpoint directory and are reloaded from there on the next run.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, CanonicalCode};
use crate::critical::all_critical;
use crate::error::{Error, Result};
use crate::graph::{named::complete, Graph, MAX_VERTICES};
use crate::stars::{count_maximal_stars_bounded, star_graph};

/// Largest `k` run without [`CensusConfig::allow_large_k`].
pub const DEFAULT_K_LIMIT: usize = 8;

#[derive(Clone, Debug, Default)]
pub struct CensusConfig {
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    /// Deepest order explored; defaults to `2k + 3`.
    pub max_depth: Option<usize>,
    pub checkpoint_dir: Option<PathBuf>,
    pub allow_large_k: bool,
}

impl CensusConfig {
    fn depth_for(&self, k: usize) -> usize {
        self.max_depth.unwrap_or(2 * k + 3).min(MAX_VERTICES)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub n: usize,
    /// Connected `n`-vertex graphs with at most `k` stars.
    pub explored: usize,
    /// `|H_n(k)|`: those with exactly `k` stars.
    pub with_k_stars: usize,
    /// Star-critical members of `H_n(k)`.
    pub critical: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPreimage {
    pub graph: Graph,
    pub star_graph: CanonicalCode,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusResult {
    pub k: usize,
    pub levels: Vec<LevelSummary>,
    /// Star-critical pre-images in level order, sorted by code within a level.
    pub critical_preimages: Vec<CriticalPreimage>,
    /// Distinct star graphs on `k` vertices, sorted by canonical code.
    pub star_graphs: Vec<CanonicalCode>,
    /// Order at which the frontier closed; `None` if the depth guard hit first.
    pub terminated_at: Option<usize>,
}

impl CensusResult {
    pub fn complete(&self) -> bool {
        self.terminated_at.is_some()
    }

    pub fn total_critical(&self) -> usize {
        self.critical_preimages.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrontierStatus {
    pub k: usize,
    pub n: usize,
    pub explored: usize,
    pub with_k_stars: usize,
    pub critical: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    StarGraph,
    NotStarGraph,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `H_depth(k)` is nonempty and has no star-critical member, and no
    /// earlier level produced a matching pre-image.
    Frontier { depth: usize, with_k_stars: usize },
    /// Star graphs of connected graphs are connected.
    Disconnected,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecognitionOutcome {
    pub verdict: Verdict,
    pub preimage: Option<Graph>,
    pub certificate: Option<Certificate>,
    /// Deepest order examined.
    pub depth: usize,
}

/// Level-by-level explorer for a fixed `k`.
struct Explorer<'a> {
    k: usize,
    config: &'a CensusConfig,
    n: usize,
    level: Vec<CanonicalCode>,
}

struct Level {
    summary: LevelSummary,
    critical: Vec<Graph>,
}

impl<'a> Explorer<'a> {
    fn new(k: usize, config: &'a CensusConfig) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("k must be at least 1".into()));
        }
        if k > DEFAULT_K_LIMIT && !config.allow_large_k {
            return Err(Error::Precondition(format!(
                "k = {k} exceeds {DEFAULT_K_LIMIT}; set allow_large_k to run it"
            )));
        }
        if let Some(dir) = &config.checkpoint_dir {
            fs::create_dir_all(dir)?;
        }
        Ok(Explorer {
            k,
            config,
            n: 1,
            level: Vec::new(),
        })
    }

    fn path(&self, n: usize, suffix: &str) -> Option<PathBuf> {
        self.config
            .checkpoint_dir
            .as_ref()
            .map(|d| d.join(format!("census-k{}-n{}{}", self.k, n, suffix)))
    }

    /// Move to the next order and evaluate it.
    fn advance(&mut self) -> Result<Level> {
        let n = self.n + 1;
        let level_path = self.path(n, ".g6");
        let loaded = match &level_path {
            Some(p) if p.exists() => Some(read_codes(p)?),
            _ => None,
        };
        self.level = match loaded {
            Some(codes) => codes,
            None => {
                let codes = if n == 2 {
                    vec![canonical_form(&complete(2))]
                } else {
                    self.expand()
                };
                if let Some(p) = &level_path {
                    write_codes(p, &codes)?;
                }
                codes
            }
        };
        self.n = n;

        let k = self.k;
        let graphs: Vec<Graph> = self.level.iter().map(CanonicalCode::graph).collect();
        let exact: Vec<&Graph> = graphs
            .iter()
            .filter(|g| count_maximal_stars_bounded(g, k) == k)
            .collect();
        let crit_path = self.path(n, ".crit.g6");
        let critical: Vec<Graph> = match &crit_path {
            Some(p) if p.exists() => read_codes(p)?.iter().map(CanonicalCode::graph).collect(),
            _ => {
                let flags: Vec<bool> = exact.par_iter().map(|g| all_critical(g, k)).collect();
                let crit: Vec<Graph> = exact
                    .iter()
                    .zip(flags)
                    .filter(|(_, c)| *c)
                    .map(|(g, _)| (*g).clone())
                    .collect();
                if let Some(p) = &crit_path {
                    let codes: Vec<CanonicalCode> = crit.iter().map(canonical_form).collect();
                    write_codes(p, &codes)?;
                }
                crit
            }
        };
        Ok(Level {
            summary: LevelSummary {
                n,
                explored: graphs.len(),
                with_k_stars: exact.len(),
                critical: critical.len(),
            },
            critical,
        })
    }

    /// Every connected one-vertex extension with at most `k` stars.
    fn expand(&self) -> Vec<CanonicalCode> {
        let k = self.k;
        let found: HashSet<CanonicalCode> = self
            .level
            .par_iter()
            .fold(HashSet::new, |mut acc, code| {
                let g = code.graph();
                for nbhd in 1..=g.vertex_mask() {
                    let child = g.with_vertex(nbhd).expect("depth below vertex limit");
                    if count_maximal_stars_bounded(&child, k) <= k {
                        acc.insert(canonical_form(&child));
                    }
                }
                acc
            })
            .reduce(HashSet::new, |mut a, b| {
                if a.len() < b.len() {
                    return b.into_iter().chain(a).collect();
                }
                a.extend(b);
                a
            });
        let mut codes: Vec<CanonicalCode> = found.into_iter().collect();
        codes.sort();
        codes
    }
}

fn read_codes(path: &Path) -> Result<Vec<CanonicalCode>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        Graph::from_graph6(line)
            .map_err(|e| Error::Input(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(CanonicalCode::from_trusted(line.to_string()));
    }
    out.sort();
    Ok(out)
}

fn write_codes(path: &Path, codes: &[CanonicalCode]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
        for c in codes {
            writeln!(f, "{c}")?;
        }
        f.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn with_pool<T: Send>(config: &CensusConfig, job: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match config.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?
            .install(job),
        None => job(),
    }
}

/// Run the census for `k` until the frontier closes or the depth guard hits.
pub fn census(k: usize, config: &CensusConfig) -> Result<CensusResult> {
    census_until(k, config, |_| false).map(|(r, _)| r)
}

/// Census that also stops as soon as `stop` accepts a star-critical graph;
/// returns that graph.
fn census_until(
    k: usize,
    config: &CensusConfig,
    stop: impl Fn(&CriticalPreimage) -> bool + Sync,
) -> Result<(CensusResult, Option<Graph>)> {
    with_pool(config, || {
        let mut ex = Explorer::new(k, config)?;
        let depth = config.depth_for(k);
        let mut result = CensusResult {
            k,
            levels: Vec::new(),
            critical_preimages: Vec::new(),
            star_graphs: Vec::new(),
            terminated_at: None,
        };
        let mut star_graphs = BTreeSet::new();
        while ex.n < depth {
            let level = ex.advance()?;
            let entries: Vec<CriticalPreimage> = level
                .critical
                .par_iter()
                .map(|g| CriticalPreimage {
                    graph: g.clone(),
                    star_graph: canonical_form(&star_graph(g).expect("k stars fit").graph),
                })
                .collect();
            let hit = entries.iter().find(|e| stop(e)).map(|e| e.graph.clone());
            star_graphs.extend(entries.iter().map(|e| e.star_graph.clone()));
            result.critical_preimages.extend(entries);
            let closed = level.summary.explored == 0
                || (level.summary.with_k_stars > 0 && level.summary.critical == 0);
            result.levels.push(level.summary);
            if hit.is_some() {
                result.star_graphs = star_graphs.into_iter().collect();
                return Ok((result, hit));
            }
            if closed {
                result.terminated_at = Some(ex.n);
                break;
            }
        }
        result.star_graphs = star_graphs.into_iter().collect();
        Ok((result, None))
    })
}

/// Level statistics at order `n`, exploring past the frontier if needed.
pub fn frontier_status(k: usize, n: usize, config: &CensusConfig) -> Result<FrontierStatus> {
    if n < 2 {
        return Err(Error::Precondition("levels start at n = 2".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::Capacity(format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    with_pool(config, || {
        let mut ex = Explorer::new(k, config)?;
        loop {
            let level = ex.advance()?;
            if ex.n == n {
                let s = level.summary;
                return Ok(FrontierStatus {
                    k,
                    n,
                    explored: s.explored,
                    with_k_stars: s.with_k_stars,
                    critical: s.critical,
                });
            }
        }
    })
}

/// Decide whether `g` is a star graph by running the census for
/// `k = |V(g)|`. The pre-image returned is the first star-critical match in
/// census order.
pub fn find_preimage(g: &Graph, config: &CensusConfig) -> Result<RecognitionOutcome> {
    let k = g.order();
    if k == 0 {
        // the star graph of a single vertex has no vertices
        return Ok(RecognitionOutcome {
            verdict: Verdict::StarGraph,
            preimage: Some(Graph::empty(1)?),
            certificate: None,
            depth: 1,
        });
    }
    if !g.is_connected() {
        return Ok(RecognitionOutcome {
            verdict: Verdict::NotStarGraph,
            preimage: None,
            certificate: Some(Certificate::Disconnected),
            depth: 0,
        });
    }
    let target = canonical_form(g);
    let (result, hit) = census_until(k, config, |e| e.star_graph == target)?;
    let depth = result.levels.last().map_or(1, |l| l.n);
    Ok(match (hit, result.terminated_at) {
        (Some(h), _) => RecognitionOutcome {
            verdict: Verdict::StarGraph,
            preimage: Some(h),
            certificate: None,
            depth,
        },
        (None, Some(d)) => RecognitionOutcome {
            verdict: Verdict::NotStarGraph,
            preimage: None,
            certificate: Some(Certificate::Frontier {
                depth: d,
                with_k_stars: result.levels.last().map_or(0, |l| l.with_k_stars),
            }),
            depth,
        },
        (None, None) => RecognitionOutcome {
            verdict: Verdict::Inconclusive,
            preimage: None,
            certificate: None,
            depth,
        },
    })
}
