//! Command-line front end. `run` returns the process exit code: 0 on
//! success, 1 on a negative verdict, 2 on usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cover::{
    cover_from_json, cover_to_json, extract_cover, reconstruct_preimage, verify_cover,
};
use crate::critical::{bound_report, critical_core, is_star_critical, VertexCriticality};
use crate::error::Result;
use crate::graph::Graph;
use crate::props::{
    check_preimage_bounds, check_star_graph_properties, classify_degree_two, DegreeTwoShape,
};
use crate::recognition::{census, find_preimage, CensusConfig, Verdict};
use crate::squares::{graph_power, pendant_extension, triangle_free_identity};
use crate::stars::{iterated_star, maximal_stars, star_graph};

pub const CHECKPOINT_ENV: &str = "STARLAB_CHECKPOINT_DIR";

#[derive(Parser)]
#[command(
    name = "starlab",
    version,
    about = "Star graphs: maximal induced stars and their intersection graphs"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit graph results in DOT.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// graph6 string, or @path to a file holding one.
    graph: String,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    max_depth: Option<usize>,
    /// Permit k above 8.
    #[arg(long)]
    allow_large_k: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List the maximal stars, one per line as `center: leaves`.
    Stars(GraphArg),
    /// Star graph, optionally iterated.
    StarGraph {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
    /// k-th power.
    Power {
        #[command(flatten)]
        g: GraphArg,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Attach a pendant vertex to every vertex.
    Pendant(GraphArg),
    Girth(GraphArg),
    /// Compare S(h) with the square of its degree-two-or-more part.
    TriFreeCheck(GraphArg),
    /// Star-partitioned cover of S(h), as JSON.
    ExtractCover(GraphArg),
    /// Verify a cover given as JSON text or @file.
    CheckCover {
        cover: String,
    },
    /// Pre-image encoded by a cover.
    Reconstruct {
        cover: String,
    },
    /// Per-vertex star-criticality.
    Critical(GraphArg),
    /// Delete non-critical vertices until star-critical.
    Core(GraphArg),
    /// Size bound for a star-critical graph.
    Bounds(GraphArg),
    /// Enumerate star-critical pre-images with k stars.
    Census {
        #[arg(short = 'k')]
        k: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Decide whether a graph is a star graph.
    Recognize {
        #[command(flatten)]
        g: GraphArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Necessary properties of a star graph; with --preimage, bounds
    /// relating the given pre-image to its star graph.
    Props {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        preimage: bool,
    },
    /// Explain degree-two vertices of S(h) for a star-critical h.
    ClassifyDeg2(GraphArg),
}

enum Outcome {
    Ok,
    Negative,
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut buf = String::new();
    let result = dispatch(&cli, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Negative) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(arg.to_string()),
    }
}

fn parse_graph(arg: &GraphArg) -> Result<Graph> {
    let text = read_arg(&arg.graph)?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    Graph::from_graph6(line)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.order() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

fn emit_graph(cli: &Cli, g: &Graph, out: &mut String) {
    if cli.dot {
        out.push_str(&dot(g));
    } else if cli.json {
        out.push_str(&to_json(
            &serde_json::json!({ "graph": g.to_graph6(), "order": g.order() }),
        ));
    } else {
        let _ = writeln!(out, "{}", g.to_graph6());
    }
}

fn config(search: &SearchArgs) -> CensusConfig {
    let env = std::env::var_os(CHECKPOINT_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    CensusConfig {
        workers: search.workers,
        max_depth: search.max_depth,
        checkpoint_dir: env.or_else(|| search.checkpoint.clone()),
        allow_large_k: search.allow_large_k,
    }
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Ok
    } else {
        Outcome::Negative
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<Outcome> {
    match &cli.command {
        Command::Stars(g) => {
            let h = parse_graph(g)?;
            let stars = maximal_stars(&h);
            if cli.json {
                let list: Vec<_> = stars
                    .iter()
                    .map(|s| serde_json::json!({ "center": s.center, "leaves": s.leaf_list() }))
                    .collect();
                out.push_str(&to_json(&list));
            } else {
                for s in &stars {
                    let _ = writeln!(out, "{s}");
                }
            }
            Ok(Outcome::Ok)
        }
        Command::StarGraph { g, iterate } => {
            let h = parse_graph(g)?;
            let sg = if *iterate == 1 {
                star_graph(&h)?.graph
            } else {
                iterated_star(&h, *iterate)?
            };
            emit_graph(cli, &sg, out);
            Ok(Outcome::Ok)
        }
        Command::Power { g, k } => {
            emit_graph(cli, &graph_power(&parse_graph(g)?, *k)?, out);
            Ok(Outcome::Ok)
        }
        Command::Pendant(g) => {
            emit_graph(cli, &pendant_extension(&parse_graph(g)?)?, out);
            Ok(Outcome::Ok)
        }
        Command::Girth(g) => {
            let girth = parse_graph(g)?.girth();
            if cli.json {
                out.push_str(&to_json(&serde_json::json!({ "girth": girth })));
            } else {
                let _ = writeln!(out, "{girth}");
            }
            Ok(Outcome::Ok)
        }
        Command::TriFreeCheck(g) => {
            let r = triangle_free_identity(&parse_graph(g)?)?;
            if cli.json {
                out.push_str(&to_json(&r));
            } else {
                let _ = writeln!(out, "identity {}", if r.holds { "holds" } else { "fails" });
                let _ = writeln!(out, "D = {:?}", r.d);
                let _ = writeln!(out, "S(h)    = {}", r.star_graph.to_graph6());
                let _ = writeln!(out, "h[D]^2  = {}", r.square.to_graph6());
            }
            Ok(verdict(r.holds))
        }
        Command::ExtractCover(g) => {
            let (q, sg) = extract_cover(&parse_graph(g)?)?;
            let _ = writeln!(out, "{}", cover_to_json(&sg.graph, &q));
            Ok(Outcome::Ok)
        }
        Command::CheckCover { cover } => {
            let (g, q) = cover_from_json(&read_arg(cover)?)?;
            let v = verify_cover(&g, &q)?;
            if cli.json {
                out.push_str(&to_json(&v));
            } else {
                let _ = writeln!(out, "cover          {}", v.is_cover);
                let _ = writeln!(out, "compatible     {}", v.is_compatible);
                let _ = writeln!(out, "differentiable {}", v.is_differentiable);
                if let Some(w) = &v.witness {
                    let cond = serde_json::to_value(w.condition).expect("serializable");
                    let _ = writeln!(
                        out,
                        "witness {} cliques {:?} vertices {:?}: {}",
                        cond.as_str().unwrap_or_default(),
                        w.cliques,
                        w.vertices,
                        w.detail
                    );
                }
            }
            Ok(verdict(v.is_valid()))
        }
        Command::Reconstruct { cover } => {
            let (_, q) = cover_from_json(&read_arg(cover)?)?;
            emit_graph(cli, &reconstruct_preimage(&q)?, out);
            Ok(Outcome::Ok)
        }
        Command::Critical(g) => {
            let r = is_star_critical(&parse_graph(g)?)?;
            if cli.json {
                out.push_str(&to_json(&r));
            } else {
                for (v, c) in r.vertices.iter().enumerate() {
                    match c {
                        VertexCriticality::Critical { evidence } => {
                            let kind = serde_json::to_value(evidence).expect("serializable");
                            let _ = writeln!(
                                out,
                                "{v} critical {}",
                                kind["kind"].as_str().unwrap_or_default()
                            );
                        }
                        VertexCriticality::NonCritical { .. } => {
                            let _ = writeln!(out, "{v} non-critical");
                        }
                    }
                }
                let _ = writeln!(out, "star-critical: {}", r.is_star_critical());
            }
            Ok(verdict(r.is_star_critical()))
        }
        Command::Core(g) => {
            emit_graph(cli, &critical_core(&parse_graph(g)?)?, out);
            Ok(Outcome::Ok)
        }
        Command::Bounds(g) => {
            let r = bound_report(&parse_graph(g)?)?;
            if cli.json {
                out.push_str(&to_json(&r));
            } else {
                let _ = writeln!(out, "n = {}, k = {}, (3k^2 - k)/2 = {}", r.n, r.k, r.bound);
                let _ = writeln!(out, "bound holds: {}", r.holds);
                if r.k1_anomaly {
                    let _ = writeln!(
                        out,
                        "k = 1 anomaly; corrected bound {} holds: {}",
                        r.corrected_bound, r.corrected_holds
                    );
                }
            }
            Ok(verdict(r.holds || r.k1_anomaly))
        }
        Command::Census { k, search } => {
            let r = census(*k, &config(search))?;
            if cli.json {
                out.push_str(&to_json(&r));
            } else {
                let _ = writeln!(
                    out,
                    "{:>3} {:>10} {:>10} {:>8}",
                    "n", "explored", "k-stars", "critical"
                );
                for l in &r.levels {
                    let _ = writeln!(
                        out,
                        "{:>3} {:>10} {:>10} {:>8}",
                        l.n, l.explored, l.with_k_stars, l.critical
                    );
                }
                let _ = writeln!(out, "star-critical pre-images: {}", r.total_critical());
                let _ = writeln!(
                    out,
                    "star graphs on {} vertices: {}",
                    r.k,
                    r.star_graphs.len()
                );
                for code in &r.star_graphs {
                    let _ = writeln!(out, "  {code}");
                }
                match r.terminated_at {
                    Some(n) => {
                        let _ = writeln!(out, "frontier closed at n = {n}");
                    }
                    None => {
                        let _ = writeln!(out, "depth guard reached; census incomplete");
                    }
                }
            }
            Ok(verdict(r.complete()))
        }
        Command::Recognize { g, search } => {
            let r = find_preimage(&parse_graph(g)?, &config(search))?;
            if cli.json {
                out.push_str(&to_json(&r));
            } else {
                match r.verdict {
                    Verdict::StarGraph => {
                        let pre = r.preimage.as_ref().expect("star graphs carry a pre-image");
                        let _ = writeln!(out, "star graph; pre-image {}", pre.to_graph6());
                    }
                    Verdict::NotStarGraph => {
                        let _ = writeln!(out, "not a star graph");
                        let cert = serde_json::to_string(&r.certificate).expect("serializable");
                        let _ = writeln!(out, "certificate {cert}");
                    }
                    Verdict::Inconclusive => {
                        let _ =
                            writeln!(out, "inconclusive: depth guard reached at n = {}", r.depth);
                    }
                }
            }
            Ok(verdict(r.verdict == Verdict::StarGraph))
        }
        Command::Props { g, preimage } => {
            let h = parse_graph(g)?;
            if *preimage {
                let b = check_preimage_bounds(&h)?;
                if cli.json {
                    out.push_str(&to_json(&b));
                } else {
                    let _ = writeln!(out, "{:<18} {}", "stars", b.stars);
                    let _ = writeln!(out, "{:<18} {}", "mis bound", b.mis_bound_holds);
                    let _ = writeln!(
                        out,
                        "{:<18} {} -> {}",
                        "diameter", b.diameter_h, b.diameter_g
                    );
                    let _ = writeln!(
                        out,
                        "{:<18} {}",
                        "diameter bound",
                        show(b.diameter_bound_holds)
                    );
                }
                return Ok(verdict(
                    b.mis_bound_holds && b.diameter_bound_holds != Some(false),
                ));
            }
            let r = check_star_graph_properties(&h);
            if cli.json {
                out.push_str(&to_json(&r));
            } else {
                let _ = writeln!(out, "{:<18} {}", "biconnected", show(r.biconnected));
                let _ = writeln!(
                    out,
                    "{:<18} {}",
                    "edges in triangles",
                    show(r.edges_in_triangles)
                );
                let _ = writeln!(out, "{:<18} {}", "|E2|", r.e2);
                let _ = writeln!(out, "{:<18} {}", "E2 bound", show(r.e2_bound_holds));
            }
            Ok(verdict(r.consistent()))
        }
        Command::ClassifyDeg2(g) => {
            let h = parse_graph(g)?;
            let sg = star_graph(&h)?;
            let rows = classify_degree_two(&h, &sg)?;
            if cli.json {
                out.push_str(&to_json(&rows));
            } else {
                for r in &rows {
                    let shape = match r.shape {
                        DegreeTwoShape::PendingP4 { u, v, w, z } => {
                            format!("pending-p4 {u} {v} {w} {z}")
                        }
                        DegreeTwoShape::TerminalTriangle { u, v, z } => {
                            format!("terminal-triangle {u} {v} {z}")
                        }
                        DegreeTwoShape::Unexplained => "unexplained".into(),
                    };
                    let _ = writeln!(
                        out,
                        "{} {} neighbor-clause {}",
                        r.vertex, shape, r.neighbor_clause
                    );
                }
            }
            let total = rows.iter().all(|r| r.shape != DegreeTwoShape::Unexplained);
            Ok(verdict(total))
        }
    }
}

fn show(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}
