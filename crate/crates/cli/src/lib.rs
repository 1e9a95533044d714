//! Command-line front end.
//!
//! Disconnected inputs are split into connected components which are
//! processed independently: the graph has a robust MIS iff every component
//! has one, and witnesses are the union of per-component witnesses.

pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use rmis_core::classification::{classify, Evidence, RobustnessTag};
use rmis_core::construction::extract_rmis;
use rmis_core::decomposition::NodeKind;
use rmis_core::generate::{self, GenerateError, FIXTURE_COMPONENT_B_IDS};
use rmis_core::graph::VertexMap;
use rmis_core::labeling::{decide, Decision};
use rmis_core::oracle::{exists_rmis_bf, forall_rmis_bf, is_robust_mis, OracleError};
use rmis_core::{Graph, VertexSet};

use crate::format::{parse_graph, to_dimacs, to_edge_list, Document, Format, ParseError};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rmis", version, about = "Robust maximal independent sets")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Graph file, or `-` for standard input.
    file: PathBuf,
    /// Input format.
    #[arg(long, default_value = "auto", value_parser = parse_format)]
    format: Format,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print YES if the graph has a robust MIS, NO otherwise.
    Decide(Input),
    /// Print a robust MIS as sorted vertex ids, or NONE.
    Construct(Input),
    /// Check whether a given vertex set is a robust MIS.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertex ids.
        #[arg(long, allow_hyphen_values = true)]
        mis: String,
    },
    /// Print ALL_ROBUST, SOME_ROBUST or NONE_ROBUST with evidence.
    Classify(Input),
    /// Print the labeled decomposition tree.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force counterparts for small graphs.
    Oracle {
        #[arg(value_enum)]
        question: OracleQuestion,
        #[command(flatten)]
        input: Input,
    },
    /// Generate a graph family as an edge list.
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Emit DIMACS instead of an edge list.
        #[arg(long)]
        dimacs: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleQuestion {
    /// Some MIS is robust.
    Decide,
    /// Every MIS is robust.
    Forall,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Generate(#[from] GenerateError),
    #[error("{0}")]
    Oracle(OracleError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Oracle(e) if e.is_size_guard() => EXIT_REFUSED,
            CliError::Oracle(_) | CliError::Internal(_) => EXIT_NO,
            _ => EXIT_USAGE,
        }
    }
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_YES
            };
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_input(input: &Input) -> Result<Document, CliError> {
    let text = read_text(&input.file)?;
    Ok(parse_graph(&text, input.format)?)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

/// A connected component with local ids and its map back to document ids.
struct Part {
    graph: Graph,
    map: VertexMap,
}

impl Part {
    fn to_document(&self, set: &VertexSet, n: usize) -> VertexSet {
        VertexSet::from_vertices(n, set.iter().map(|v| self.map.parent(v)))
            .expect("ids map into the document")
    }
}

fn parts(g: &Graph) -> Vec<Part> {
    g.connected_components()
        .into_iter()
        .map(|c| {
            let (graph, map) = g.induced_subgraph(&c);
            Part { graph, map }
        })
        .collect()
}

fn join_labels(doc: &Document, set: &VertexSet, sep: &str) -> String {
    doc.labels_of(set)
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn verdict(yes: bool) -> (String, i32) {
    if yes {
        ("YES\n".to_string(), EXIT_YES)
    } else {
        ("NO\n".to_string(), EXIT_NO)
    }
}

fn decisions(doc: &Document) -> Result<Vec<(Part, Decision)>, CliError> {
    parts(&doc.graph)
        .into_iter()
        .map(|p| {
            let d = decide(&p.graph).map_err(internal)?;
            Ok((p, d))
        })
        .collect()
}

fn execute(command: Command) -> Result<(String, i32), CliError> {
    match command {
        Command::Decide(input) => {
            let doc = read_input(&input)?;
            Ok(verdict(decisions(&doc)?.iter().all(|(_, d)| d.accepts())))
        }
        Command::Construct(input) => {
            let doc = read_input(&input)?;
            let mut set = VertexSet::new(doc.graph.n());
            for (part, d) in decisions(&doc)? {
                if !d.accepts() {
                    return Ok(("NONE\n".to_string(), EXIT_NO));
                }
                let witness = extract_rmis(&part.graph, &d).map_err(internal)?;
                for v in part.to_document(witness.set(), doc.graph.n()).iter() {
                    set.insert(v);
                }
            }
            Ok((format!("{}\n", join_labels(&doc, &set, " ")), EXIT_YES))
        }
        Command::Verify { input, mis } => {
            let doc = read_input(&input)?;
            verify(&doc, &mis)
        }
        Command::Classify(input) => {
            let doc = read_input(&input)?;
            classify_document(&doc)
        }
        Command::Decompose { input, dot, json } => {
            let doc = read_input(&input)?;
            let text = if json {
                decompose_json(&doc)?
            } else if dot {
                decompose_dot(&doc)?
            } else {
                decompose_text(&doc)?
            };
            Ok((text, EXIT_YES))
        }
        Command::Oracle { question, input } => {
            let doc = read_input(&input)?;
            let mut all = true;
            for part in parts(&doc.graph) {
                let yes = match question {
                    OracleQuestion::Decide => exists_rmis_bf(&part.graph).map(|w| w.is_some()),
                    OracleQuestion::Forall => forall_rmis_bf(&part.graph),
                }
                .map_err(CliError::Oracle)?;
                all &= yes;
            }
            Ok(verdict(all))
        }
        Command::Gen {
            family,
            params,
            seed,
            dimacs,
        } => {
            let (g, comment) = generate_family(&family, &params, seed)?;
            let mut text = comment.map(|c| format!("{c}\n")).unwrap_or_default();
            text.push_str(&if dimacs {
                to_dimacs(&g)
            } else {
                to_edge_list(&g)
            });
            Ok((text, EXIT_YES))
        }
    }
}

fn verify(doc: &Document, mis: &str) -> Result<(String, i32), CliError> {
    let mut set = VertexSet::new(doc.graph.n());
    for field in mis.split(',').map(str::trim).filter(|f| !f.is_empty()) {
        let label: u64 = field
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid vertex id {field:?} in --mis")))?;
        let v = doc
            .id_of(label)
            .ok_or_else(|| CliError::Usage(format!("vertex {label} is not in the graph")))?;
        set.insert(v);
    }
    if !doc.graph.is_maximal_independent(&set) {
        return Ok(("NOT_AN_MIS\n".to_string(), EXIT_NO));
    }
    for part in parts(&doc.graph) {
        let mut local = VertexSet::new(part.graph.n());
        for v in 0..part.graph.n() {
            if set.contains(part.map.parent(v)) {
                local.insert(v);
            }
        }
        if !is_robust_mis(&part.graph, &local).map_err(internal)? {
            return Ok(("NOT_ROBUST\n".to_string(), EXIT_NO));
        }
    }
    Ok(("ROBUST\n".to_string(), EXIT_YES))
}

fn classify_document(doc: &Document) -> Result<(String, i32), CliError> {
    let mut classes = Vec::new();
    for part in parts(&doc.graph) {
        classes.push((classify(&part.graph).map_err(internal)?, part));
    }
    let tag = if classes
        .iter()
        .all(|(c, _)| c.tag == RobustnessTag::AllRobust)
    {
        RobustnessTag::AllRobust
    } else if classes
        .iter()
        .any(|(c, _)| c.tag == RobustnessTag::NoneRobust)
    {
        RobustnessTag::NoneRobust
    } else {
        RobustnessTag::SomeRobust
    };
    let evidence = match tag {
        RobustnessTag::AllRobust => {
            let mut names: Vec<String> = classes
                .iter()
                .map(|(c, _)| c.evidence.to_string())
                .collect();
            names.dedup();
            names.join(",")
        }
        RobustnessTag::NoneRobust => {
            let (c, _) = classes
                .iter()
                .find(|(c, _)| c.tag == RobustnessTag::NoneRobust)
                .expect("tag found");
            c.evidence.to_string()
        }
        RobustnessTag::SomeRobust => {
            let mut set = VertexSet::new(doc.graph.n());
            for (c, part) in &classes {
                let local = match &c.evidence {
                    Evidence::Witness(w) => w.clone(),
                    _ => {
                        let d = decide(&part.graph).map_err(internal)?;
                        extract_rmis(&part.graph, &d).map_err(internal)?.into_set()
                    }
                };
                for v in part.to_document(&local, doc.graph.n()).iter() {
                    set.insert(v);
                }
            }
            format!("witness {}", join_labels(doc, &set, ","))
        }
    };
    Ok((format!("{tag} {evidence}\n"), EXIT_YES))
}

#[derive(Serialize)]
struct JsonNode {
    node_id: usize,
    kind: &'static str,
    payload: serde_json::Value,
    parent: Option<usize>,
    attachment: Option<u64>,
    labels: Vec<String>,
}

#[derive(Serialize)]
struct JsonComponent {
    vertices: Vec<u64>,
    tree_graph: bool,
    verdict: &'static str,
    root: Option<usize>,
    rejected_at: Option<usize>,
    nodes: Vec<JsonNode>,
}

#[derive(Serialize)]
struct JsonDecomposition {
    components: Vec<JsonComponent>,
}

fn payload(doc: &Document, part: &Part, kind: &NodeKind) -> serde_json::Value {
    let label = |v: usize| doc.label(part.map.parent(v));
    match kind {
        NodeKind::Pendant(v) | NodeKind::Articulation(v) => label(*v).into(),
        NodeKind::Bridge(e) => vec![label(e.u()), label(e.v())].into(),
        NodeKind::Component(members) => members.iter().map(label).collect::<Vec<_>>().into(),
    }
}

fn component_json(doc: &Document, part: &Part, d: &Decision) -> JsonComponent {
    let label = |v: usize| doc.label(part.map.parent(v));
    let mut vertices: Vec<u64> = (0..part.graph.n()).map(label).collect();
    vertices.sort_unstable();
    let nodes = match d.tree() {
        None => Vec::new(),
        Some(tree) => tree
            .node_ids()
            .map(|x| JsonNode {
                node_id: x,
                kind: tree.kind(x).tag(),
                payload: payload(doc, part, tree.kind(x)),
                parent: tree.parent(x),
                attachment: tree.attachment(x).map(label),
                labels: d.labels()[x]
                    .labels()
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            })
            .collect(),
    };
    JsonComponent {
        vertices,
        tree_graph: d.tree().is_none(),
        verdict: if d.accepts() { "YES" } else { "NO" },
        root: d.tree().map(|t| t.root()),
        rejected_at: d.rejection().map(|r| r.node),
        nodes,
    }
}

fn decompose_json(doc: &Document) -> Result<String, CliError> {
    let components = decisions(doc)?
        .iter()
        .map(|(p, d)| component_json(doc, p, d))
        .collect();
    let mut text =
        serde_json::to_string_pretty(&JsonDecomposition { components }).map_err(internal)?;
    text.push('\n');
    Ok(text)
}

fn payload_text(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::Array(items) => items
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(","),
        other => other.to_string(),
    }
}

fn decompose_text(doc: &Document) -> Result<String, CliError> {
    let mut out = String::new();
    for (i, (part, d)) in decisions(doc)?.iter().enumerate() {
        let c = component_json(doc, part, d);
        let vertices: Vec<String> = c.vertices.iter().map(u64::to_string).collect();
        write!(
            out,
            "component {i}: vertices {} verdict {}",
            vertices.join(","),
            c.verdict
        )
        .unwrap();
        if c.tree_graph {
            out.push_str(" (tree graph, no decomposition)");
        }
        out.push('\n');
        for node in &c.nodes {
            let dash = |x: Option<String>| x.unwrap_or_else(|| "-".to_string());
            writeln!(
                out,
                "  node {} {} {} parent {} attachment {} labels {{{}}}",
                node.node_id,
                node.kind,
                payload_text(&node.payload),
                dash(node.parent.map(|p| p.to_string())),
                dash(node.attachment.map(|a| a.to_string())),
                node.labels.join(","),
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn decompose_dot(doc: &Document) -> Result<String, CliError> {
    let mut out = String::from("graph abc {\n");
    for (i, (part, d)) in decisions(doc)?.iter().enumerate() {
        let c = component_json(doc, part, d);
        writeln!(out, "  subgraph cluster_{i} {{").unwrap();
        writeln!(out, "    label=\"component {i} {}\";", c.verdict).unwrap();
        for node in &c.nodes {
            let shape = match node.kind {
                "P" => "shape=circle",
                "A" => "shape=diamond",
                "B" => "shape=box",
                _ => "shape=circle, width=1.5, fixedsize=true",
            };
            writeln!(
                out,
                "    c{i}n{} [{shape}, label=\"{} {}\\n{{{}}}\"];",
                node.node_id,
                node.kind,
                payload_text(&node.payload),
                node.labels.join(",")
            )
            .unwrap();
        }
        for node in &c.nodes {
            if let Some(p) = node.parent {
                writeln!(out, "    c{i}n{p} -- c{i}n{};", node.node_id).unwrap();
            }
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    Ok(out)
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, name: &str) -> Result<T, CliError> {
    let raw = params
        .get(i)
        .ok_or_else(|| CliError::Usage(format!("missing parameter {name}")))?;
    raw.parse()
        .map_err(|_| CliError::Usage(format!("invalid value {raw:?} for {name}")))
}

fn expect_params(params: &[String], count: usize, family: &str) -> Result<(), CliError> {
    if params.len() > count {
        return Err(CliError::Usage(format!(
            "{family} takes {count} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

/// Builds a family member; the optional string is a comment line for the
/// output document.
pub fn generate_family(
    family: &str,
    params: &[String],
    seed: Option<u64>,
) -> Result<(Graph, Option<String>), CliError> {
    let g = match family {
        "path" => {
            expect_params(params, 1, family)?;
            generate::path(param(params, 0, "n")?)
        }
        "cycle" => {
            expect_params(params, 1, family)?;
            generate::cycle(param(params, 0, "n")?)?
        }
        "complete_bipartite" => {
            expect_params(params, 2, family)?;
            generate::complete_bipartite(param(params, 0, "a")?, param(params, 1, "b")?)?
        }
        "star" => {
            expect_params(params, 1, family)?;
            generate::star(param(params, 0, "n")?)
        }
        "sputnik" => {
            expect_params(params, 1, family)?;
            let path: PathBuf = param(params, 0, "base-file")?;
            let base = parse_graph(&read_text(&path)?, Format::Auto)?;
            generate::sputnik_of(&base.graph)
        }
        "random_connected" => {
            expect_params(params, 3, family)?;
            let n = param(params, 0, "n")?;
            let p = param(params, 1, "p")?;
            let seed = match (params.get(2), seed) {
                (Some(_), Some(_)) => return Err(CliError::Usage("seed given twice".to_string())),
                (Some(_), None) => param(params, 2, "seed")?,
                (None, Some(s)) => s,
                (None, None) => 0,
            };
            generate::random_connected(n, p, seed)?
        }
        "fixture_component_b" => {
            expect_params(params, 0, family)?;
            let ids: Vec<String> = FIXTURE_COMPONENT_B_IDS
                .iter()
                .map(ToString::to_string)
                .collect();
            return Ok((
                generate::fixture_component_b(),
                Some(format!("# original ids: {}", ids.join(" "))),
            ));
        }
        other => return Err(CliError::Usage(format!("unknown family {other:?}"))),
    };
    Ok((g, None))
}
