//! Edge-list and DIMACS graph documents.
//!
//! Edge lists hold one `u v` pair per line with `#` comments. An optional
//! first line `n m` is taken as a header when exactly `m` pairs follow and
//! every id is below `n`; vertices are then `0..n`. Without a header the
//! distinct ids are compacted to dense ids in ascending order.
//!
//! DIMACS documents use `c` comments, a `p edge N M` line and `e u v` lines
//! with 1-based ids.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;

use rmis_core::{Graph, VertexSet};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
    Auto,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            "auto" => Ok(Format::Auto),
            other => Err(format!(
                "unknown format {other:?}, expected edgelist, dimacs or auto"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },
    #[error("line {line}: duplicate edge {u} {v}")]
    Duplicate { line: usize, u: u64, v: u64 },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing \"p edge N M\" line")]
    MissingProblemLine,
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.into(),
    }
}

/// A parsed graph together with the original label of every dense id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub graph: Graph,
    pub labels: Vec<u64>,
}

impl Document {
    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn id_of(&self, label: u64) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Original labels of the members, ascending.
    pub fn labels_of(&self, set: &VertexSet) -> Vec<u64> {
        let mut out: Vec<u64> = set.iter().map(|v| self.labels[v]).collect();
        out.sort_unstable();
        out
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Document, ParseError> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
        Format::Auto => {
            if looks_like_dimacs(text) {
                parse_dimacs(text)
            } else {
                parse_edge_list(text)
            }
        }
    }
}

fn looks_like_dimacs(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| {
            l.starts_with("p ") || l.starts_with("c ") || l == "c" || l.starts_with("e ")
        })
}

fn parse_pair(line: usize, text: &str) -> Result<(u64, u64), ParseError> {
    let mut fields = text.split_whitespace();
    let mut next = || -> Result<u64, ParseError> {
        let field = fields
            .next()
            .ok_or_else(|| malformed(line, "expected two vertex ids"))?;
        field
            .parse()
            .map_err(|_| malformed(line, format!("invalid vertex id {field:?}")))
    };
    let pair = (next()?, next()?);
    if fields.next().is_some() {
        return Err(malformed(line, "expected exactly two vertex ids"));
    }
    Ok(pair)
}

fn collect_edges(
    pairs: &[(usize, u64, u64)],
    id: impl Fn(u64) -> usize,
) -> Result<Vec<(usize, usize)>, ParseError> {
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(pairs.len());
    for &(line, u, v) in pairs {
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::Duplicate { line, u, v });
        }
        edges.push((id(u), id(v)));
    }
    Ok(edges)
}

fn parse_edge_list(text: &str) -> Result<Document, ParseError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            let (u, v) = parse_pair(i + 1, body)?;
            pairs.push((i + 1, u, v));
        }
    }
    if let Some(&(_, n, m)) = pairs.first() {
        let rest = &pairs[1..];
        if rest.len() as u64 == m && rest.iter().all(|&(_, u, v)| u < n && v < n) {
            let n =
                usize::try_from(n).map_err(|_| malformed(pairs[0].0, "vertex count too large"))?;
            let edges = collect_edges(rest, |x| x as usize)?;
            let graph = Graph::new(n, edges).expect("ids checked against the header");
            return Ok(Document {
                graph,
                labels: (0..n as u64).collect(),
            });
        }
    }
    let labels: Vec<u64> = pairs
        .iter()
        .flat_map(|&(_, u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: HashMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let edges = collect_edges(&pairs, |x| index[&x])?;
    let graph = Graph::new(labels.len(), edges).expect("ids are dense");
    Ok(Document { graph, labels })
}

fn parse_dimacs(text: &str) -> Result<Document, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body == "c" || body.starts_with("c ") || body.starts_with('#') {
            continue;
        }
        let mut fields = body.split_whitespace();
        match fields.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(malformed(line, "second problem line"));
                }
                let kind = fields.next();
                if !matches!(kind, Some("edge") | Some("col")) {
                    return Err(malformed(line, "expected \"p edge N M\""));
                }
                let mut num = || -> Result<usize, ParseError> {
                    let f = fields
                        .next()
                        .ok_or_else(|| malformed(line, "expected \"p edge N M\""))?;
                    f.parse()
                        .map_err(|_| malformed(line, format!("invalid count {f:?}")))
                };
                header = Some((num()?, num()?));
            }
            Some("e") => {
                let (n, _) = header.ok_or(ParseError::MissingProblemLine)?;
                let rest: Vec<&str> = fields.collect();
                let (u, v) = parse_pair(line, &rest.join(" "))?;
                for x in [u, v] {
                    if x == 0 || x > n as u64 {
                        return Err(malformed(line, format!("vertex {x} outside 1..={n}")));
                    }
                }
                pairs.push((line, u, v));
            }
            Some(other) => return Err(malformed(line, format!("unknown line type {other:?}"))),
            None => {}
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingProblemLine)?;
    if pairs.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: pairs.len(),
        });
    }
    let edges = collect_edges(&pairs, |x| x as usize - 1)?;
    let graph = Graph::new(n, edges).expect("ids checked against the problem line");
    Ok(Document {
        graph,
        labels: (1..=n as u64).collect(),
    })
}

/// Edge list with an `n m` header, using dense ids.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for e in g.edges() {
        writeln!(out, "{} {}", e.u(), e.v()).unwrap();
    }
    out
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for e in g.edges() {
        writeln!(out, "e {} {}", e.u() + 1, e.v() + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_with_header() {
        let d = parse_graph("3 3\n0 1\n1 2\n2 0", Format::Auto).unwrap();
        assert_eq!(d.graph.n(), 3);
        assert_eq!(d.graph.edge_count(), 3);
    }

    #[test]
    fn header_keeps_isolated_vertices() {
        let d = parse_graph("4 1\n0 1\n", Format::EdgeList).unwrap();
        assert_eq!(d.graph.n(), 4);
    }

    #[test]
    fn dimacs_square() {
        let d = parse_graph("p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1", Format::Auto).unwrap();
        assert_eq!(d.graph.n(), 4);
        assert_eq!(d.labels, vec![1, 2, 3, 4]);
        assert!(d.graph.has_edge(0, 3));
    }

    #[test]
    fn comment_then_single_edge() {
        let d = parse_graph("# comment\n0 1", Format::Auto).unwrap();
        assert_eq!((d.graph.n(), d.graph.edge_count()), (2, 1));
    }

    #[test]
    fn sparse_labels_are_compacted() {
        let d = parse_graph("10 30\n30 7\n", Format::EdgeList).unwrap();
        assert_eq!(d.labels, vec![7, 10, 30]);
        assert_eq!(d.id_of(30), Some(2));
        assert!(d.graph.has_edge(0, 2) && d.graph.has_edge(1, 2));
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(
            parse_graph("0 1\n1 1\n", Format::EdgeList),
            Err(ParseError::SelfLoop { line: 2, vertex: 1 })
        );
        assert_eq!(
            parse_graph("0 1\n1 2\n1 0\n", Format::EdgeList),
            Err(ParseError::Duplicate {
                line: 3,
                u: 1,
                v: 0
            })
        );
        assert!(matches!(
            parse_graph("0 x\n", Format::EdgeList),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("0 1 2\n", Format::EdgeList),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert_eq!(
            parse_graph("p edge 3 2\ne 1 2\n", Format::Dimacs),
            Err(ParseError::EdgeCount {
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            parse_graph("p edge 3 1\ne 1 4\n", Format::Dimacs),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert_eq!(
            parse_graph("e 1 2\n", Format::Dimacs),
            Err(ParseError::MissingProblemLine)
        );
    }

    #[test]
    fn serializers_round_trip() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        assert_eq!(
            parse_graph(&to_edge_list(&g), Format::Auto).unwrap().graph,
            g
        );
        assert_eq!(parse_graph(&to_dimacs(&g), Format::Auto).unwrap().graph, g);
    }
}
