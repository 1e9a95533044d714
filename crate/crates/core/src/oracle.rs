//! Brute-force ground truth for small graphs.

use thiserror::Error;

use crate::graph::{Edge, Graph, VertexSet};
use crate::labeling::{AttachmentFlag, ComponentProblem, Label};

pub const MAX_ENUMERATION_VERTICES: usize = 24;
pub const MAX_EXHAUSTIVE_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("refusing to enumerate: {n} vertices exceeds the limit of {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("refusing to enumerate: {m} edges exceeds the limit of {limit}")]
    TooManyEdges { m: usize, limit: usize },
    #[error("vertex set is not independent: edge {0} lies inside it")]
    NotIndependent(Edge),
    #[error("vertex set is not maximal: vertex {0} can be added")]
    NotMaximal(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex set universe {found} does not match the graph order {expected}")]
    UniverseMismatch { found: usize, expected: usize },
}

impl OracleError {
    pub fn is_size_guard(&self) -> bool {
        matches!(
            self,
            OracleError::TooManyVertices { .. } | OracleError::TooManyEdges { .. }
        )
    }
}

fn guard_vertices(n: usize) -> Result<(), OracleError> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(OracleError::TooManyVertices {
            n,
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    Ok(())
}

/// Every maximal independent set of `g`, sorted by member list.
///
/// Bron–Kerbosch with pivoting on the complement graph.
pub fn enumerate_mis(g: &Graph) -> Result<Vec<VertexSet>, OracleError> {
    let n = g.n();
    guard_vertices(n)?;
    if n == 0 {
        return Ok(vec![VertexSet::new(0)]);
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let non_adjacent: Vec<u32> = g
        .vertices()
        .map(|v| {
            let adj = g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w);
            full & !adj & !(1 << v)
        })
        .collect();

    let mut found = Vec::new();
    let mut stack = vec![(0u32, full, 0u32)];
    while let Some((r, mut p, mut x)) = stack.pop() {
        if p == 0 {
            if x == 0 {
                found.push(r);
            }
            continue;
        }
        let pivot = {
            let px = p | x;
            (0..n)
                .filter(|&u| px >> u & 1 == 1)
                .max_by_key(|&u| (p & non_adjacent[u]).count_ones())
                .unwrap()
        };
        let mut candidates = p & !non_adjacent[pivot];
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            stack.push((r | 1 << v, p & non_adjacent[v], x & non_adjacent[v]));
            p &= !(1 << v);
            x |= 1 << v;
        }
    }

    let mut sets: Vec<Vec<usize>> = found
        .into_iter()
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    sets.sort();
    Ok(sets
        .into_iter()
        .map(|s| VertexSet::from_vertices(n, s).expect("members are below n"))
        .collect())
}

fn validate_mis(g: &Graph, m: &VertexSet) -> Result<(), OracleError> {
    if m.universe() != g.n() {
        return Err(OracleError::UniverseMismatch {
            found: m.universe(),
            expected: g.n(),
        });
    }
    if let Some(&e) = g
        .edges()
        .iter()
        .find(|e| m.contains(e.u()) && m.contains(e.v()))
    {
        return Err(OracleError::NotIndependent(e));
    }
    if let Some(u) = g
        .vertices()
        .find(|&u| !m.contains(u) && !g.neighbors(u).iter().any(|&w| m.contains(w)))
    {
        return Err(OracleError::NotMaximal(u));
    }
    Ok(())
}

/// True when no vertex outside `m` can lose all its neighbors in `m` while
/// the graph stays connected, i.e. `g − F(u)` is disconnected for every
/// `u ∉ m`, where `F(u)` are the edges from `u` into `m`.
pub fn is_robust_mis(g: &Graph, m: &VertexSet) -> Result<bool, OracleError> {
    validate_mis(g, m)?;
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    Ok(g.vertices()
        .filter(|&u| !m.contains(u))
        .all(|u| !g.is_connected_filtered(|e: Edge| !(e.contains(u) && m.contains(e.other(u))))))
}

/// Checks maximality of `m` in every connected spanning subgraph of `g`.
pub fn is_robust_mis_exhaustive(g: &Graph, m: &VertexSet) -> Result<bool, OracleError> {
    let edges = g.edges();
    if edges.len() > MAX_EXHAUSTIVE_EDGES {
        return Err(OracleError::TooManyEdges {
            m: edges.len(),
            limit: MAX_EXHAUSTIVE_EDGES,
        });
    }
    validate_mis(g, m)?;
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let n = g.n();
    let mut parent = vec![0usize; n];
    for kept in 0u32..(1 << edges.len()) {
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v;
        }
        let mut pieces = n;
        let mut covered = m.clone();
        for (i, e) in edges.iter().enumerate() {
            if kept >> i & 1 == 0 {
                continue;
            }
            let (a, b) = (find(&mut parent, e.u()), find(&mut parent, e.v()));
            if a != b {
                parent[a] = b;
                pieces -= 1;
            }
            if m.contains(e.u()) {
                covered.insert(e.v());
            }
            if m.contains(e.v()) {
                covered.insert(e.u());
            }
        }
        if pieces <= 1 && covered.len() < n {
            return Ok(false);
        }
    }
    Ok(true)
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// The first robust MIS in enumeration order.
pub fn exists_rmis_bf(g: &Graph) -> Result<Option<VertexSet>, OracleError> {
    for m in enumerate_mis(g)? {
        if is_robust_mis(g, &m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// True when every MIS of `g` is robust.
pub fn forall_rmis_bf(g: &Graph) -> Result<bool, OracleError> {
    for m in enumerate_mis(g)? {
        if !is_robust_mis(g, &m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A component with a path `v – v′ – v″` appended at every constrained
/// vertex `v`. Base vertices keep their ids; path vertices follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    graph: Graph,
    base_order: usize,
    paths: Vec<(usize, usize, usize)>,
}

impl GadgetGraph {
    pub fn new(base: &Graph, constrained: &[usize]) -> Self {
        let k = base.n();
        let mut pairs: Vec<(usize, usize)> = base.edges().iter().map(|e| e.endpoints()).collect();
        let mut paths = Vec::with_capacity(constrained.len());
        for (i, &v) in constrained.iter().enumerate() {
            let (p1, p2) = (k + 2 * i, k + 2 * i + 1);
            pairs.push((v, p1));
            pairs.push((p1, p2));
            paths.push((v, p1, p2));
        }
        let graph = Graph::new(k + 2 * constrained.len(), pairs).expect("gadget ids are in range");
        GadgetGraph {
            graph,
            base_order: k,
            paths,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    /// `(v, v′, v″)` for every constrained vertex `v`.
    pub fn paths(&self) -> &[(usize, usize, usize)] {
        &self.paths
    }

    /// Restriction of a gadget vertex set to the base component.
    pub fn project(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.base_order);
        for v in set.iter().filter(|&v| v < self.base_order) {
            out.insert(v);
        }
        out
    }
}

/// Gadget for a problem: one path per vertex with a non-empty label set,
/// which includes an artificial label on the parent vertex.
pub fn gadget_for(p: &ComponentProblem) -> GadgetGraph {
    let constrained: Vec<usize> = p
        .constraints()
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(v, _)| v)
        .collect();
    GadgetGraph::new(p.graph(), &constrained)
}

/// All robust MISs of the gadget graph that are suitable for the problem's
/// constraints and respect its attachment flag, in enumeration order.
pub fn suitable_rmis(p: &ComponentProblem) -> Result<Vec<VertexSet>, OracleError> {
    let gadget = gadget_for(p);
    guard_vertices(gadget.graph().n())?;
    let labels = p.constraints();
    let suitable = |s: &VertexSet| {
        gadget.paths().iter().all(|&(v, p1, p2)| {
            let l = labels[v];
            if s.contains(v) {
                l.has(Label::PossiblyIn)
            } else if s.contains(p1) && !s.contains(p2) {
                l.has(Label::PossiblyOut)
            } else {
                l.has(Label::PossiblyOut) || l.has(Label::PossiblyExternal)
            }
        })
    };
    let flag_ok = |s: &VertexSet| match (p.flag(), p.attachment()) {
        (AttachmentFlag::In, Some(a)) => s.contains(a),
        (AttachmentFlag::Out, Some(a)) => !s.contains(a),
        _ => true,
    };
    let mut out = Vec::new();
    for s in enumerate_mis(gadget.graph())? {
        if suitable(&s) && flag_ok(&s) && is_robust_mis(gadget.graph(), &s)? {
            out.push(s);
        }
    }
    Ok(out)
}

pub fn suitable_rmis_exists(p: &ComponentProblem) -> Result<bool, OracleError> {
    Ok(!suitable_rmis(p)?.is_empty())
}
