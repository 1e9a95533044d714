//! Simple undirected graphs over dense vertex ids `0..n`.
//!
//! Graphs are immutable once built: every surgery operation returns a new
//! value. Neighbor lists are kept sorted so that every traversal built on
//! top of them is deterministic.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex {vertex} outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge ({0}, {1}) is not present in the graph")]
    MissingEdge(usize, usize),
}

/// An unordered pair of distinct vertices, stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    /// Builds the canonical form of `{u, v}`. Panics on `u == v`.
    pub fn new(u: usize, v: usize) -> Self {
        assert_ne!(u, v, "an edge needs two distinct endpoints");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn u(self) -> usize {
        self.0
    }

    pub fn v(self) -> usize {
        self.1
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn contains(self, w: usize) -> bool {
        self.0 == w || self.1 == w
    }

    /// The endpoint that is not `w`.
    pub fn other(self, w: usize) -> usize {
        if self.0 == w {
            self.1
        } else {
            debug_assert_eq!(self.1, w);
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.0, self.1)
    }
}

/// A set of vertices drawn from a fixed universe `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = VertexSet::new(universe);
        for v in 0..universe {
            set.insert(v);
        }
        set
    }

    /// Builds a set from explicit members, rejecting ids outside the universe.
    pub fn from_vertices<I>(universe: usize, vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = VertexSet::new(universe);
        for v in vertices {
            if v >= universe {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: universe,
                });
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    /// Inserts `v`; returns whether it was newly added. Panics when `v` is
    /// outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside 0..{}", self.universe);
        let fresh = !self.contains(v);
        self.words[v / 64] |= 1 << (v % 64);
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let present = self.contains(v);
        if present {
            self.words[v / 64] &= !(1 << (v % 64));
        }
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Two-coloring of a graph; each connected component is colored
/// independently, starting with side 0 at its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<u8>,
}

impl Bipartition {
    pub fn side(&self, v: usize) -> u8 {
        self.side[v]
    }

    pub fn sides(&self) -> &[u8] {
        &self.side
    }

    /// All vertices colored `side`.
    pub fn part(&self, side: u8) -> VertexSet {
        let mut set = VertexSet::new(self.side.len());
        for (v, &s) in self.side.iter().enumerate() {
            if s == side {
                set.insert(v);
            }
        }
        set
    }

    pub fn is_proper_for(&self, g: &Graph) -> bool {
        self.side.len() == g.n()
            && g.edges()
                .iter()
                .all(|e| self.side[e.u()] != self.side[e.v()])
    }
}

/// Correspondence between the vertices of an induced subgraph and the
/// vertices of the graph it was cut from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    to_parent: Vec<usize>,
    to_local: HashMap<usize, usize>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap {
            to_parent: (0..n).collect(),
            to_local: (0..n).map(|v| (v, v)).collect(),
        }
    }

    fn from_parent_ids(to_parent: Vec<usize>) -> Self {
        let to_local = to_parent.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        VertexMap {
            to_parent,
            to_local,
        }
    }

    /// Parent-graph id of local vertex `local`.
    pub fn parent(&self, local: usize) -> usize {
        self.to_parent[local]
    }

    /// Local id of parent vertex `parent`, if it belongs to the subgraph.
    pub fn local(&self, parent: usize) -> Option<usize> {
        self.to_local.get(&parent).copied()
    }

    pub fn parent_ids(&self) -> &[usize] {
        &self.to_parent
    }

    pub fn len(&self) -> usize {
        self.to_parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_parent.is_empty()
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from unordered pairs. Repeated pairs collapse into a
    /// single edge; self-loops and out-of-range ids are rejected.
    pub fn new<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push(Edge::new(u, v));
        }
        Ok(Graph::from_canonical(n, edges))
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    fn from_canonical(n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            adjacency[e.u()].push(e.v());
            adjacency[e.v()].push(e.u());
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { adjacency, edges }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// True iff the graph has at most one connected component.
    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.reach_from(0, |_| true).len() == self.n()
    }

    /// Connectivity test that ignores every edge rejected by `keep`.
    pub fn is_connected_filtered<F>(&self, keep: F) -> bool
    where
        F: Fn(Edge) -> bool,
    {
        self.n() <= 1 || self.reach_from(0, keep).len() == self.n()
    }

    fn reach_from<F>(&self, start: usize, keep: F) -> VertexSet
    where
        F: Fn(Edge) -> bool,
    {
        let mut seen = VertexSet::new(self.n());
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen.contains(w) && keep(Edge::new(u, w)) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Connected components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut assigned = VertexSet::new(self.n());
        let mut components = Vec::new();
        for v in self.vertices() {
            if assigned.contains(v) {
                continue;
            }
            let component = self.reach_from(v, |_| true);
            for w in component.iter() {
                assigned.insert(w);
            }
            components.push(component);
        }
        components
    }

    /// BFS two-coloring, or `None` when some component has an odd cycle.
    pub fn bipartition(&self) -> Option<Bipartition> {
        const UNSET: u8 = u8::MAX;
        let mut side = vec![UNSET; self.n()];
        let mut queue = VecDeque::new();
        for start in self.vertices() {
            if side[start] != UNSET {
                continue;
            }
            side[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if side[w] == UNSET {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(Bipartition { side })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Same vertex set, every edge of `removed` dropped.
    pub fn remove_edges<I>(&self, removed: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut drop = Vec::new();
        for e in removed {
            if !self.has_edge(e.u(), e.v()) {
                return Err(GraphError::MissingEdge(e.u(), e.v()));
            }
            drop.push(e);
        }
        drop.sort_unstable();
        let kept = self
            .edges
            .iter()
            .copied()
            .filter(|e| drop.binary_search(e).is_err())
            .collect();
        Ok(Graph::from_canonical(self.n(), kept))
    }

    /// Same vertex set with the extra edges of `added`.
    pub fn add_edges<I>(&self, added: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut edges = self.edges.clone();
        for e in added {
            if e.v() >= self.n() {
                return Err(GraphError::OutOfRange {
                    u: e.u(),
                    v: e.v(),
                    n: self.n(),
                });
            }
            edges.push(e);
        }
        Ok(Graph::from_canonical(self.n(), edges))
    }

    /// The subgraph induced by `vertices`, re-indexed densely in ascending
    /// order of the original ids.
    pub fn induced_subgraph(&self, vertices: &VertexSet) -> (Graph, VertexMap) {
        let map = VertexMap::from_parent_ids(vertices.iter().filter(|&v| v < self.n()).collect());
        let mut edges = Vec::new();
        for (local_u, &u) in map.parent_ids().iter().enumerate() {
            for &w in &self.adjacency[u] {
                if w > u {
                    if let Some(local_w) = map.local(w) {
                        edges.push(Edge::new(local_u, local_w));
                    }
                }
            }
        }
        (Graph::from_canonical(map.len(), edges), map)
    }

    /// True iff `set` has no internal edge.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|u| self.adjacency[u].iter().all(|&w| !set.contains(w)))
    }

    /// True iff every vertex outside `set` has a neighbor inside it.
    pub fn dominates(&self, set: &VertexSet) -> bool {
        self.vertices()
            .all(|u| set.contains(u) || self.adjacency[u].iter().any(|&w| set.contains(w)))
    }

    pub fn is_maximal_independent(&self, set: &VertexSet) -> bool {
        self.is_independent(set) && self.dominates(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn construction_examples() {
        let t = triangle();
        assert_eq!(t.n(), 3);
        assert_eq!(
            t.edges(),
            &[Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]
        );
        assert_eq!(t.neighbors(2), &[0, 1]);

        let single = Graph::new(1, []).unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.edge_count(), 0);

        let square = c4();
        assert_eq!(square.edge_count(), 4);
        assert_eq!(square.neighbors(0), &[1, 3]);
    }

    #[test]
    fn construction_rejects_bad_pairs() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::OutOfRange { u: 0, v: 3, n: 3 })
        );
    }

    #[test]
    fn duplicate_pairs_collapse() {
        let g = Graph::new(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn connectivity_examples() {
        assert!(triangle().is_connected());
        assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_connected());
        let path = c4().remove_edges([Edge::new(0, 1)]).unwrap();
        assert!(path.is_connected());
        assert!(Graph::empty(0).is_connected());
        assert!(Graph::empty(1).is_connected());
    }

    #[test]
    fn component_examples() {
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            two.connected_components(),
            vec![set(4, &[0, 1]), set(4, &[2, 3])]
        );
        assert_eq!(triangle().connected_components(), vec![set(3, &[0, 1, 2])]);
        assert_eq!(
            Graph::empty(3).connected_components(),
            vec![set(3, &[0]), set(3, &[1]), set(3, &[2])]
        );
    }

    #[test]
    fn bipartition_examples() {
        let b = c4().bipartition().unwrap();
        assert_eq!(b.part(0), set(4, &[0, 2]));
        assert_eq!(b.part(1), set(4, &[1, 3]));
        assert!(triangle().bipartition().is_none());
        let path = Graph::new(3, [(0, 1), (1, 2)])
            .unwrap()
            .bipartition()
            .unwrap();
        assert_eq!(path.part(0), set(3, &[0, 2]));
        assert_eq!(path.part(1), set(3, &[1]));
    }

    #[test]
    fn bipartition_starts_each_component_at_side_zero() {
        let g = Graph::new(5, [(0, 1), (3, 2), (3, 4)]).unwrap();
        let b = g.bipartition().unwrap();
        assert_eq!(b.sides(), &[0, 1, 0, 1, 0]);
    }

    #[test]
    fn remove_edges_examples() {
        let t = triangle().remove_edges([Edge::new(0, 1)]).unwrap();
        assert_eq!(t.edges(), &[Edge::new(0, 2), Edge::new(1, 2)]);
        assert_eq!(c4().remove_edges([]).unwrap(), c4());
        let split = c4()
            .remove_edges([Edge::new(0, 1), Edge::new(2, 3)])
            .unwrap();
        assert_eq!(split.edge_count(), 2);
        assert!(!split.is_connected());
        assert_eq!(
            triangle()
                .remove_edges([Edge::new(0, 1), Edge::new(0, 1)])
                .unwrap()
                .edge_count(),
            2
        );
    }

    #[test]
    fn remove_missing_edge_is_an_error() {
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            path.remove_edges([Edge::new(0, 2)]),
            Err(GraphError::MissingEdge(0, 2))
        );
    }

    #[test]
    fn induced_subgraph_examples() {
        // bull: a=0, b=1, c=2, d=3, e=4
        let bull = Graph::new(5, [(0, 1), (1, 2), (1, 3), (2, 3), (2, 4)]).unwrap();
        let (sub, map) = bull.induced_subgraph(&set(5, &[1, 2, 3]));
        assert_eq!(sub, triangle());
        assert_eq!(map.parent_ids(), &[1, 2, 3]);
        assert_eq!(map.local(3), Some(2));
        assert_eq!(map.local(0), None);

        let (copy, map) = bull.induced_subgraph(&VertexSet::full(5));
        assert_eq!(copy, bull);
        assert_eq!(map, VertexMap::identity(5));

        let (single, _) = triangle().induced_subgraph(&set(3, &[0]));
        assert_eq!(single.n(), 1);
        assert_eq!(single.edge_count(), 0);
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::new(130);
        assert!(s.insert(129));
        assert!(s.insert(3));
        assert!(!s.insert(3));
        assert_eq!(s.to_vec(), vec![3, 129]);
        assert_eq!(s.len(), 2);
        assert!(s.remove(129));
        assert_eq!(s.min(), Some(3));
        assert!(VertexSet::from_vertices(3, [3]).is_err());
    }

    #[test]
    fn independence_and_maximality() {
        let square = c4();
        assert!(square.is_maximal_independent(&set(4, &[0, 2])));
        assert!(!square.is_independent(&set(4, &[0, 1])));
        assert!(!square.dominates(&set(4, &[0])));
    }
}
