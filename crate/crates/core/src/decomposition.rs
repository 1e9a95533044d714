//! Block decomposition and the rooted pendant/articulation/bridge/component
//! tree (ABC-tree) built from it.
//!
//! Blocks are found with the Hopcroft–Tarjan lowpoint DFS, run iteratively
//! so deep graphs do not exhaust the stack. Two-vertex blocks are reported
//! as bridges; only blocks with at least three vertices count as
//! biconnected components.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::graph::{Edge, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("graph is disconnected; split it into connected components first")]
    Disconnected,
    #[error("graph has no biconnected component (it is a tree)")]
    TreeGraph,
}

/// Pendants, articulation points, bridges and biconnected components of a
/// connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAnalysis {
    articulation_points: VertexSet,
    bridges: Vec<Edge>,
    components: Vec<VertexSet>,
    pendants: VertexSet,
}

impl BlockAnalysis {
    pub fn articulation_points(&self) -> &VertexSet {
        &self.articulation_points
    }

    /// Bridges in ascending canonical order.
    pub fn bridges(&self) -> &[Edge] {
        &self.bridges
    }

    /// Biconnected components (at least three vertices each), ordered by
    /// their sorted member lists.
    pub fn components(&self) -> &[VertexSet] {
        &self.components
    }

    pub fn pendants(&self) -> &VertexSet {
        &self.pendants
    }

    pub fn is_bridge(&self, e: Edge) -> bool {
        self.bridges.binary_search(&e).is_ok()
    }
}

/// Runs the lowpoint DFS over a connected graph.
pub fn analyze_blocks(g: &Graph) -> Result<BlockAnalysis, DecompositionError> {
    if !g.is_connected() {
        return Err(DecompositionError::Disconnected);
    }
    let n = g.n();
    let mut articulation_points = VertexSet::new(n);
    let mut bridges = Vec::new();
    let mut components = Vec::new();
    let mut pendants = VertexSet::new(n);
    for v in g.vertices() {
        if g.degree(v) == 1 {
            pendants.insert(v);
        }
    }
    if n == 0 {
        return Ok(BlockAnalysis {
            articulation_points,
            bridges,
            components,
            pendants,
        });
    }

    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut parent = vec![UNSEEN; n];
    let mut next_edge = vec![0usize; n];
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut root_children = 0;
    let mut clock = 0;

    let root = 0;
    disc[root] = clock;
    low[root] = clock;
    clock += 1;
    let mut stack = vec![root];

    while let Some(&u) = stack.last() {
        if next_edge[u] < g.degree(u) {
            let w = g.neighbors(u)[next_edge[u]];
            next_edge[u] += 1;
            if disc[w] == UNSEEN {
                parent[w] = u;
                disc[w] = clock;
                low[w] = clock;
                clock += 1;
                edge_stack.push(Edge::new(u, w));
                if u == root {
                    root_children += 1;
                }
                stack.push(w);
            } else if w != parent[u] && disc[w] < disc[u] {
                edge_stack.push(Edge::new(u, w));
                low[u] = low[u].min(disc[w]);
            }
            continue;
        }

        stack.pop();
        let p = parent[u];
        if p == UNSEEN {
            continue;
        }
        low[p] = low[p].min(low[u]);
        if low[u] >= disc[p] {
            if p != root {
                articulation_points.insert(p);
            }
            let tree_edge = Edge::new(p, u);
            let mut block = Vec::new();
            while let Some(e) = edge_stack.pop() {
                block.push(e);
                if e == tree_edge {
                    break;
                }
            }
            if block.len() == 1 {
                bridges.push(tree_edge);
            } else {
                let mut members = VertexSet::new(n);
                for e in block {
                    members.insert(e.u());
                    members.insert(e.v());
                }
                components.push(members);
            }
        }
    }
    if root_children >= 2 {
        articulation_points.insert(root);
    }

    bridges.sort_unstable();
    components.sort_by_cached_key(|c| c.to_vec());
    Ok(BlockAnalysis {
        articulation_points,
        bridges,
        components,
        pendants,
    })
}

/// True iff `g` has at least three vertices, is connected, and has no
/// articulation point.
pub fn is_biconnected(g: &Graph) -> bool {
    if g.n() < 3 {
        return false;
    }
    match analyze_blocks(g) {
        Ok(analysis) => analysis.articulation_points().is_empty(),
        Err(_) => false,
    }
}

pub type NodeId = usize;

/// What an ABC-tree node stands for in the underlying graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Pendant(usize),
    Articulation(usize),
    Bridge(Edge),
    Component(VertexSet),
}

impl NodeKind {
    pub fn tag(&self) -> &'static str {
        match self {
            NodeKind::Pendant(_) => "P",
            NodeKind::Articulation(_) => "A",
            NodeKind::Bridge(_) => "B",
            NodeKind::Component(_) => "C",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct TreeNode {
    kind: NodeKind,
    parent: Option<NodeId>,
    children: Vec<NodeId>,
    attachment: Option<usize>,
}

/// The ABC-tree rooted at a biconnected component.
///
/// Nodes are numbered components first, then articulation points, bridges
/// and pendants, each group in ascending order of its payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbcTree {
    nodes: Vec<TreeNode>,
    root: NodeId,
    articulation_nodes: HashMap<usize, NodeId>,
    vertex_count: usize,
}

impl AbcTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of vertices of the graph the tree was built from.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn node_ids(&self) -> std::ops::Range<NodeId> {
        0..self.nodes.len()
    }

    pub fn kind(&self, x: NodeId) -> &NodeKind {
        &self.nodes[x].kind
    }

    pub fn parent(&self, x: NodeId) -> Option<NodeId> {
        self.nodes[x].parent
    }

    pub fn children(&self, x: NodeId) -> &[NodeId] {
        &self.nodes[x].children
    }

    /// The highest vertex of `x` towards the root; `None` only at the root.
    pub fn attachment(&self, x: NodeId) -> Option<usize> {
        self.nodes[x].attachment
    }

    /// The articulation node standing for vertex `v`, if `v` is one.
    pub fn articulation_node(&self, v: usize) -> Option<NodeId> {
        self.articulation_nodes.get(&v).copied()
    }

    /// Number of tree edges (one per non-root node).
    pub fn edge_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|node| node.parent.is_some())
            .count()
    }

    /// Nodes of the subtree rooted at `x`, children before parents.
    pub fn post_order(&self, x: NodeId) -> Vec<NodeId> {
        let mut order = Vec::new();
        let mut stack = vec![(x, false)];
        while let Some((node, expanded)) = stack.pop() {
            if expanded {
                order.push(node);
            } else {
                stack.push((node, true));
                for &c in self.children(node).iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        order
    }

    /// Vertices of the graph covered by node `x` alone.
    pub fn node_vertices(&self, x: NodeId) -> Vec<usize> {
        match self.kind(x) {
            NodeKind::Pendant(v) | NodeKind::Articulation(v) => vec![*v],
            NodeKind::Bridge(e) => vec![e.u(), e.v()],
            NodeKind::Component(members) => members.to_vec(),
        }
    }

    /// Vertices of the subgraph spanned by the subtree rooted at `x`.
    pub fn subtree_vertices(&self, x: NodeId) -> VertexSet {
        let mut set = VertexSet::new(self.vertex_count);
        for node in self.post_order(x) {
            for v in self.node_vertices(node) {
                set.insert(v);
            }
        }
        set
    }
}

/// Assembles the rooted ABC-tree of `g` from its block analysis.
///
/// The root is the component containing the smallest vertex id (ties broken
/// by comparing sorted member lists).
pub fn build_abc_tree(analysis: &BlockAnalysis, g: &Graph) -> Result<AbcTree, DecompositionError> {
    if analysis.components().is_empty() {
        return Err(DecompositionError::TreeGraph);
    }
    let n = g.n();
    let mut nodes = Vec::new();
    let mut component_nodes = Vec::new();
    for members in analysis.components() {
        component_nodes.push(nodes.len());
        nodes.push(leaf(NodeKind::Component(members.clone())));
    }
    let mut vertex_node: HashMap<usize, NodeId> = HashMap::new();
    let mut articulation_nodes = HashMap::new();
    for v in analysis.articulation_points().iter() {
        articulation_nodes.insert(v, nodes.len());
        vertex_node.insert(v, nodes.len());
        nodes.push(leaf(NodeKind::Articulation(v)));
    }
    let mut bridge_nodes = Vec::new();
    for &e in analysis.bridges() {
        bridge_nodes.push(nodes.len());
        nodes.push(leaf(NodeKind::Bridge(e)));
    }
    for v in analysis.pendants().iter() {
        vertex_node.insert(v, nodes.len());
        nodes.push(leaf(NodeKind::Pendant(v)));
    }

    let mut adjacent: Vec<Vec<NodeId>> = vec![Vec::new(); nodes.len()];
    for (&c, members) in component_nodes.iter().zip(analysis.components()) {
        for v in members.iter() {
            if let Some(&a) = articulation_nodes.get(&v) {
                adjacent[c].push(a);
                adjacent[a].push(c);
            }
        }
    }
    for (&b, e) in bridge_nodes.iter().zip(analysis.bridges()) {
        for v in [e.u(), e.v()] {
            if let Some(&x) = vertex_node.get(&v) {
                adjacent[b].push(x);
                adjacent[x].push(b);
            }
        }
    }
    for list in &mut adjacent {
        list.sort_unstable();
    }

    let root = component_nodes
        .iter()
        .copied()
        .min_by_key(|&c| match &nodes[c].kind {
            NodeKind::Component(members) => members.to_vec(),
            _ => unreachable!(),
        })
        .expect("at least one component");

    let mut visited = vec![false; nodes.len()];
    visited[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in &adjacent[x] {
            if !visited[y] {
                visited[y] = true;
                nodes[y].parent = Some(x);
                nodes[x].children.push(y);
                queue.push_back(y);
            }
        }
        let attachment = match &nodes[x].kind {
            NodeKind::Pendant(v) | NodeKind::Articulation(v) => Some(*v),
            NodeKind::Bridge(_) | NodeKind::Component(_) => {
                nodes[x].parent.and_then(|p| nodes[p].attachment)
            }
        };
        nodes[x].attachment = attachment;
    }
    debug_assert!(
        visited.iter().all(|&seen| seen),
        "ABC-tree must be connected"
    );

    Ok(AbcTree {
        nodes,
        root,
        articulation_nodes,
        vertex_count: n,
    })
}

fn leaf(kind: NodeKind) -> TreeNode {
    TreeNode {
        kind,
        parent: None,
        children: Vec::new(),
        attachment: None,
    }
}
