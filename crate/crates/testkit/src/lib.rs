//! Exhaustive small-graph families for oracle sweeps.
//!
//! Graphs are returned as plain edge lists so the crate stays independent
//! of the code under test.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SmallGraph {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        SmallGraph { n, edges }
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn petgraph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::with_capacity(self.n, self.edges.len());
        let nodes: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for &(u, v) in &self.edges {
            g.add_edge(nodes[u], nodes[v], ());
        }
        g
    }

    /// Isomorphism-invariant fingerprint from three rounds of color refinement.
    fn fingerprint(&self) -> u64 {
        let adj = self.adjacency();
        let mut colors: Vec<u64> = adj.iter().map(|a| a.len() as u64).collect();
        for _ in 0..3 {
            colors = adj
                .iter()
                .enumerate()
                .map(|(v, a)| {
                    let mut around: Vec<u64> = a.iter().map(|&w| colors[w]).collect();
                    around.sort_unstable();
                    let mut h = DefaultHasher::new();
                    (colors[v], around).hash(&mut h);
                    h.finish()
                })
                .collect();
        }
        colors.sort_unstable();
        let mut h = DefaultHasher::new();
        (self.n, self.edges.len(), colors).hash(&mut h);
        h.finish()
    }
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut pieces = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            pieces -= 1;
        }
    }
    pieces == 1
}

/// Every connected graph on vertex set `0..n`, labeled (not up to
/// isomorphism), ordered by edge bitmask.
pub fn connected_labeled_graphs(n: usize) -> Vec<SmallGraph> {
    assert!(n <= 7, "labeled enumeration beyond 7 vertices is too large");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if is_connected(n, &edges) {
            out.push(SmallGraph { n, edges });
        }
    }
    out
}

/// Collects graphs, keeping one representative per isomorphism class.
#[derive(Default)]
pub struct IsoClasses {
    buckets: HashMap<u64, Vec<usize>>,
    reps: Vec<SmallGraph>,
}

impl IsoClasses {
    pub fn new() -> Self {
        IsoClasses::default()
    }

    /// Adds `g` unless an isomorphic graph is already present.
    pub fn insert(&mut self, g: SmallGraph) -> bool {
        let bucket = self.buckets.entry(g.fingerprint()).or_default();
        let pg = g.petgraph();
        if bucket
            .iter()
            .any(|&i| is_isomorphic(&self.reps[i].petgraph(), &pg))
        {
            return false;
        }
        bucket.push(self.reps.len());
        self.reps.push(g);
        true
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn into_vec(self) -> Vec<SmallGraph> {
        self.reps
    }
}

/// One representative of every connected graph with `1..=max_n` vertices.
pub fn connected_graphs_by_order(max_n: usize) -> Vec<SmallGraph> {
    let mut all = Vec::new();
    if max_n == 0 {
        return all;
    }
    let mut layer = vec![SmallGraph::new(1, Vec::new())];
    all.extend(layer.clone());
    for n in 2..=max_n {
        // every connected graph has a vertex whose removal keeps it connected
        let mut classes = IsoClasses::new();
        for g in &layer {
            let old = n - 1;
            for subset in 1u32..(1 << old) {
                let mut edges = g.edges.clone();
                edges.extend((0..old).filter(|&v| subset >> v & 1 == 1).map(|v| (v, old)));
                classes.insert(SmallGraph::new(n, edges));
            }
        }
        layer = classes.into_vec();
        all.extend(layer.iter().cloned());
    }
    all
}

/// One representative of every connected graph with at most `max_m` edges,
/// including the single vertex.
pub fn connected_graphs_by_size(max_m: usize) -> Vec<SmallGraph> {
    let mut layer = vec![SmallGraph::new(1, Vec::new())];
    let mut all = layer.clone();
    for _ in 0..max_m {
        // every connected graph with an edge has a pendant edge or a cycle edge
        let mut classes = IsoClasses::new();
        for g in &layer {
            for u in 0..g.n {
                let mut edges = g.edges.clone();
                edges.push((u, g.n));
                classes.insert(SmallGraph::new(g.n + 1, edges));
                for v in u + 1..g.n {
                    if !g.has_edge(u, v) {
                        let mut edges = g.edges.clone();
                        edges.push((u, v));
                        classes.insert(SmallGraph::new(g.n, edges));
                    }
                }
            }
        }
        layer = classes.into_vec();
        all.extend(layer.iter().cloned());
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts() {
        // connected labeled graphs on n vertices
        let counts: Vec<usize> = (1..=5).map(|n| connected_labeled_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn unlabeled_counts_by_order() {
        let all = connected_graphs_by_order(7);
        let mut per_n = [0usize; 8];
        for g in &all {
            per_n[g.n] += 1;
        }
        assert_eq!(&per_n[1..], &[1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn unlabeled_counts_by_size() {
        let all = connected_graphs_by_size(8);
        let mut per_m = [0usize; 9];
        for g in &all {
            assert!(is_connected(g.n, &g.edges));
            per_m[g.edges.len()] += 1;
        }
        assert_eq!(per_m, [1, 1, 1, 3, 5, 12, 30, 79, 227]);
    }
}
