//! Graph families and seeded random generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn invalid(msg: impl Into<String>) -> GenerateError {
    GenerateError::InvalidParameter(msg.into())
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::new(n, edges).expect("generator produces valid edges")
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|v| (v - 1, v)).collect())
}

pub fn cycle(n: usize) -> Result<Graph, GenerateError> {
    if n < 3 {
        return Err(invalid(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    Ok(build(n, (0..n).map(|v| (v, (v + 1) % n)).collect()))
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GenerateError> {
    if a == 0 || b == 0 {
        return Err(invalid(
            "both parts of a complete bipartite graph must be non-empty",
        ));
    }
    Ok(build(
        a + b,
        (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect(),
    ))
}

/// Center 0 with `n` leaves.
pub fn star(n: usize) -> Graph {
    build(n + 1, (1..=n).map(|v| (0, v)).collect())
}

pub fn complete(n: usize) -> Graph {
    build(
        n,
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
    )
}

/// Attaches a fresh pendant vertex `n + v` to every vertex `v` of `base`.
pub fn sputnik_of(base: &Graph) -> Graph {
    let n = base.n();
    let mut edges: Vec<(usize, usize)> = base.edges().iter().map(|e| e.endpoints()).collect();
    edges.extend((0..n).map(|v| (v, n + v)));
    build(2 * n, edges)
}

/// Original vertex ids of the component fixture, in local order.
pub const FIXTURE_COMPONENT_B_IDS: [usize; 8] = [1, 2, 6, 8, 9, 10, 11, 13];

/// An 8-vertex, 9-edge biconnected test component, densely re-indexed in
/// the order of [`FIXTURE_COMPONENT_B_IDS`].
pub fn fixture_component_b() -> Graph {
    let original = [
        (1, 2),
        (2, 6),
        (6, 8),
        (8, 9),
        (9, 10),
        (10, 11),
        (11, 13),
        (13, 1),
        (2, 11),
    ];
    let local = |v: usize| {
        FIXTURE_COMPONENT_B_IDS
            .iter()
            .position(|&w| w == v)
            .expect("fixture id")
    };
    build(
        8,
        original
            .iter()
            .map(|&(u, v)| (local(u), local(v)))
            .collect(),
    )
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random recursive spanning tree over a shuffled vertex order plus
/// every remaining pair independently with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    random_connected_with(n, p, &mut rng_from_seed(seed))
}

pub fn random_connected_with<R: Rng>(
    n: usize,
    p: f64,
    rng: &mut R,
) -> Result<Graph, GenerateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    let mut present = vec![false; n * n];
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (u, v) = (order[i], order[j]);
        edges.push((u, v));
        present[u * n + v] = true;
        present[v * n + u] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present[u * n + v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(build(n, edges))
}

/// Connected graph with `n` vertices and roughly `n * degree / 2` edges:
/// a random spanning tree plus uniformly sampled extra pairs.
pub fn random_sparse_connected<R: Rng>(
    n: usize,
    degree: f64,
    rng: &mut R,
) -> Result<Graph, GenerateError> {
    if n < 2 {
        return Ok(Graph::empty(n));
    }
    let target = ((n as f64 * degree / 2.0).round() as usize).clamp(n - 1, n * (n - 1) / 2);
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(target);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let (u, v) = (order[i], order[rng.gen_range(0..i)]);
        seen.insert((u.min(v), u.max(v)));
        edges.push((u, v));
    }
    while edges.len() < target {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    Ok(build(n, edges))
}

/// Random biconnected graph on `n >= 3` vertices built from a cycle by
/// adding ears, each a path between two distinct existing vertices, then
/// `chords` extra edges. With `bipartite` set, every ear respects a fixed
/// two-coloring so the result is bipartite.
pub fn random_biconnected<R: Rng>(
    n: usize,
    chords: usize,
    bipartite: bool,
    rng: &mut R,
) -> Result<Graph, GenerateError> {
    if n < 3 || (bipartite && n < 4) {
        return Err(invalid(format!(
            "too few vertices for a biconnected graph: {n}"
        )));
    }
    let mut color = vec![false; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut has = std::collections::HashSet::new();
    let mut add = |edges: &mut Vec<(usize, usize)>, u: usize, v: usize| {
        if has.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
            true
        } else {
            false
        }
    };

    let mut len = rng.gen_range(3..=n);
    if bipartite {
        len = rng.gen_range(2..=n / 2) * 2;
    }
    for (v, c) in color.iter_mut().enumerate().take(len) {
        *c = v % 2 == 1;
        add(&mut edges, v, (v + 1) % len);
    }
    let mut used = len;
    while used < n {
        let u = rng.gen_range(0..used);
        let mut v = rng.gen_range(0..used - 1);
        if v >= u {
            v += 1;
        }
        let room = n - used;
        let mut internal = rng.gen_range(1..=room.min(4));
        if bipartite {
            // same colors need an odd number of internal vertices
            let want_odd = color[u] == color[v];
            if (internal % 2 == 1) != want_odd {
                if internal < room.min(4) {
                    internal += 1;
                } else if internal > 1 {
                    internal -= 1;
                } else {
                    continue;
                }
            }
        }
        let mut prev = u;
        for k in 0..internal {
            let w = used + k;
            color[w] = !color[prev];
            add(&mut edges, prev, w);
            prev = w;
        }
        add(&mut edges, prev, v);
        used += internal;
    }
    let mut attempts = 0;
    let mut added = 0;
    while added < chords && attempts < 20 * (chords + 1) {
        attempts += 1;
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || (bipartite && color[u] == color[v]) {
            continue;
        }
        if add(&mut edges, u, v) {
            added += 1;
        }
    }
    Ok(build(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::is_biconnected;

    #[test]
    fn families() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
        assert!(cycle(2).is_err());
        let k = complete_bipartite(2, 3).unwrap();
        assert_eq!((k.n(), k.edge_count()), (5, 6));
        assert_eq!(star(4).degree(0), 4);
        assert_eq!(complete(5).edge_count(), 10);
        let s = sputnik_of(&cycle(3).unwrap());
        assert_eq!((s.n(), s.edge_count()), (6, 6));
    }

    #[test]
    fn fixture_shape() {
        let g = fixture_component_b();
        assert_eq!((g.n(), g.edge_count()), (8, 9));
        assert!(is_biconnected(&g));
        assert!(g.has_edge(1, 6));
    }

    #[test]
    fn random_connected_is_reproducible() {
        let a = random_connected(30, 0.1, 7).unwrap();
        let b = random_connected(30, 0.1, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected());
        assert!(random_connected(5, 1.5, 0).is_err());
    }

    #[test]
    fn sparse_connected_hits_target() {
        let g = random_sparse_connected(500, 4.0, &mut rng_from_seed(1)).unwrap();
        assert!(g.is_connected());
        assert_eq!(g.edge_count(), 1000);
    }

    #[test]
    fn random_biconnected_properties() {
        let mut rng = rng_from_seed(3);
        for i in 0..200 {
            let n = 4 + i % 9;
            let bip = i % 2 == 0;
            let g = random_biconnected(n, i % 4, bip, &mut rng).unwrap();
            assert_eq!(g.n(), n);
            assert!(is_biconnected(&g), "{g:?}");
            if bip {
                assert!(g.is_bipartite());
            }
        }
    }
}
