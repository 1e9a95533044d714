//! Three-way robustness classification.
//!
//! Every MIS is robust exactly when the graph is complete bipartite or a
//! sputnik (every vertex on a cycle has a pendant neighbor). Otherwise the
//! decision procedure separates graphs with some robust MIS from those with
//! none.

use std::fmt;

use thiserror::Error;

use crate::construction::{extract_rmis, ConstructionError};
use crate::decomposition::{analyze_blocks, is_biconnected};
use crate::graph::{Edge, Graph, VertexSet};
use crate::labeling::{decide, LabelingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassificationError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

pub fn is_complete_bipartite(g: &Graph) -> bool {
    match g.bipartition() {
        Some(parts) => {
            let left = parts.part(0).len();
            g.edge_count() == left * (g.n() - left)
        }
        None => false,
    }
}

/// True when every vertex incident to a non-bridge edge has a neighbor of
/// degree one.
pub fn is_sputnik(g: &Graph) -> bool {
    let Ok(blocks) = analyze_blocks(g) else {
        return false;
    };
    g.vertices()
        .filter(|&v| {
            g.neighbors(v)
                .iter()
                .any(|&w| !blocks.is_bridge(Edge::new(v, w)))
        })
        .all(|v| g.neighbors(v).iter().any(|&w| g.degree(w) == 1))
}

pub fn all_mis_robust(g: &Graph) -> bool {
    is_complete_bipartite(g) || is_sputnik(g)
}

/// For biconnected graphs a robust MIS exists iff the graph is bipartite.
/// `None` when the graph is not biconnected.
pub fn biconnected_shortcut(g: &Graph) -> Option<bool> {
    is_biconnected(g).then(|| g.is_bipartite())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RobustnessTag {
    AllRobust,
    SomeRobust,
    NoneRobust,
}

impl fmt::Display for RobustnessTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RobustnessTag::AllRobust => "ALL_ROBUST",
            RobustnessTag::SomeRobust => "SOME_ROBUST",
            RobustnessTag::NoneRobust => "NONE_ROBUST",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    CompleteBipartite,
    Sputnik,
    Tree,
    Witness(VertexSet),
    BiconnectedNonBipartite,
    AlgorithmReject,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::CompleteBipartite => f.write_str("complete-bipartite"),
            Evidence::Sputnik => f.write_str("sputnik"),
            Evidence::Tree => f.write_str("tree"),
            Evidence::Witness(set) => {
                let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                write!(f, "witness {}", ids.join(","))
            }
            Evidence::BiconnectedNonBipartite => f.write_str("biconnected-non-bipartite"),
            Evidence::AlgorithmReject => f.write_str("algorithm-reject"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustnessClass {
    pub tag: RobustnessTag,
    pub evidence: Evidence,
}

impl fmt::Display for RobustnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.tag, self.evidence)
    }
}

pub fn classify(g: &Graph) -> Result<RobustnessClass, ClassificationError> {
    if !g.is_connected() {
        return Err(ClassificationError::Disconnected);
    }
    let all = |evidence| {
        Ok(RobustnessClass {
            tag: RobustnessTag::AllRobust,
            evidence,
        })
    };
    if is_complete_bipartite(g) {
        return all(Evidence::CompleteBipartite);
    }
    if g.edge_count() + 1 == g.n() {
        return all(Evidence::Tree);
    }
    if is_sputnik(g) {
        return all(Evidence::Sputnik);
    }
    let decision = decide(g)?;
    if decision.accepts() {
        let witness = extract_rmis(g, &decision)?;
        return Ok(RobustnessClass {
            tag: RobustnessTag::SomeRobust,
            evidence: Evidence::Witness(witness.into_set()),
        });
    }
    let evidence = if biconnected_shortcut(g) == Some(false) {
        Evidence::BiconnectedNonBipartite
    } else {
        Evidence::AlgorithmReject
    };
    Ok(RobustnessClass {
        tag: RobustnessTag::NoneRobust,
        evidence,
    })
}
