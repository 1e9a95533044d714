//! Building a robust MIS once the decision procedure accepts.
//!
//! The root component's satisfying assignment fixes the status of its
//! vertices. Walking down the tree, every node picks a label compatible with
//! the status of its attachment vertex and reuses the assignment computed for
//! that label during labeling.

use thiserror::Error;

use crate::decomposition::{NodeId, NodeKind};
use crate::graph::{Graph, VertexSet};
use crate::labeling::{CheckPurpose, Decision, Label};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("the decision rejected the graph, no robust MIS exists")]
    NotAccepted,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("decision does not match the graph")]
    GraphMismatch,
    #[error("node {node} has no label compatible with its attachment vertex")]
    Inconsistent { node: NodeId },
    #[error("vertex {vertex} was never assigned")]
    Unassigned { vertex: usize },
}

/// Label picked for a tree node during construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Choice {
    pub node: NodeId,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RmisWitness {
    set: VertexSet,
    choices: Vec<Choice>,
}

impl RmisWitness {
    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn into_set(self) -> VertexSet {
        self.set
    }

    /// Labels chosen per non-root node, in visiting order. Empty when the
    /// graph is a tree.
    pub fn choices(&self) -> &[Choice] {
        &self.choices
    }
}

/// Smallest-id-first greedy MIS.
pub fn greedy_mis(g: &Graph) -> VertexSet {
    let mut set = VertexSet::new(g.n());
    let mut blocked = vec![false; g.n()];
    for v in g.vertices() {
        if !blocked[v] {
            set.insert(v);
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    set
}

/// The bipartition side containing vertex 0 (and, in every other connected
/// component, the side of its smallest vertex).
pub fn bipartite_rmis(g: &Graph) -> Result<RmisWitness, ConstructionError> {
    let parts = g.bipartition().ok_or(ConstructionError::NotBipartite)?;
    Ok(RmisWitness {
        set: parts.part(0),
        choices: Vec::new(),
    })
}

/// Builds a robust MIS from an accepting decision on `g`.
pub fn extract_rmis(g: &Graph, decision: &Decision) -> Result<RmisWitness, ConstructionError> {
    if !decision.accepts() {
        return Err(ConstructionError::NotAccepted);
    }
    let Some(tree) = decision.tree() else {
        return Ok(RmisWitness {
            set: greedy_mis(g),
            choices: Vec::new(),
        });
    };
    if tree.vertex_count() != g.n() {
        return Err(ConstructionError::GraphMismatch);
    }

    let mut status: Vec<Option<bool>> = vec![None; g.n()];
    let mut choices = Vec::new();
    let root = tree.root();
    let root_check = decision
        .check(root, CheckPurpose::Root)
        .ok_or(ConstructionError::NotAccepted)?;
    let solution = root_check
        .outcome
        .solution()
        .ok_or(ConstructionError::NotAccepted)?;
    for local in 0..root_check.problem.graph().n() {
        status[root_check.problem.map().parent(local)] = Some(solution.selected().contains(local));
    }

    let mut stack: Vec<(NodeId, bool)> = Vec::new();
    let push_children = |stack: &mut Vec<(NodeId, bool)>, x: NodeId, status: &[Option<bool>]| {
        for &a in tree.children(x).iter().rev() {
            let v = tree
                .attachment(a)
                .expect("non-root nodes have an attachment");
            stack.push((a, status[v].expect("component vertices are assigned")));
        }
    };
    push_children(&mut stack, root, &status);

    while let Some((x, included)) = stack.pop() {
        let labels = decision.labels()[x];
        let label = if included {
            labels.pi().then_some(Label::PossiblyIn)
        } else if labels.po() {
            Some(Label::PossiblyOut)
        } else {
            labels.pe().then_some(Label::PossiblyExternal)
        }
        .ok_or(ConstructionError::Inconsistent { node: x })?;
        choices.push(Choice { node: x, label });

        let attachment = tree
            .attachment(x)
            .expect("non-root nodes have an attachment");
        match tree.kind(x) {
            NodeKind::Pendant(v) | NodeKind::Articulation(v) => {
                if status[*v].is_some_and(|s| s != included) {
                    return Err(ConstructionError::Inconsistent { node: x });
                }
                status[*v] = Some(included);
                for &c in tree.children(x).iter().rev() {
                    stack.push((c, included));
                }
            }
            NodeKind::Bridge(e) => {
                let far_in = label == Label::PossiblyOut;
                let [child] = tree.children(x)[..] else {
                    return Err(ConstructionError::Inconsistent { node: x });
                };
                debug_assert_eq!(tree.attachment(child), Some(e.other(attachment)));
                stack.push((child, far_in));
            }
            NodeKind::Component(_) => {
                let purpose = match label {
                    Label::PossiblyIn => CheckPurpose::Include,
                    Label::PossiblyOut => CheckPurpose::Exclude,
                    Label::PossiblyExternal => CheckPurpose::External,
                };
                let check = decision
                    .check(x, purpose)
                    .ok_or(ConstructionError::Inconsistent { node: x })?;
                let solution = check
                    .outcome
                    .solution()
                    .ok_or(ConstructionError::Inconsistent { node: x })?;
                for local in 0..check.problem.graph().n() {
                    let v = check.problem.map().parent(local);
                    let s = solution.selected().contains(local);
                    if v == attachment && s != included {
                        return Err(ConstructionError::Inconsistent { node: x });
                    }
                    status[v] = Some(s);
                }
                push_children(&mut stack, x, &status);
            }
        }
    }

    let mut set = VertexSet::new(g.n());
    for (v, s) in status.iter().enumerate() {
        match s {
            Some(true) => {
                set.insert(v);
            }
            Some(false) => {}
            None => return Err(ConstructionError::Unassigned { vertex: v }),
        }
    }
    Ok(RmisWitness { set, choices })
}
