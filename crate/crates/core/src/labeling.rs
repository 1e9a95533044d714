//! Label propagation over the ABC-tree.
//!
//! Every non-root node `x` receives a subset of three labels describing the
//! robust MISs of the subgraph spanned by its subtree, relative to the
//! attachment vertex `v(x)`:
//!
//! * `PI`: some robust MIS includes `v(x)`;
//! * `PO`: some robust MIS excludes `v(x)` and covers it from inside;
//! * `PE`: no `PO`, but excluding `v(x)` works once an external neighbor
//!   of `v(x)` is in the set.
//!
//! Pendants, articulation points and bridges are labeled by local rules.
//! Biconnected components are labeled through a 2-SAT encoding of the
//! constraints carried by their articulation vertices, see
//! [`is_satisfiable`].

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::decomposition::{
    analyze_blocks, build_abc_tree, AbcTree, DecompositionError, NodeId, NodeKind,
};
use crate::graph::{Edge, Graph, VertexMap, VertexSet};
use crate::twosat::{Assignment, Literal, TwoSatFormula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("graph is disconnected; decide each connected component separately")]
    Disconnected,
    #[error("node {node} is a {found} node, expected {expected}")]
    WrongKind {
        node: NodeId,
        found: &'static str,
        expected: &'static str,
    },
    #[error("invalid component problem: {0}")]
    InvalidProblem(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    PossiblyIn,
    PossiblyOut,
    PossiblyExternal,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::PossiblyIn => "PI",
            Label::PossiblyOut => "PO",
            Label::PossiblyExternal => "PE",
        })
    }
}

/// A subset of {PI, PO, PE} in which PO and PE never coexist: inserting PO
/// evicts PE, and PE is ignored while PO is present.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LabelSet {
    pi: bool,
    po: bool,
    pe: bool,
}

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet {
        pi: false,
        po: false,
        pe: false,
    };

    pub fn of(labels: &[Label]) -> Self {
        let mut set = LabelSet::EMPTY;
        for &l in labels {
            set.insert(l);
        }
        set
    }

    pub fn insert(&mut self, label: Label) {
        match label {
            Label::PossiblyIn => self.pi = true,
            Label::PossiblyOut => {
                self.po = true;
                self.pe = false;
            }
            Label::PossiblyExternal => {
                if !self.po {
                    self.pe = true;
                }
            }
        }
    }

    pub fn has(&self, label: Label) -> bool {
        match label {
            Label::PossiblyIn => self.pi,
            Label::PossiblyOut => self.po,
            Label::PossiblyExternal => self.pe,
        }
    }

    pub fn pi(&self) -> bool {
        self.pi
    }

    pub fn po(&self) -> bool {
        self.po
    }

    pub fn pe(&self) -> bool {
        self.pe
    }

    pub fn is_empty(&self) -> bool {
        !(self.pi || self.po || self.pe)
    }

    /// True when the set is exactly `{label}`.
    pub fn is_only(&self, label: Label) -> bool {
        *self == LabelSet::of(&[label])
    }

    pub fn labels(&self) -> Vec<Label> {
        [
            Label::PossiblyIn,
            Label::PossiblyOut,
            Label::PossiblyExternal,
        ]
        .into_iter()
        .filter(|&l| self.has(l))
        .collect()
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.labels().iter().map(Label::to_string).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Forced status of the attachment vertex in a component check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttachmentFlag {
    In,
    Out,
    Free,
}

impl fmt::Display for AttachmentFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttachmentFlag::In => "in",
            AttachmentFlag::Out => "out",
            AttachmentFlag::Free => "none",
        })
    }
}

/// A biconnected component together with the labels constraining its
/// articulation vertices and the requested status of its attachment vertex.
///
/// Vertex ids are local to the component graph; `map` translates them back
/// to the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentProblem {
    graph: Graph,
    map: VertexMap,
    constraints: Vec<LabelSet>,
    attachment: Option<usize>,
    flag: AttachmentFlag,
}

impl ComponentProblem {
    /// A problem over `graph` whose vertices are their own input ids.
    pub fn new(
        graph: Graph,
        constraints: Vec<LabelSet>,
        attachment: Option<usize>,
        flag: AttachmentFlag,
    ) -> Result<Self, LabelingError> {
        let map = VertexMap::identity(graph.n());
        ComponentProblem::with_map(graph, map, constraints, attachment, flag)
    }

    pub fn with_map(
        graph: Graph,
        map: VertexMap,
        constraints: Vec<LabelSet>,
        attachment: Option<usize>,
        flag: AttachmentFlag,
    ) -> Result<Self, LabelingError> {
        if constraints.len() != graph.n() || map.len() != graph.n() {
            return Err(LabelingError::InvalidProblem(
                "one constraint and one id per vertex required",
            ));
        }
        if attachment.is_some_and(|a| a >= graph.n()) {
            return Err(LabelingError::InvalidProblem(
                "attachment vertex outside the component",
            ));
        }
        if attachment.is_none() && flag != AttachmentFlag::Free {
            return Err(LabelingError::InvalidProblem(
                "in/out flag needs an attachment vertex",
            ));
        }
        Ok(ComponentProblem {
            graph,
            map,
            constraints,
            attachment,
            flag,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn map(&self) -> &VertexMap {
        &self.map
    }

    pub fn constraints(&self) -> &[LabelSet] {
        &self.constraints
    }

    pub fn constraint(&self, v: usize) -> LabelSet {
        self.constraints[v]
    }

    pub fn attachment(&self) -> Option<usize> {
        self.attachment
    }

    pub fn flag(&self) -> AttachmentFlag {
        self.flag
    }

    /// Same problem with a different attachment flag.
    pub fn with_flag(&self, flag: AttachmentFlag) -> Result<Self, LabelingError> {
        ComponentProblem::with_map(
            self.graph.clone(),
            self.map.clone(),
            self.constraints.clone(),
            self.attachment,
            flag,
        )
    }
}

/// A satisfying configuration of a component problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSolution {
    formula: TwoSatFormula,
    assignment: Assignment,
    literals: Vec<Literal>,
    selected: VertexSet,
}

impl ComponentSolution {
    pub fn formula(&self) -> &TwoSatFormula {
        &self.formula
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    /// The literal `ℓ(v)` attached to every local vertex.
    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    /// Local vertices whose literal is true under the assignment.
    pub fn selected(&self) -> &VertexSet {
        &self.selected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    /// The component minus its PO–PO edges has an odd cycle.
    NotBipartite,
    Unsatisfiable,
    Satisfied(ComponentSolution),
}

impl SatOutcome {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, SatOutcome::Satisfied(_))
    }

    pub fn solution(&self) -> Option<&ComponentSolution> {
        match self {
            SatOutcome::Satisfied(solution) => Some(solution),
            _ => None,
        }
    }
}

/// Decides whether the component admits a robust MIS compatible with its
/// constraints and attachment flag.
///
/// Edges whose endpoints both carry PO are set aside; the remaining graph
/// must be bipartite, and each of its connected components contributes one
/// boolean variable selecting which side joins the set. The side holding
/// the smallest vertex of a component gets the positive literal.
pub fn is_satisfiable(problem: &ComponentProblem) -> SatOutcome {
    let g = &problem.graph;
    let n = g.n();
    let po = |v: usize| problem.constraints[v].po();
    let is_po_edge = |e: Edge| po(e.u()) && po(e.v());

    const UNSET: usize = usize::MAX;
    let mut component = vec![UNSET; n];
    let mut side = vec![false; n];
    let mut var_count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if component[start] != UNSET {
            continue;
        }
        component[start] = var_count;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if is_po_edge(Edge::new(u, w)) {
                    continue;
                }
                if component[w] == UNSET {
                    component[w] = var_count;
                    side[w] = !side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return SatOutcome::NotBipartite;
                }
            }
        }
        var_count += 1;
    }

    let literals: Vec<Literal> = (0..n)
        .map(|v| {
            if side[v] {
                Literal::neg(component[v])
            } else {
                Literal::pos(component[v])
            }
        })
        .collect();

    let mut formula = TwoSatFormula::new(var_count);
    let mut require = |a: Literal, b: Literal| {
        formula
            .add_clause(a, b)
            .expect("literals are built over the formula's variables");
    };
    for (v, labels) in problem.constraints.iter().enumerate() {
        if labels.is_only(Label::PossiblyIn) {
            require(literals[v], literals[v]);
        } else if labels.is_only(Label::PossiblyOut) || labels.is_only(Label::PossiblyExternal) {
            require(!literals[v], !literals[v]);
        }
    }
    for &e in g.edges() {
        if is_po_edge(e) {
            require(!literals[e.u()], !literals[e.v()]);
        }
    }
    if let Some(a) = problem.attachment {
        match problem.flag {
            AttachmentFlag::In => require(literals[a], literals[a]),
            AttachmentFlag::Out => require(!literals[a], !literals[a]),
            AttachmentFlag::Free => {}
        }
    }

    match formula.solve() {
        None => SatOutcome::Unsatisfiable,
        Some(assignment) => {
            let mut selected = VertexSet::new(n);
            for (v, &lit) in literals.iter().enumerate() {
                if assignment.eval(lit) {
                    selected.insert(v);
                }
            }
            SatOutcome::Satisfied(ComponentSolution {
                formula,
                assignment,
                literals,
                selected,
            })
        }
    }
}

/// Pendant rule: always `{PI, PE}`.
pub fn label_pendant(tree: &AbcTree, x: NodeId) -> Result<LabelSet, LabelingError> {
    match tree.kind(x) {
        NodeKind::Pendant(_) => Ok(LabelSet::of(&[Label::PossiblyIn, Label::PossiblyExternal])),
        other => Err(LabelingError::WrongKind {
            node: x,
            found: other.tag(),
            expected: "P",
        }),
    }
}

/// Articulation rule: PI when every child has PI; when every child has PO
/// or PE, PO if at least one has PO and PE otherwise.
pub fn label_articulation(children: &[LabelSet]) -> LabelSet {
    let mut result = LabelSet::EMPTY;
    if children.iter().all(|c| c.pi()) {
        result.insert(Label::PossiblyIn);
    }
    if children.iter().all(|c| c.po() || c.pe()) {
        if children.iter().any(|c| c.po()) {
            result.insert(Label::PossiblyOut);
        } else {
            result.insert(Label::PossiblyExternal);
        }
    }
    result
}

/// Bridge rule, translating the far endpoint's labels to the near one.
pub fn label_bridge(child: LabelSet) -> LabelSet {
    let mut result = LabelSet::EMPTY;
    if child.pi() {
        result.insert(Label::PossiblyOut);
    }
    if child.pe() {
        result.insert(Label::PossiblyIn);
    }
    if child.po() {
        result.insert(Label::PossiblyIn);
        // dropped again below if PO is also present
        result.insert(Label::PossiblyExternal);
    }
    result
}

/// Why a component check was run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckPurpose {
    /// `in` flag, grants PI.
    Include,
    /// `out` flag, grants PO.
    Exclude,
    /// `out` flag with an artificial PO on the parent, grants PE.
    External,
    /// Final unconstrained check at the root.
    Root,
}

impl CheckPurpose {
    /// The label this check grants when it succeeds.
    pub fn label(self) -> Option<Label> {
        match self {
            CheckPurpose::Include => Some(Label::PossiblyIn),
            CheckPurpose::Exclude => Some(Label::PossiblyOut),
            CheckPurpose::External => Some(Label::PossiblyExternal),
            CheckPurpose::Root => None,
        }
    }
}

/// One invocation of [`is_satisfiable`] made while labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCheck {
    pub node: NodeId,
    pub purpose: CheckPurpose,
    pub problem: ComponentProblem,
    pub outcome: SatOutcome,
}

/// Builds the check problem for component node `x`.
///
/// Articulation vertices below `x` carry their children's labels. The
/// articulation vertex above `x` is not labeled yet, so it stays
/// unconstrained unless `artificial_parent_po` is set, in which case it is
/// treated as labeled `{PO}`.
pub fn component_problem(
    g: &Graph,
    tree: &AbcTree,
    labels: &[LabelSet],
    x: NodeId,
    flag: AttachmentFlag,
    artificial_parent_po: bool,
) -> Result<ComponentProblem, LabelingError> {
    let NodeKind::Component(members) = tree.kind(x) else {
        return Err(LabelingError::WrongKind {
            node: x,
            found: tree.kind(x).tag(),
            expected: "C",
        });
    };
    let (graph, map) = g.induced_subgraph(members);
    let parent = tree.parent(x);
    let constraints = map
        .parent_ids()
        .iter()
        .map(|&v| match tree.articulation_node(v) {
            Some(a) if Some(a) == parent => {
                if artificial_parent_po {
                    LabelSet::of(&[Label::PossiblyOut])
                } else {
                    LabelSet::EMPTY
                }
            }
            Some(a) => labels[a],
            None => LabelSet::EMPTY,
        })
        .collect();
    let attachment = tree.attachment(x).and_then(|v| map.local(v));
    ComponentProblem::with_map(graph, map, constraints, attachment, flag)
}

/// Component rule for a non-root component node whose children are labeled.
/// Returns the label set together with the checks it ran.
pub fn label_component(
    g: &Graph,
    tree: &AbcTree,
    labels: &[LabelSet],
    x: NodeId,
) -> Result<(LabelSet, Vec<ComponentCheck>), LabelingError> {
    if tree.parent(x).is_none() {
        return Err(LabelingError::InvalidProblem(
            "the root component is not labeled",
        ));
    }
    let mut result = LabelSet::EMPTY;
    let mut checks = Vec::new();
    let mut run = |purpose: CheckPurpose, flag, artificial| -> Result<bool, LabelingError> {
        let problem = component_problem(g, tree, labels, x, flag, artificial)?;
        let outcome = is_satisfiable(&problem);
        let ok = outcome.is_satisfied();
        checks.push(ComponentCheck {
            node: x,
            purpose,
            problem,
            outcome,
        });
        Ok(ok)
    };
    if run(CheckPurpose::Include, AttachmentFlag::In, false)? {
        result.insert(Label::PossiblyIn);
    }
    if run(CheckPurpose::Exclude, AttachmentFlag::Out, false)? {
        result.insert(Label::PossiblyOut);
    } else if run(CheckPurpose::External, AttachmentFlag::Out, true)? {
        result.insert(Label::PossiblyExternal);
    }
    Ok((result, checks))
}

/// Labels node `x` from the labels of its children.
pub fn label_node(
    g: &Graph,
    tree: &AbcTree,
    labels: &[LabelSet],
    x: NodeId,
) -> Result<(LabelSet, Vec<ComponentCheck>), LabelingError> {
    let children: Vec<LabelSet> = tree.children(x).iter().map(|&c| labels[c]).collect();
    match tree.kind(x) {
        NodeKind::Pendant(_) => Ok((label_pendant(tree, x)?, Vec::new())),
        NodeKind::Articulation(_) => Ok((label_articulation(&children), Vec::new())),
        NodeKind::Bridge(_) => {
            let [child] = children[..] else {
                return Err(LabelingError::InvalidProblem(
                    "a bridge node has exactly one child",
                ));
            };
            Ok((label_bridge(child), Vec::new()))
        }
        NodeKind::Component(_) => label_component(g, tree, labels, x),
    }
}

/// Labeling stopped because node `node` ended up with no label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no robust MIS: node {node} received an empty label set")]
pub struct Rejection {
    pub node: NodeId,
}

/// Labels every node of the subtree rooted at the non-root node `x`,
/// children first. Stops at the first node whose label set is empty.
pub fn label_subtree(
    g: &Graph,
    tree: &AbcTree,
    x: NodeId,
    labels: &mut [LabelSet],
    checks: &mut Vec<ComponentCheck>,
) -> Result<Result<(), Rejection>, LabelingError> {
    for node in tree.post_order(x) {
        let (set, node_checks) = label_node(g, tree, labels, node)?;
        labels[node] = set;
        checks.extend(node_checks);
        if set.is_empty() {
            return Ok(Err(Rejection { node }));
        }
    }
    Ok(Ok(()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject,
}

/// Outcome of the decision procedure on a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    verdict: Verdict,
    tree: Option<AbcTree>,
    labels: Vec<LabelSet>,
    checks: Vec<ComponentCheck>,
    rejection: Option<Rejection>,
}

impl Decision {
    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn accepts(&self) -> bool {
        self.verdict == Verdict::Accept
    }

    /// `None` when the graph has no biconnected component.
    pub fn tree(&self) -> Option<&AbcTree> {
        self.tree.as_ref()
    }

    /// Labels per tree node; nodes never reached stay empty, as does the root.
    pub fn labels(&self) -> &[LabelSet] {
        &self.labels
    }

    /// Every component check run, in execution order.
    pub fn checks(&self) -> &[ComponentCheck] {
        &self.checks
    }

    pub fn check(&self, node: NodeId, purpose: CheckPurpose) -> Option<&ComponentCheck> {
        self.checks
            .iter()
            .find(|c| c.node == node && c.purpose == purpose)
    }

    /// The node whose empty label set caused an early rejection.
    pub fn rejection(&self) -> Option<Rejection> {
        self.rejection
    }
}

/// Decides whether the connected graph `g` admits a robust MIS.
pub fn decide(g: &Graph) -> Result<Decision, LabelingError> {
    let analysis = analyze_blocks(g).map_err(|e| match e {
        DecompositionError::Disconnected => LabelingError::Disconnected,
        DecompositionError::TreeGraph => unreachable!("analysis never reports tree graphs"),
    })?;
    let tree = match build_abc_tree(&analysis, g) {
        Ok(tree) => tree,
        // no cycle: no edge can be removed, every MIS is robust
        Err(_) => {
            return Ok(Decision {
                verdict: Verdict::Accept,
                tree: None,
                labels: Vec::new(),
                checks: Vec::new(),
                rejection: None,
            })
        }
    };

    let mut labels = vec![LabelSet::EMPTY; tree.len()];
    let mut checks = Vec::new();
    let root = tree.root();
    for &child in tree.children(root) {
        if let Err(rejection) = label_subtree(g, &tree, child, &mut labels, &mut checks)? {
            return Ok(Decision {
                verdict: Verdict::Reject,
                tree: Some(tree),
                labels,
                checks,
                rejection: Some(rejection),
            });
        }
    }

    let problem = component_problem(g, &tree, &labels, root, AttachmentFlag::Free, false)?;
    let outcome = is_satisfiable(&problem);
    let verdict = if outcome.is_satisfied() {
        Verdict::Accept
    } else {
        Verdict::Reject
    };
    checks.push(ComponentCheck {
        node: root,
        purpose: CheckPurpose::Root,
        problem,
        outcome,
    });
    Ok(Decision {
        verdict,
        tree: Some(tree),
        labels,
        checks,
        rejection: None,
    })
}
