//! 2-SAT via the implication graph and its strongly connected components.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoSatError {
    #[error("literal references variable {var} but the formula has {count} variables")]
    VariableOutOfRange { var: usize, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: usize,
    positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn var(self) -> usize {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negate(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    // Implication-graph node: 2v for x_v, 2v + 1 for !x_v.
    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.negate()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "!x{}", self.var)
        }
    }
}

/// Conjunction of two-literal clauses. A unit clause `l` is stored as `l ∨ l`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoSatFormula {
    var_count: usize,
    clauses: Vec<(Literal, Literal)>,
}

impl TwoSatFormula {
    pub fn new(var_count: usize) -> Self {
        TwoSatFormula {
            var_count,
            clauses: Vec::new(),
        }
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[(Literal, Literal)] {
        &self.clauses
    }

    pub fn add_clause(&mut self, a: Literal, b: Literal) -> Result<(), TwoSatError> {
        for lit in [a, b] {
            if lit.var >= self.var_count {
                return Err(TwoSatError::VariableOutOfRange {
                    var: lit.var,
                    count: self.var_count,
                });
            }
        }
        self.clauses.push((a, b));
        Ok(())
    }

    pub fn add_unit(&mut self, a: Literal) -> Result<(), TwoSatError> {
        self.add_clause(a, a)
    }

    /// Returns a satisfying assignment, or `None` when the formula is
    /// unsatisfiable. The result depends only on the clause list.
    pub fn solve(&self) -> Option<Assignment> {
        let nodes = 2 * self.var_count;
        let mut implications = vec![Vec::new(); nodes];
        for &(a, b) in &self.clauses {
            implications[(!a).node()].push(b.node());
            implications[(!b).node()].push(a.node());
        }
        let component = tarjan_scc(&implications);
        let mut values = Vec::with_capacity(self.var_count);
        for var in 0..self.var_count {
            let (p, n) = (
                component[Literal::pos(var).node()],
                component[Literal::neg(var).node()],
            );
            if p == n {
                return None;
            }
            // Tarjan numbers components in reverse topological order, so the
            // literal whose component closes first sits further downstream.
            values.push(p < n);
        }
        Some(Assignment { values })
    }
}

/// Truth value for every variable of a formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn from_values(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn value(&self, var: usize) -> bool {
        self.values[var]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn eval(&self, lit: Literal) -> bool {
        self.values[lit.var] == lit.positive
    }

    pub fn satisfies(&self, formula: &TwoSatFormula) -> bool {
        self.values.len() == formula.var_count
            && formula
                .clauses
                .iter()
                .all(|&(a, b)| self.eval(a) || self.eval(b))
    }
}

/// Iterative Tarjan; returns the component index of every node.
fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut component = vec![UNSEEN; n];
    let mut next_edge = vec![0usize; n];
    let mut path = Vec::new();
    let mut call = Vec::new();
    let mut clock = 0;
    let mut count = 0;

    for start in 0..n {
        if index[start] != UNSEEN {
            continue;
        }
        call.push(start);
        while let Some(&u) = call.last() {
            if next_edge[u] == 0 && index[u] == UNSEEN {
                index[u] = clock;
                low[u] = clock;
                clock += 1;
                path.push(u);
                on_stack[u] = true;
            }
            if let Some(&w) = adj[u].get(next_edge[u]) {
                next_edge[u] += 1;
                if index[w] == UNSEEN {
                    call.push(w);
                } else if on_stack[w] {
                    low[u] = low[u].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&caller) = call.last() {
                low[caller] = low[caller].min(low[u]);
            }
            if low[u] == index[u] {
                while let Some(w) = path.pop() {
                    on_stack[w] = false;
                    component[w] = count;
                    if w == u {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    component
}
