//! Term DAGs over the basic loop operations.
//!
//! A term DAG witnesses that a constructed binary operation is a term
//! operation of the input loop: leaves are the two variables, inner nodes
//! apply `·`, `\` or `/`, and shared subterms are interned so repeated
//! substitution stays compact.

use std::collections::HashMap;

use crate::error::{LoopError, Result};
use crate::loops::table::{Elem, FiniteLoop};

/// Opcode of a term-DAG node. Leaves are variables only; there are no
/// constants, so every DAG denotes a genuine term operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermOp {
    VarX,
    VarY,
    Mul,
    LDiv,
    RDiv,
}

impl TermOp {
    pub fn is_leaf(self) -> bool {
        matches!(self, TermOp::VarX | TermOp::VarY)
    }
}

/// One node; children refer to earlier nodes, so the node list is already
/// topologically sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermNode {
    pub op: TermOp,
    pub left: u32,
    pub right: u32,
}

/// A hash-consed arena of term nodes. One arena is shared by all stages of
/// a reduct certificate; each stage records its root index.
#[derive(Debug, Clone, Default)]
pub struct TermDag {
    nodes: Vec<TermNode>,
    intern: HashMap<(TermOp, u32, u32), u32>,
}

impl TermDag {
    pub fn new() -> Self {
        TermDag::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[TermNode] {
        &self.nodes
    }

    fn push(&mut self, op: TermOp, left: u32, right: u32) -> u32 {
        if let Some(&idx) = self.intern.get(&(op, left, right)) {
            return idx;
        }
        let idx = self.nodes.len() as u32;
        self.nodes.push(TermNode { op, left, right });
        self.intern.insert((op, left, right), idx);
        idx
    }

    pub fn var_x(&mut self) -> u32 {
        self.push(TermOp::VarX, 0, 0)
    }

    pub fn var_y(&mut self) -> u32 {
        self.push(TermOp::VarY, 0, 0)
    }

    pub fn mul(&mut self, left: u32, right: u32) -> u32 {
        self.push(TermOp::Mul, left, right)
    }

    pub fn ldiv(&mut self, left: u32, right: u32) -> u32 {
        self.push(TermOp::LDiv, left, right)
    }

    pub fn rdiv(&mut self, left: u32, right: u32) -> u32 {
        self.push(TermOp::RDiv, left, right)
    }

    /// Rebuilds a node list into a validated arena. Checks that children
    /// precede parents and that leaves are variables.
    pub fn from_nodes(nodes: Vec<TermNode>) -> Result<Self> {
        let mut dag = TermDag::new();
        for (idx, node) in nodes.iter().enumerate() {
            if !node.op.is_leaf()
                && (node.left as usize >= idx || node.right as usize >= idx)
            {
                return Err(LoopError::MalformedTerm(format!(
                    "node {idx} refers to a later or equal node"
                )));
            }
            let (l, r) = if node.op.is_leaf() { (0, 0) } else { (node.left, node.right) };
            dag.push(node.op, l, r);
        }
        if dag.nodes.len() != nodes.len() {
            return Err(LoopError::MalformedTerm(
                "node list contains duplicate nodes".into(),
            ));
        }
        Ok(dag)
    }

    /// Substitutes `a` for the X variable and `b` for the Y variable in the
    /// subterm rooted at `template`, returning the new root.
    pub fn substitute(&mut self, template: u32, a: u32, b: u32) -> u32 {
        let mut memo: HashMap<u32, u32> = HashMap::new();
        self.substitute_memo(template, a, b, &mut memo)
    }

    fn substitute_memo(&mut self, node: u32, a: u32, b: u32, memo: &mut HashMap<u32, u32>) -> u32 {
        if let Some(&done) = memo.get(&node) {
            return done;
        }
        let TermNode { op, left, right } = self.nodes[node as usize];
        let result = match op {
            TermOp::VarX => a,
            TermOp::VarY => b,
            _ => {
                let l = self.substitute_memo(left, a, b, memo);
                let r = self.substitute_memo(right, a, b, memo);
                self.push(op, l, r)
            }
        };
        memo.insert(node, result);
        result
    }

    /// Evaluates the subterm rooted at `root` on `(x, y)` over the basic
    /// operations of `l`. Nodes are evaluated bottom-up in index order.
    pub fn eval(&self, l: &FiniteLoop, root: u32, x: Elem, y: Elem) -> Result<Elem> {
        if root as usize >= self.nodes.len() {
            return Err(LoopError::MalformedTerm(format!(
                "root {root} out of range for {} nodes",
                self.nodes.len()
            )));
        }
        let mut values = vec![0usize; root as usize + 1];
        for (idx, node) in self.nodes[..=root as usize].iter().enumerate() {
            values[idx] = match node.op {
                TermOp::VarX => x,
                TermOp::VarY => y,
                TermOp::Mul => l.mul(values[node.left as usize], values[node.right as usize]),
                TermOp::LDiv => l.ldiv(values[node.left as usize], values[node.right as usize]),
                TermOp::RDiv => l.rdiv(values[node.left as usize], values[node.right as usize]),
            };
        }
        Ok(values[root as usize])
    }

    /// The full binary operation table denoted by `root` on `l`.
    pub fn eval_rows(&self, l: &FiniteLoop, root: u32) -> Result<Vec<Vec<Elem>>> {
        let n = l.order();
        (0..n)
            .map(|x| (0..n).map(|y| self.eval(l, root, x, y)).collect())
            .collect()
    }
}
