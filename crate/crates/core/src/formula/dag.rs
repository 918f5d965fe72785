//! Hash-consed view of a sugar-free modal formula.
//!
//! Identical subformulas share one node, and every node's children have
//! smaller ids than the node itself, so evaluating nodes in id order is a
//! valid bottom-up schedule.

use std::collections::HashMap;

use super::modal::ModalFormula;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Var(u32),
    Falsum,
    Verum,
    Not(NodeId),
    And(Vec<NodeId>),
    Or(NodeId, NodeId),
    Implies(NodeId, NodeId),
    Box(NodeId),
    Dia(NodeId),
}

#[derive(Debug, Clone, Default)]
pub struct FormulaDag {
    nodes: Vec<Node>,
    index: HashMap<Node, NodeId>,
}

impl FormulaDag {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns `f` (sugar is expanded on the fly) and returns its root id.
    pub fn intern(&mut self, f: &ModalFormula) -> NodeId {
        use ModalFormula as M;
        let node = match f {
            M::Var(i) => Node::Var(*i),
            M::Falsum => Node::Falsum,
            M::Verum => Node::Verum,
            M::Not(a) => Node::Not(self.intern(a)),
            M::And(xs) => match xs.as_slice() {
                [] => Node::Verum,
                [x] => return self.intern(x),
                _ => Node::And(xs.iter().map(|x| self.intern(x)).collect()),
            },
            M::Or(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                Node::Or(a, b)
            }
            M::Implies(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                Node::Implies(a, b)
            }
            M::Box(a) => Node::Box(self.intern(a)),
            M::Dia(a) => Node::Dia(self.intern(a)),
            M::BoxPlus(a) => {
                let a = self.intern(a);
                let ba = self.insert(Node::Box(a));
                Node::And(vec![a, ba])
            }
            M::BoxUpTo(n, a) => {
                let mut cur = self.intern(a);
                if *n == 0 {
                    return cur;
                }
                let mut items = vec![cur];
                for _ in 0..*n {
                    cur = self.insert(Node::Box(cur));
                    items.push(cur);
                }
                Node::And(items)
            }
            M::BoxPow(n, a) => {
                let mut cur = self.intern(a);
                for _ in 0..*n {
                    cur = self.insert(Node::Box(cur));
                }
                return cur;
            }
            M::DiaPow(n, a) => {
                let mut cur = self.intern(a);
                for _ in 0..*n {
                    cur = self.insert(Node::Dia(cur));
                }
                return cur;
            }
        };
        self.insert(node)
    }

    fn insert(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }
}
