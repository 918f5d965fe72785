//! Hash-consed negation normal form.

use std::collections::HashMap;

use crate::formula::dag::{FormulaDag, Node};
use crate::formula::ModalFormula;

pub(crate) type Id = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Nnf {
    True,
    False,
    Lit(u32, bool),
    And(Vec<Id>),
    Or(Vec<Id>),
    Box(Id),
    Dia(Id),
}

#[derive(Debug, Default)]
pub(crate) struct Arena {
    nodes: Vec<Nnf>,
    index: HashMap<Nnf, Id>,
    neg: Vec<Option<Id>>,
}

impl Arena {
    pub fn node(&self, id: Id) -> &Nnf {
        &self.nodes[id as usize]
    }

    fn mk(&mut self, n: Nnf) -> Id {
        let n = match n {
            Nnf::And(xs) => match self.flatten(xs, true) {
                None => Nnf::False,
                Some(xs) if xs.is_empty() => Nnf::True,
                Some(xs) if xs.len() == 1 => return xs[0],
                Some(xs) => Nnf::And(xs),
            },
            Nnf::Or(xs) => match self.flatten(xs, false) {
                None => Nnf::True,
                Some(xs) if xs.is_empty() => Nnf::False,
                Some(xs) if xs.len() == 1 => return xs[0],
                Some(xs) => Nnf::Or(xs),
            },
            n => n,
        };
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n.clone());
        self.neg.push(None);
        self.index.insert(n, id);
        id
    }

    /// Splices nested same-kind children, drops units; `None` means the
    /// absorbing constant was found.
    fn flatten(&self, xs: Vec<Id>, conj: bool) -> Option<Vec<Id>> {
        let mut out = Vec::with_capacity(xs.len());
        for x in xs {
            match (&self.nodes[x as usize], conj) {
                (Nnf::True, true) | (Nnf::False, false) => {}
                (Nnf::False, true) | (Nnf::True, false) => return None,
                (Nnf::And(ys), true) | (Nnf::Or(ys), false) => out.extend(ys.iter().copied()),
                _ => out.push(x),
            }
        }
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    pub fn neg(&mut self, id: Id) -> Id {
        if let Some(n) = self.neg[id as usize] {
            return n;
        }
        let n = match self.nodes[id as usize].clone() {
            Nnf::True => self.mk(Nnf::False),
            Nnf::False => self.mk(Nnf::True),
            Nnf::Lit(v, pos) => self.mk(Nnf::Lit(v, !pos)),
            Nnf::And(xs) => {
                let ys = xs.into_iter().map(|x| self.neg(x)).collect();
                self.mk(Nnf::Or(ys))
            }
            Nnf::Or(xs) => {
                let ys = xs.into_iter().map(|x| self.neg(x)).collect();
                self.mk(Nnf::And(ys))
            }
            Nnf::Box(x) => {
                let y = self.neg(x);
                self.mk(Nnf::Dia(y))
            }
            Nnf::Dia(x) => {
                let y = self.neg(x);
                self.mk(Nnf::Box(y))
            }
        };
        self.neg[id as usize] = Some(n);
        self.neg[n as usize] = Some(id);
        n
    }

    /// Converts `f` (sugar allowed) and returns its root.
    pub fn intern_formula(&mut self, f: &ModalFormula) -> Id {
        let mut dag = FormulaDag::new();
        let root = dag.intern(f);
        let mut pos: Vec<Id> = Vec::with_capacity(dag.len());
        for node in dag.nodes() {
            let id = match node {
                Node::Var(v) => self.mk(Nnf::Lit(*v, true)),
                Node::Falsum => self.mk(Nnf::False),
                Node::Verum => self.mk(Nnf::True),
                Node::Not(a) => self.neg(pos[*a]),
                Node::And(xs) => self.mk(Nnf::And(xs.iter().map(|x| pos[*x]).collect())),
                Node::Or(a, b) => self.mk(Nnf::Or(vec![pos[*a], pos[*b]])),
                Node::Implies(a, b) => {
                    let na = self.neg(pos[*a]);
                    self.mk(Nnf::Or(vec![na, pos[*b]]))
                }
                Node::Box(a) => self.mk(Nnf::Box(pos[*a])),
                Node::Dia(a) => self.mk(Nnf::Dia(pos[*a])),
            };
            pos.push(id);
        }
        pos[root]
    }
}
