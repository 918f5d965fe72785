//! K-satisfiability: a tableau procedure and an independent bounded-model
//! oracle.

mod bounded;
mod nnf;
mod tableau;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

use thiserror::Error;

use crate::formula::ModalFormula;
use crate::kripke::{KripkeFrame, KripkeModel, WorldId};

pub use bounded::sat_bounded;
pub use tableau::{sat_k_tableau, sat_k_tableau_with, TableauConfig, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Satisfiable; the witness satisfies the query at its root.
    Satisfiable(KripkeModel),
    Unsatisfiable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Tableau,
    /// Exhaustive over models with at most `bound` worlds; an
    /// unsatisfiable verdict only means "no model within the bound".
    Bounded {
        bound: usize,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub nodes_explored: u64,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatVerdict {
    pub outcome: Outcome,
    pub engine: Engine,
    pub stats: SolverStats,
}

impl SatVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self.outcome, Outcome::Satisfiable(_))
    }

    pub fn witness(&self) -> Option<&KripkeModel> {
        match &self.outcome {
            Outcome::Satisfiable(m) => Some(m),
            Outcome::Unsatisfiable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("unknown: node budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("world bound must be at least 1")]
    ZeroBound,
}

/// A world of a tableau witness; shared subtrees are shared nodes.
#[derive(Debug)]
struct WitnessNode {
    vars: Vec<u32>,
    children: Vec<Rc<WitnessNode>>,
}

fn outcome_from_witness(found: Option<Rc<WitnessNode>>, f: &ModalFormula) -> Outcome {
    let Some(root) = found else {
        return Outcome::Unsatisfiable;
    };
    let mut order: Vec<(Rc<WitnessNode>, u32)> = vec![(root.clone(), 0)];
    let mut pos: HashMap<*const WitnessNode, usize> = HashMap::from([(Rc::as_ptr(&root), 0)]);
    let mut edges = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let (node, level) = order[k].clone();
        for child in &node.children {
            let ptr = Rc::as_ptr(child);
            let j = *pos.entry(ptr).or_insert_with(|| {
                order.push((child.clone(), level + 1));
                order.len() - 1
            });
            edges.push((k, j));
        }
        k += 1;
    }
    let ids: Vec<WorldId> = order
        .iter()
        .enumerate()
        .map(|(i, (n, level))| WorldId::base(*level, n.vars.iter().copied().collect(), i as u32))
        .collect();
    let mut frame = KripkeFrame::with_worlds(ids.iter().cloned()).expect("serials are unique");
    for (i, j) in edges {
        frame.add_edge(i, j);
    }
    let mut m = KripkeModel::new(frame, &ids[0]).expect("root exists");
    for v in f.vars() {
        m.declare(v);
    }
    for (i, (n, _)) in order.iter().enumerate() {
        for &v in &n.vars {
            m.set_true(v, i);
        }
    }
    Outcome::Satisfiable(m)
}

/// Renames the worlds of a rooted model to breadth-first base ids.
fn relabel(m: &KripkeModel) -> KripkeModel {
    let fr = m.frame();
    let mut level = vec![None; fr.len()];
    level[m.root()] = Some(0u32);
    let mut order = vec![m.root()];
    let mut queue = VecDeque::from([m.root()]);
    while let Some(w) = queue.pop_front() {
        for &v in fr.successors(w) {
            if level[v].is_none() {
                level[v] = Some(level[w].unwrap() + 1);
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    let at: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let ids: Vec<WorldId> = order
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let vars: BTreeSet<u32> = m
                .valuation()
                .iter()
                .filter(|(_, ext)| ext.contains(&w))
                .map(|(&v, _)| v)
                .collect();
            WorldId::base(level[w].unwrap(), vars, i as u32)
        })
        .collect();
    let mut frame = KripkeFrame::with_worlds(ids.iter().cloned()).expect("serials are unique");
    for (w, v) in fr.edges() {
        if let (Some(&i), Some(&j)) = (at.get(&w), at.get(&v)) {
            frame.add_edge(i, j);
        }
    }
    let mut out = KripkeModel::new(frame, &ids[0]).expect("root exists");
    for (&var, ext) in m.valuation() {
        out.declare(var);
        for w in ext {
            if let Some(&i) = at.get(w) {
                out.set_true(var, i);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_modal;
    use crate::kripke::holds_at_root;
    use ModalFormula as M;

    fn both(text: &str, bound: usize) -> (SatVerdict, SatVerdict) {
        let f = parse_modal(text).unwrap();
        (sat_k_tableau(&f).unwrap(), sat_bounded(&f, bound).unwrap())
    }

    #[test]
    fn blind_world() {
        let f = M::boxed(M::Falsum);
        let v = sat_k_tableau(&f).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.frame().len(), 1);
        assert_eq!(w.frame().edge_count(), 0);
        assert!(sat_bounded(&f, 1).unwrap().is_sat());
    }

    #[test]
    fn diamond_against_box_falsum() {
        let (t, b) = both("<> true & [] false", 4);
        assert!(!t.is_sat());
        assert!(!b.is_sat());
        assert_eq!(b.engine, Engine::Bounded { bound: 4 });
    }

    #[test]
    fn double_diamond_fits_one_reflexive_world() {
        let f = parse_modal("<> <> true").unwrap();
        let one = sat_bounded(&f, 1).unwrap();
        let w = one.witness().unwrap();
        assert_eq!(w.frame().len(), 1);
        assert!(w.frame().is_reflexive());
        assert!(sat_bounded(&f, 2).unwrap().is_sat());
    }

    #[test]
    fn witnesses_check() {
        for text in [
            "<> p1 & <> ~p1 & [] (p1 -> <> p2)",
            "(p1 | p2) & ~p1 & [] <> (p2 & ~p1)",
            "<> (p1 & [] false) & [] (p1 | <> true)",
        ] {
            let f = parse_modal(text).unwrap();
            let (t, b) = both(text, 4);
            assert!(holds_at_root(t.witness().unwrap(), &f), "{text}");
            assert!(holds_at_root(b.witness().unwrap(), &f), "{text}");
            assert!(t.stats.max_depth <= f.modal_depth());
        }
    }

    #[test]
    fn k_validities_have_unsat_negations() {
        for text in [
            "[] (p1 -> p2) -> [] p1 -> [] p2",
            "<> (p1 | p2) -> <> p1 | <> p2",
        ] {
            let f = parse_modal(text).unwrap();
            assert!(!sat_k_tableau(&M::not(f)).unwrap().is_sat(), "{text}");
        }
    }

    #[test]
    fn t_axiom_is_not_k_valid() {
        let f = parse_modal("~([] p1 -> p1)").unwrap();
        assert!(sat_k_tableau(&f).unwrap().is_sat());
    }

    #[test]
    fn budget_is_reported() {
        let f = parse_modal("<> <> <> true").unwrap();
        let err = sat_k_tableau_with(&f, &TableauConfig { node_budget: 2 }).unwrap_err();
        assert_eq!(err, SolverError::BudgetExhausted { budget: 2 });
        assert_eq!(sat_bounded(&f, 0).unwrap_err(), SolverError::ZeroBound);
    }
}
