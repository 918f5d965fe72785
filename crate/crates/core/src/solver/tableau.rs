//! Tableau decision procedure for K.
//!
//! Each world is a set of NNF formulas. Its propositional part is
//! completed by a small DPLL search (conjunctions first, unit propagation
//! over disjunctions, then semantic branching on the first open
//! disjunction). A complete set opens one successor `{ψ} ∪ {χ : □χ ∈ Γ}`
//! per `◇ψ ∈ Γ`; if any successor is unsatisfiable the search backtracks.
//! Results are memoized per world label, which is sound for K.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::formula::ModalFormula;

use super::nnf::{Arena, Id, Nnf};
use super::{Engine, SatVerdict, SolverError, SolverStats, WitnessNode};

/// Default cap on world labels explored by [`sat_k_tableau`].
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableauConfig {
    /// Maximum number of world labels expanded before giving up.
    pub node_budget: u64,
}

impl Default for TableauConfig {
    fn default() -> Self {
        TableauConfig {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Decides K-satisfiability of `f` with the default budget.
pub fn sat_k_tableau(f: &ModalFormula) -> Result<SatVerdict, SolverError> {
    sat_k_tableau_with(f, &TableauConfig::default())
}

pub fn sat_k_tableau_with(
    f: &ModalFormula,
    config: &TableauConfig,
) -> Result<SatVerdict, SolverError> {
    let mut t = Tableau {
        arena: Arena::default(),
        memo: HashMap::new(),
        stats: SolverStats::default(),
        budget: config.node_budget,
    };
    let root = t.arena.intern_formula(f);
    let found = t.world(vec![root], 0)?;
    let outcome = super::outcome_from_witness(found, f);
    Ok(SatVerdict {
        outcome,
        engine: Engine::Tableau,
        stats: t.stats,
    })
}

struct Tableau {
    arena: Arena,
    memo: HashMap<Vec<Id>, Option<Rc<WitnessNode>>>,
    stats: SolverStats,
    budget: u64,
}

/// A partially saturated world label.
#[derive(Clone, Default)]
struct Label {
    members: HashSet<Id>,
    ors: Vec<Id>,
    boxes: Vec<Id>,
    dias: Vec<Id>,
}

struct Clash;

impl Tableau {
    fn add(&mut self, label: &mut Label, x: Id) -> Result<(), Clash> {
        let mut work = vec![x];
        while let Some(x) = work.pop() {
            if label.members.contains(&x) {
                continue;
            }
            let nx = self.arena.neg(x);
            if label.members.contains(&nx) {
                return Err(Clash);
            }
            label.members.insert(x);
            match self.arena.node(x) {
                Nnf::True | Nnf::Lit(..) => {}
                Nnf::False => return Err(Clash),
                Nnf::And(xs) => work.extend(xs.iter().rev().copied()),
                Nnf::Or(_) => label.ors.push(x),
                Nnf::Box(_) => label.boxes.push(x),
                Nnf::Dia(_) => label.dias.push(x),
            }
        }
        Ok(())
    }

    /// Unit propagation to fixpoint. Returns the first disjunction left
    /// open together with its first viable disjunct.
    fn propagate(&mut self, label: &mut Label) -> Result<Option<Id>, Clash> {
        loop {
            let mut changed = false;
            let mut open = None;
            let mut k = 0;
            while k < label.ors.len() {
                let or = label.ors[k];
                k += 1;
                let Nnf::Or(xs) = self.arena.node(or).clone() else {
                    unreachable!()
                };
                if xs.iter().any(|x| label.members.contains(x)) {
                    continue;
                }
                let mut viable = Vec::new();
                for &x in &xs {
                    let nx = self.arena.neg(x);
                    if !label.members.contains(&nx) {
                        viable.push(x);
                    }
                }
                match viable.len() {
                    0 => return Err(Clash),
                    1 => {
                        self.add(label, viable[0])?;
                        changed = true;
                    }
                    _ => {
                        if open.is_none() {
                            open = Some(viable[0]);
                        }
                    }
                }
            }
            if !changed {
                return Ok(open);
            }
        }
    }

    fn world(
        &mut self,
        key: Vec<Id>,
        depth: usize,
    ) -> Result<Option<Rc<WitnessNode>>, SolverError> {
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.stats.nodes_explored += 1;
        if self.stats.nodes_explored > self.budget {
            return Err(SolverError::BudgetExhausted {
                budget: self.budget,
            });
        }
        self.stats.max_depth = self.stats.max_depth.max(depth);

        let mut result = None;
        let mut stack: Vec<(Label, Id)> = Vec::new();
        let mut current = {
            let mut label = Label::default();
            let mut ok = true;
            for &x in &key {
                if self.add(&mut label, x).is_err() {
                    ok = false;
                    break;
                }
            }
            ok.then_some(label)
        };
        loop {
            let Some(mut label) = current.take() else {
                match stack.pop() {
                    Some((mut label, alt)) => {
                        if self.add(&mut label, alt).is_ok() {
                            current = Some(label);
                        }
                        continue;
                    }
                    None => break,
                }
            };
            match self.propagate(&mut label) {
                Err(Clash) => continue,
                Ok(Some(choice)) => {
                    let alt = self.arena.neg(choice);
                    stack.push((label.clone(), alt));
                    if self.add(&mut label, choice).is_ok() {
                        current = Some(label);
                    }
                    continue;
                }
                Ok(None) => {}
            }
            if let Some(node) = self.expand(&label, depth)? {
                result = Some(node);
                break;
            }
        }
        self.memo.insert(key, result.clone());
        Ok(result)
    }

    /// Opens the successors of a propositionally complete label.
    fn expand(
        &mut self,
        label: &Label,
        depth: usize,
    ) -> Result<Option<Rc<WitnessNode>>, SolverError> {
        let mut boxed: Vec<Id> = label
            .boxes
            .iter()
            .map(|&b| match self.arena.node(b) {
                Nnf::Box(x) => *x,
                _ => unreachable!(),
            })
            .collect();
        boxed.sort_unstable();
        boxed.dedup();
        let mut dias = label.dias.clone();
        dias.sort_unstable();
        let mut children = Vec::with_capacity(dias.len());
        for d in dias {
            let Nnf::Dia(x) = *self.arena.node(d) else {
                unreachable!()
            };
            let mut key = boxed.clone();
            if let Err(at) = key.binary_search(&x) {
                key.insert(at, x);
            }
            match self.world(key, depth + 1)? {
                Some(child) => children.push(child),
                None => return Ok(None),
            }
        }
        let mut vars: Vec<u32> = label
            .members
            .iter()
            .filter_map(|&x| match self.arena.node(x) {
                Nnf::Lit(v, true) => Some(*v),
                _ => None,
            })
            .collect();
        vars.sort_unstable();
        Ok(Some(Rc::new(WitnessNode { vars, children })))
    }
}
