//! Bounded-model oracle: is there a pointed Kripke model with at most
//! `max_worlds` worlds satisfying `f`?
//!
//! The question is encoded propositionally and handed to a CDCL SAT
//! solver. Variables are the relation bits `R(i,j)`, the valuation bits
//! `V(p,i)`, and one truth bit per subformula and world, tied together by
//! Tseitin clauses. Extra worlds unreachable from world 0 are harmless, so
//! "exactly N worlds" and "at most N worlds" coincide.

use std::collections::HashSet;

use varisat::{ExtendFormula, Lit, Solver};

use crate::formula::dag::{FormulaDag, Node};
use crate::formula::ModalFormula;
use crate::kripke::{KripkeFrame, KripkeModel, WorldId};

use super::{Engine, Outcome, SatVerdict, SolverError, SolverStats};

pub fn sat_bounded(f: &ModalFormula, max_worlds: usize) -> Result<SatVerdict, SolverError> {
    if max_worlds == 0 {
        return Err(SolverError::ZeroBound);
    }
    let n = max_worlds;
    let mut dag = FormulaDag::new();
    let root = dag.intern(f);
    let mut solver = Solver::new();

    let rel: Vec<Vec<Lit>> = (0..n)
        .map(|_| (0..n).map(|_| solver.new_lit()).collect())
        .collect();
    let mut val: Vec<(u32, Vec<Lit>)> = Vec::new();
    let mut truth: Vec<Vec<Lit>> = Vec::with_capacity(dag.len());

    for node in dag.nodes() {
        let row: Vec<Lit> = match node {
            Node::Var(v) => {
                let lits: Vec<Lit> = (0..n).map(|_| solver.new_lit()).collect();
                val.push((*v, lits.clone()));
                lits
            }
            Node::Falsum | Node::Verum => {
                let t = solver.new_lit();
                solver.add_clause(&[if matches!(node, Node::Verum) { t } else { !t }]);
                vec![t; n]
            }
            Node::Not(a) => truth[*a].iter().map(|&l| !l).collect(),
            Node::And(xs) => (0..n)
                .map(|w| {
                    let ins: Vec<Lit> = xs.iter().map(|x| truth[*x][w]).collect();
                    define_and(&mut solver, &ins)
                })
                .collect(),
            Node::Or(a, b) => (0..n)
                .map(|w| !define_and(&mut solver, &[!truth[*a][w], !truth[*b][w]]))
                .collect(),
            Node::Implies(a, b) => (0..n)
                .map(|w| !define_and(&mut solver, &[truth[*a][w], !truth[*b][w]]))
                .collect(),
            Node::Box(a) => (0..n)
                .map(|w| {
                    // □a at w  ⟺  no successor v with ¬a at v
                    let bad: Vec<Lit> = (0..n)
                        .map(|v| define_and(&mut solver, &[rel[w][v], !truth[*a][v]]))
                        .collect();
                    !define_or(&mut solver, &bad)
                })
                .collect(),
            Node::Dia(a) => (0..n)
                .map(|w| {
                    let good: Vec<Lit> = (0..n)
                        .map(|v| define_and(&mut solver, &[rel[w][v], truth[*a][v]]))
                        .collect();
                    define_or(&mut solver, &good)
                })
                .collect(),
        };
        truth.push(row);
    }
    solver.add_clause(&[truth[root][0]]);

    let sat = solver.solve().expect("in-memory solving cannot fail");
    let stats = SolverStats {
        nodes_explored: 1,
        max_depth: 0,
    };
    let engine = Engine::Bounded { bound: max_worlds };
    if !sat {
        return Ok(SatVerdict {
            outcome: Outcome::Unsatisfiable,
            engine,
            stats,
        });
    }
    let model: HashSet<Lit> = solver
        .model()
        .expect("model after sat")
        .into_iter()
        .collect();
    let on = |l: Lit| model.contains(&l);

    let names: Vec<WorldId> = (0..n).map(|i| WorldId::Named(format!("w{i}"))).collect();
    let mut frame = KripkeFrame::with_worlds(names.iter().cloned()).expect("distinct names");
    for (w, row) in rel.iter().enumerate() {
        for (v, &l) in row.iter().enumerate() {
            if on(l) {
                frame.add_edge(w, v);
            }
        }
    }
    let mut full = KripkeModel::new(frame, &names[0]).expect("w0 exists");
    for (var, lits) in &val {
        full.declare(*var);
        for (w, &l) in lits.iter().enumerate() {
            if on(l) {
                full.set_true(*var, w);
            }
        }
    }
    let sub = full.generated_submodel();
    Ok(SatVerdict {
        outcome: Outcome::Satisfiable(super::relabel(&sub)),
        engine,
        stats,
    })
}

/// Fresh `t` with `t ⟺ ⋀ ins`.
fn define_and(solver: &mut Solver, ins: &[Lit]) -> Lit {
    let t = solver.new_lit();
    let mut back = vec![t];
    for &x in ins {
        solver.add_clause(&[!t, x]);
        back.push(!x);
    }
    solver.add_clause(&back);
    t
}

/// Fresh `t` with `t ⟺ ⋁ ins`.
fn define_or(solver: &mut Solver, ins: &[Lit]) -> Lit {
    let negated: Vec<Lit> = ins.iter().map(|&x| !x).collect();
    !define_and(solver, &negated)
}
