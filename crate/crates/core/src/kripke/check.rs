//! Global model checking and frame validity.
//!
//! Formulas are hash-consed first, then every distinct subformula is
//! evaluated once over all worlds, bottom-up. Cost is
//! `O(|f| · (|worlds| + |relation|))`.

use crate::formula::dag::{FormulaDag, Node};
use crate::formula::ModalFormula;

use super::frame::KripkeFrame;
use super::model::KripkeModel;
use super::world::WorldId;
use super::KripkeError;

fn evaluate_dag(
    frame: &KripkeFrame,
    dag: &FormulaDag,
    holds: &dyn Fn(u32, usize) -> bool,
) -> Vec<Vec<bool>> {
    let n = frame.len();
    let succ = frame.successor_lists();
    let mut values: Vec<Vec<bool>> = Vec::with_capacity(dag.len());
    for node in dag.nodes() {
        let row: Vec<bool> = match node {
            Node::Var(v) => (0..n).map(|w| holds(*v, w)).collect(),
            Node::Falsum => vec![false; n],
            Node::Verum => vec![true; n],
            Node::Not(a) => values[*a].iter().map(|x| !x).collect(),
            Node::And(xs) => (0..n).map(|w| xs.iter().all(|x| values[*x][w])).collect(),
            Node::Or(a, b) => (0..n).map(|w| values[*a][w] || values[*b][w]).collect(),
            Node::Implies(a, b) => (0..n).map(|w| !values[*a][w] || values[*b][w]).collect(),
            Node::Box(a) => (0..n)
                .map(|w| succ[w].iter().all(|&v| values[*a][v]))
                .collect(),
            Node::Dia(a) => (0..n)
                .map(|w| succ[w].iter().any(|&v| values[*a][v]))
                .collect(),
        };
        values.push(row);
    }
    values
}

/// Truth value of `f` at every world of `m`, indexed by world position.
pub fn truth_set(m: &KripkeModel, f: &ModalFormula) -> Vec<bool> {
    let mut dag = FormulaDag::new();
    let root = dag.intern(f);
    let mut values = evaluate_dag(m.frame(), &dag, &|v, w| m.holds(v, w));
    values.swap_remove(root)
}

/// `(m, w) ⊨ f`. Sugar in `f` is expanded internally.
pub fn model_check(m: &KripkeModel, w: &WorldId, f: &ModalFormula) -> Result<bool, KripkeError> {
    let i = m.frame().position(w)?;
    Ok(truth_set(m, f)[i])
}

/// `(m, root) ⊨ f`.
pub fn holds_at_root(m: &KripkeModel, f: &ModalFormula) -> bool {
    truth_set(m, f)[m.root()]
}

/// Truth of a variable-free formula at every world of a bare frame.
pub fn constant_truth_set(fr: &KripkeFrame, f: &ModalFormula) -> Vec<bool> {
    let mut dag = FormulaDag::new();
    let root = dag.intern(f);
    let mut values = evaluate_dag(fr, &dag, &|_, _| false);
    values.swap_remove(root)
}

/// Outcome of a frame-validity check that completed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// Refuted at `world` under the valuation listing, per variable, the
    /// worlds where it is true.
    Refuted {
        world: usize,
        valuation: Vec<(u32, Vec<usize>)>,
    },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Default cap on `|worlds| · |variables|` for [`frame_validates`]; the
/// search visits up to `2^budget` valuations.
pub const DEFAULT_VALIDITY_BUDGET: usize = 24;

/// Whether `f` holds at every world of `fr` under every valuation of its
/// variables.
///
/// Variable-free formulas need one evaluation. Otherwise all
/// `2^(|worlds|·v)` valuations are enumerated with early exit on the first
/// refutation; if `|worlds|·v` exceeds `budget` the check refuses with
/// [`KripkeError::BudgetExceeded`] instead of answering.
pub fn frame_validates(
    fr: &KripkeFrame,
    f: &ModalFormula,
    budget: usize,
) -> Result<Validity, KripkeError> {
    let vars: Vec<u32> = f.vars().into_iter().collect();
    let mut dag = FormulaDag::new();
    let root = dag.intern(f);
    let n = fr.len();
    let bits = n * vars.len();
    if bits > budget || bits >= 64 {
        return Err(KripkeError::BudgetExceeded {
            needed: bits,
            budget,
        });
    }
    let slot = |v: u32| vars.iter().position(|x| *x == v).expect("variable of f");
    for mask in 0u64..(1u64 << bits) {
        let holds = |v: u32, w: usize| mask >> (slot(v) * n + w) & 1 == 1;
        let values = evaluate_dag(fr, &dag, &holds);
        if let Some(w) = values[root].iter().position(|x| !x) {
            let valuation = vars
                .iter()
                .map(|&v| (v, (0..n).filter(|&w| holds(v, w)).collect()))
                .collect();
            return Ok(Validity::Refuted {
                world: w,
                valuation,
            });
        }
    }
    Ok(Validity::Valid)
}

/// The one-variable weak Grzegorczyk axiom `□⁺(□(p→□p)→p)→p`, over `p1`.
pub fn wgrz_axiom() -> ModalFormula {
    use ModalFormula as M;
    let p = M::var(1);
    M::implies(
        M::box_plus(M::implies(
            M::boxed(M::implies(p.clone(), M::boxed(p.clone()))),
            p.clone(),
        )),
        p,
    )
}
