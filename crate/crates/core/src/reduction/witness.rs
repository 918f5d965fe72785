//! Witness models: the quantifier tree of a true formula, the gadget frames
//! `F_m` / `F_m⁺`, and the extended model `M′`.

use std::collections::BTreeSet;

use crate::formula::{QbfFormula, Quantifier};
use crate::kripke::{
    constant_truth_set, ClosureMode, GadgetPart, KripkeFrame, KripkeModel, WorldId,
};
use crate::qbf::{evaluate, QbfModel};

use super::encode::{alpha, EncodingContext};
use super::ReductionError;

/// The quantifier tree of a true closed prenex formula.
///
/// The root is the empty assignment at level 0. A `∀` node at level `k-1`
/// gets both children (without and with `p_k`); an `∃` node gets one child
/// in which the residual formula is true, preferring the child without
/// `p_k`. Worlds are numbered breadth-first. Each `p_k` is true where the
/// assignment contains it; `q_i` is true at worlds of level `≥ i`.
pub fn quantifier_tree(f: &QbfFormula) -> Result<(KripkeModel, EncodingContext), ReductionError> {
    let ctx = EncodingContext::new(f)?;
    let n = ctx.n();
    if !evaluate(&QbfModel::new(), f) {
        return Err(ReductionError::FalseFormula);
    }

    struct Pending {
        level: u32,
        assignment: BTreeSet<u32>,
        parent: Option<usize>,
    }
    let mut frame = KripkeFrame::new();
    let mut nodes: Vec<(u32, BTreeSet<u32>)> = Vec::new();
    let mut queue = std::collections::VecDeque::from([Pending {
        level: 0,
        assignment: BTreeSet::new(),
        parent: None,
    }]);
    while let Some(item) = queue.pop_front() {
        let serial = nodes.len() as u32;
        let id = WorldId::base(item.level, item.assignment.clone(), serial);
        let pos = frame.add_world(id).expect("serials are unique");
        if let Some(parent) = item.parent {
            frame.add_edge(parent, pos);
        }
        nodes.push((item.level, item.assignment.clone()));
        if item.level == n {
            continue;
        }
        let k = item.level + 1;
        let without = item.assignment.clone();
        let mut with = item.assignment.clone();
        with.insert(k);
        let children = match ctx.quantifier(k) {
            Quantifier::Forall => vec![without, with],
            Quantifier::Exists => {
                let rest = ctx.residual(k);
                let holds = |a: &BTreeSet<u32>| evaluate(&a.iter().copied().collect(), &rest);
                if holds(&without) {
                    vec![without]
                } else {
                    debug_assert!(holds(&with));
                    vec![with]
                }
            }
        };
        for assignment in children {
            queue.push_back(Pending {
                level: k,
                assignment,
                parent: Some(pos),
            });
        }
    }

    let root = frame.world(0).clone();
    let mut model = KripkeModel::new(frame, &root).expect("root exists");
    for var in 1..=ctx.var_count() {
        model.declare(var);
    }
    for (pos, (level, assignment)) in nodes.iter().enumerate() {
        for &k in assignment {
            model.set_true(k, pos);
        }
        for i in 0..=(*level).min(n + 1) {
            model.set_true(ctx.q(i), pos);
        }
    }
    Ok((model, ctx))
}

fn gadget(m: u32, plus: bool, host: Option<&WorldId>) -> Result<KripkeFrame, ReductionError> {
    if m == 0 {
        return Err(ReductionError::ZeroIndex);
    }
    let mut parts = vec![GadgetPart::B];
    parts.extend((0..=m).map(GadgetPart::A));
    if plus {
        parts.push(GadgetPart::C);
    }
    let mut fr = KripkeFrame::with_worlds(parts.iter().map(|&p| WorldId::gadget(m, p, host)))
        .expect("gadget parts are distinct");
    let pos = |p: GadgetPart| parts.iter().position(|x| *x == p).unwrap();
    fr.add_edge(pos(GadgetPart::A(0)), pos(GadgetPart::B));
    fr.add_edge(pos(GadgetPart::B), pos(GadgetPart::B));
    for i in 0..m {
        fr.add_edge(pos(GadgetPart::A(i)), pos(GadgetPart::A(i + 1)));
    }
    if plus {
        fr.add_edge(pos(GadgetPart::C), pos(GadgetPart::C));
        fr.add_edge(pos(GadgetPart::C), pos(GadgetPart::A(0)));
    }
    Ok(fr.close(ClosureMode::Transitive))
}

/// `F_m`: worlds `b, a_0, …, a_m`; transitive closure of
/// `a_0→b, b→b, a_i→a_{i+1}`.
pub fn frame_fm(m: u32) -> Result<KripkeFrame, ReductionError> {
    gadget(m, false, None)
}

/// `F_m⁺`: `F_m` plus an entry world `c` with `c→c, c→a_0`, closed
/// transitively.
pub fn frame_fm_plus(m: u32) -> Result<KripkeFrame, ReductionError> {
    gadget(m, true, None)
}

/// Builds `M′` from a quantifier-tree model.
///
/// For every base world `w` and every `1 ≤ m ≤ 2n+2` with `p_m` false at
/// `w`, a copy of `F_m` tagged with `w` is added together with the edge
/// `w → a_0`; the relation is then closed transitively. New worlds get the
/// empty valuation and the root is unchanged.
pub fn extend_model(
    base: &KripkeModel,
    ctx: &EncodingContext,
) -> Result<KripkeModel, ReductionError> {
    if !base.is_upward_persistent() {
        return Err(ReductionError::NotPersistent);
    }
    let base_frame = base.frame();
    let mut frame = base_frame.clone();
    for w in 0..base_frame.len() {
        let host = base_frame.world(w).clone();
        for m in 1..=ctx.var_count() {
            if base.holds(m, w) {
                continue;
            }
            let copy = gadget(m, false, Some(&host))?;
            let offset = frame.len();
            for id in copy.worlds() {
                frame
                    .add_world(id.clone())
                    .map_err(|_| ReductionError::NotPersistent)?;
            }
            for (i, j) in copy.edges() {
                frame.add_edge(offset + i, offset + j);
            }
            let entry = copy
                .index_of(&WorldId::gadget(m, GadgetPart::A(0), Some(&host)))
                .unwrap();
            frame.add_edge(w, offset + entry);
        }
    }
    let frame = frame.close(ClosureMode::Transitive);
    let mut model = KripkeModel::new(frame, base.root_id()).expect("root is kept");
    for (&var, ext) in base.valuation() {
        model.declare(var);
        for &w in ext {
            model.set_true(var, w);
        }
    }
    Ok(model)
}

/// A world and index where `(M′, w) ⊭ α_m ⟺ w ∈ W ∧ (M, w) ⊭ p_m` fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceViolation {
    pub m: u32,
    pub world: WorldId,
    pub alpha_true: bool,
}

/// Checks the key equivalence `(M′, w) ⊭ α_m ⟺ w ∈ W and (M, w) ⊭ p_m`
/// at every world of `M′` for `m = 1..=max_m`, returning every failure.
///
/// Base worlds are the `Base`-tagged ones, and `M′` carries the base
/// valuation on them.
pub fn alpha_equivalence_violations(
    extended: &KripkeModel,
    max_m: u32,
) -> Vec<EquivalenceViolation> {
    let fr = extended.frame();
    let mut out = Vec::new();
    for m in 1..=max_m {
        let truth = constant_truth_set(fr, &alpha(m).expect("m >= 1"));
        for (w, id) in fr.worlds().iter().enumerate() {
            let expected_false = id.is_base() && !extended.holds(m, w);
            if truth[w] == expected_false {
                out.push(EquivalenceViolation {
                    m,
                    world: id.clone(),
                    alpha_true: truth[w],
                });
            }
        }
    }
    out
}
