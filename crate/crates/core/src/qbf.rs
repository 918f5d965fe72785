//! Truth of quantified Boolean formulas: evaluation, universal closure,
//! prenexing and TQBF membership.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formula::{QbfFormula, Quantifier};

/// A classical model: the set of variables that are true.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QbfModel(BTreeSet<u32>);

impl QbfModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.contains(&i)
    }

    pub fn with(&self, i: u32) -> Self {
        let mut s = self.0.clone();
        s.insert(i);
        QbfModel(s)
    }

    pub fn without(&self, i: u32) -> Self {
        let mut s = self.0.clone();
        s.remove(&i);
        QbfModel(s)
    }

    pub fn vars(&self) -> &BTreeSet<u32> {
        &self.0
    }
}

impl FromIterator<u32> for QbfModel {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        QbfModel(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QbfError {
    #[error("formula is not closed; free variables {0:?}")]
    NotClosed(BTreeSet<u32>),
    #[error("formula is not in prenex form")]
    NotPrenex,
}

/// Variables with at least one free occurrence.
pub fn free_vars(f: &QbfFormula) -> BTreeSet<u32> {
    use QbfFormula as Q;
    match f {
        Q::Var(i) => BTreeSet::from([*i]),
        Q::Falsum => BTreeSet::new(),
        Q::And(a, b) | Q::Or(a, b) | Q::Implies(a, b) => {
            let mut s = free_vars(a);
            s.extend(free_vars(b));
            s
        }
        Q::Forall(i, a) | Q::Exists(i, a) => {
            let mut s = free_vars(a);
            s.remove(i);
            s
        }
    }
}

pub fn is_closed(f: &QbfFormula) -> bool {
    free_vars(f).is_empty()
}

/// `∀q₁…∀qₙ f` over the free variables of `f` in increasing index order.
pub fn universal_closure(f: &QbfFormula) -> QbfFormula {
    free_vars(f)
        .into_iter()
        .rev()
        .fold(f.clone(), |acc, i| QbfFormula::forall(i, acc))
}

/// `m ⊨ f`, by direct recursion over the satisfaction clauses.
pub fn evaluate(m: &QbfModel, f: &QbfFormula) -> bool {
    use QbfFormula as Q;
    match f {
        Q::Var(i) => m.contains(*i),
        Q::Falsum => false,
        Q::And(a, b) => evaluate(m, a) && evaluate(m, b),
        Q::Or(a, b) => evaluate(m, a) || evaluate(m, b),
        Q::Implies(a, b) => !evaluate(m, a) || evaluate(m, b),
        Q::Forall(i, a) => evaluate(&m.with(*i), a) && evaluate(&m.without(*i), a),
        Q::Exists(i, a) => evaluate(&m.with(*i), a) || evaluate(&m.without(*i), a),
    }
}

/// Membership in TQBF: `∅ ⊨ ∀̄f`.
pub fn is_true_qbf(f: &QbfFormula) -> bool {
    evaluate(&QbfModel::new(), &universal_closure(f))
}

/// Converts a closed formula to prenex form.
///
/// Bound variables are first renamed apart (the first binder of an index
/// keeps it, later clashing binders get fresh indices above every index in
/// the formula), then quantifiers are pulled out left operand first. The
/// quantifier count is preserved. Formulas already in prenex form are
/// returned unchanged.
pub fn to_prenex(f: &QbfFormula) -> Result<QbfFormula, QbfError> {
    let free = free_vars(f);
    if !free.is_empty() {
        return Err(QbfError::NotClosed(free));
    }
    if f.is_prenex() {
        return Ok(f.clone());
    }
    let mut fresh = f.max_index() + 1;
    let mut used = BTreeSet::new();
    let renamed = rename_apart(f, &mut Vec::new(), &mut used, &mut fresh);
    let (prefix, matrix) = pull(&renamed);
    Ok(QbfFormula::with_prefix(&prefix, matrix))
}

fn rename_apart(
    f: &QbfFormula,
    scope: &mut Vec<(u32, u32)>,
    used: &mut BTreeSet<u32>,
    fresh: &mut u32,
) -> QbfFormula {
    use QbfFormula as Q;
    match f {
        Q::Var(i) => {
            let target = scope
                .iter()
                .rev()
                .find(|(from, _)| from == i)
                .map(|(_, to)| *to);
            Q::Var(target.unwrap_or(*i))
        }
        Q::Falsum => Q::Falsum,
        Q::And(a, b) => Q::and(
            rename_apart(a, scope, used, fresh),
            rename_apart(b, scope, used, fresh),
        ),
        Q::Or(a, b) => Q::or(
            rename_apart(a, scope, used, fresh),
            rename_apart(b, scope, used, fresh),
        ),
        Q::Implies(a, b) => Q::implies(
            rename_apart(a, scope, used, fresh),
            rename_apart(b, scope, used, fresh),
        ),
        Q::Forall(i, a) | Q::Exists(i, a) => {
            let target = if used.insert(*i) {
                *i
            } else {
                let t = *fresh;
                *fresh += 1;
                used.insert(t);
                t
            };
            scope.push((*i, target));
            let body = rename_apart(a, scope, used, fresh);
            scope.pop();
            let q = if matches!(f, Q::Forall(..)) {
                Quantifier::Forall
            } else {
                Quantifier::Exists
            };
            QbfFormula::quantified(q, target, body)
        }
    }
}

/// Pulls all quantifiers of a renamed-apart formula to the front.
fn pull(f: &QbfFormula) -> (Vec<(Quantifier, u32)>, QbfFormula) {
    use QbfFormula as Q;
    match f {
        Q::Var(_) | Q::Falsum => (Vec::new(), f.clone()),
        Q::Forall(i, a) | Q::Exists(i, a) => {
            let q = if matches!(f, Q::Forall(..)) {
                Quantifier::Forall
            } else {
                Quantifier::Exists
            };
            let (mut prefix, m) = pull(a);
            prefix.insert(0, (q, *i));
            (prefix, m)
        }
        Q::And(a, b) | Q::Or(a, b) => {
            let (mut pa, ma) = pull(a);
            let (pb, mb) = pull(b);
            pa.extend(pb);
            let m = if matches!(f, Q::And(..)) {
                Q::and(ma, mb)
            } else {
                Q::or(ma, mb)
            };
            (pa, m)
        }
        Q::Implies(a, b) => {
            // quantifiers in the antecedent flip
            let (pa, ma) = pull(a);
            let (pb, mb) = pull(b);
            let mut prefix: Vec<_> = pa.into_iter().map(|(q, i)| (q.dual(), i)).collect();
            prefix.extend(pb);
            (prefix, Q::implies(ma, mb))
        }
    }
}

/// Negates a closed prenex formula by dualizing every quantifier and
/// negating the matrix (`φ′ → ⊥`).
pub fn negate_prenex(f: &QbfFormula) -> Result<QbfFormula, QbfError> {
    let free = free_vars(f);
    if !free.is_empty() {
        return Err(QbfError::NotClosed(free));
    }
    let (prefix, matrix) = f.split_prefix();
    if !matrix.is_quantifier_free() {
        return Err(QbfError::NotPrenex);
    }
    let dual: Vec<_> = prefix.iter().map(|&(q, i)| (q.dual(), i)).collect();
    Ok(QbfFormula::with_prefix(
        &dual,
        QbfFormula::not(matrix.clone()),
    ))
}
