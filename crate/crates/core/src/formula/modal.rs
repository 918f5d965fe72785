//! Modal formulas over numbered propositional variables.

use std::collections::{BTreeMap, BTreeSet};

/// A modal formula.
///
/// Besides the core connectives the tree may carry the iterated-box sugar
/// used by the encodings (`BoxPlus`, `BoxUpTo`, `BoxPow`, `DiaPow`); see
/// [`ModalFormula::expand_sugar`] for their meaning. Conjunction is n-ary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalFormula {
    Var(u32),
    Falsum,
    Verum,
    Not(Box<ModalFormula>),
    And(Vec<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Implies(Box<ModalFormula>, Box<ModalFormula>),
    Box(Box<ModalFormula>),
    Dia(Box<ModalFormula>),
    /// `□⁺φ = φ ∧ □φ`.
    BoxPlus(Box<ModalFormula>),
    /// `□^{≤n}φ = φ ∧ □φ ∧ … ∧ □ⁿφ`.
    BoxUpTo(u32, Box<ModalFormula>),
    /// `□ⁿφ`.
    BoxPow(u32, Box<ModalFormula>),
    /// `◇ⁿφ`.
    DiaPow(u32, Box<ModalFormula>),
}

impl ModalFormula {
    pub fn var(i: u32) -> Self {
        ModalFormula::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: ModalFormula) -> Self {
        ModalFormula::Not(Box::new(f))
    }

    pub fn or(l: ModalFormula, r: ModalFormula) -> Self {
        ModalFormula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: ModalFormula, r: ModalFormula) -> Self {
        ModalFormula::Implies(Box::new(l), Box::new(r))
    }

    pub fn boxed(f: ModalFormula) -> Self {
        ModalFormula::Box(Box::new(f))
    }

    pub fn dia(f: ModalFormula) -> Self {
        ModalFormula::Dia(Box::new(f))
    }

    pub fn box_plus(f: ModalFormula) -> Self {
        ModalFormula::BoxPlus(Box::new(f))
    }

    pub fn box_up_to(n: u32, f: ModalFormula) -> Self {
        ModalFormula::BoxUpTo(n, Box::new(f))
    }

    pub fn box_pow(n: u32, f: ModalFormula) -> Self {
        ModalFormula::BoxPow(n, Box::new(f))
    }

    pub fn dia_pow(n: u32, f: ModalFormula) -> Self {
        ModalFormula::DiaPow(n, Box::new(f))
    }

    /// Conjunction of `items`: `⊤` when empty, the item itself when there is
    /// exactly one, an n-ary `And` otherwise.
    pub fn conj(mut items: Vec<ModalFormula>) -> Self {
        match items.len() {
            0 => ModalFormula::Verum,
            1 => items.pop().unwrap(),
            _ => ModalFormula::And(items),
        }
    }

    fn map_children(&self, mut f: impl FnMut(&ModalFormula) -> ModalFormula) -> ModalFormula {
        use ModalFormula as M;
        match self {
            M::Var(_) | M::Falsum | M::Verum => self.clone(),
            M::Not(a) => M::Not(Box::new(f(a))),
            M::And(xs) => M::And(xs.iter().map(f).collect()),
            M::Or(a, b) => M::Or(Box::new(f(a)), Box::new(f(b))),
            M::Implies(a, b) => M::Implies(Box::new(f(a)), Box::new(f(b))),
            M::Box(a) => M::Box(Box::new(f(a))),
            M::Dia(a) => M::Dia(Box::new(f(a))),
            M::BoxPlus(a) => M::BoxPlus(Box::new(f(a))),
            M::BoxUpTo(n, a) => M::BoxUpTo(*n, Box::new(f(a))),
            M::BoxPow(n, a) => M::BoxPow(*n, Box::new(f(a))),
            M::DiaPow(n, a) => M::DiaPow(*n, Box::new(f(a))),
        }
    }

    fn children(&self) -> Vec<&ModalFormula> {
        use ModalFormula as M;
        match self {
            M::Var(_) | M::Falsum | M::Verum => Vec::new(),
            M::And(xs) => xs.iter().collect(),
            M::Or(a, b) | M::Implies(a, b) => vec![a, b],
            M::Not(a)
            | M::Box(a)
            | M::Dia(a)
            | M::BoxPlus(a)
            | M::BoxUpTo(_, a)
            | M::BoxPow(_, a)
            | M::DiaPow(_, a) => vec![a],
        }
    }

    /// Rewrites every sugar node into core connectives.
    ///
    /// `□^{≤0}ψ` and `□⁰ψ` become `ψ`; `□^{≤n}ψ` becomes the n-ary
    /// conjunction `ψ ∧ □ψ ∧ … ∧ □ⁿψ`.
    pub fn expand_sugar(&self) -> ModalFormula {
        use ModalFormula as M;
        match self {
            M::BoxPlus(a) => {
                let a = a.expand_sugar();
                M::And(vec![a.clone(), M::boxed(a)])
            }
            M::BoxUpTo(n, a) => {
                let a = a.expand_sugar();
                let mut items = Vec::with_capacity(*n as usize + 1);
                let mut cur = a;
                for _ in 0..*n {
                    let next = M::boxed(cur.clone());
                    items.push(cur);
                    cur = next;
                }
                items.push(cur);
                M::conj(items)
            }
            M::BoxPow(n, a) => iterate(*n, a.expand_sugar(), M::boxed),
            M::DiaPow(n, a) => iterate(*n, a.expand_sugar(), M::dia),
            _ => self.map_children(|c| c.expand_sugar()),
        }
    }

    pub fn has_sugar(&self) -> bool {
        matches!(
            self,
            ModalFormula::BoxPlus(_)
                | ModalFormula::BoxUpTo(..)
                | ModalFormula::BoxPow(..)
                | ModalFormula::DiaPow(..)
        ) || self.children().into_iter().any(|c| c.has_sugar())
    }

    /// Indices of the variables occurring in the formula.
    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        if let ModalFormula::Var(i) = self {
            out.insert(*i);
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    /// True when no variable occurs in the formula.
    pub fn is_constant(&self) -> bool {
        match self {
            ModalFormula::Var(_) => false,
            _ => self.children().into_iter().all(|c| c.is_constant()),
        }
    }

    /// Simultaneous substitution of formulas for variables.
    pub fn substitute(&self, s: &Substitution) -> ModalFormula {
        match self {
            ModalFormula::Var(i) => s.get(*i).cloned().unwrap_or_else(|| self.clone()),
            _ => self.map_children(|c| c.substitute(s)),
        }
    }

    /// Symbol count of the sugar-expanded formula: one per leaf, one per
    /// unary or binary connective, `arity - 1` per n-ary conjunction.
    pub fn size(&self) -> usize {
        use ModalFormula as M;
        match self {
            M::Var(_) | M::Falsum | M::Verum => 1,
            M::Not(a) | M::Box(a) | M::Dia(a) => 1 + a.size(),
            M::And(xs) => xs.len().saturating_sub(1) + xs.iter().map(|x| x.size()).sum::<usize>(),
            M::Or(a, b) | M::Implies(a, b) => 1 + a.size() + b.size(),
            M::BoxPlus(a) => 2 + 2 * a.size(),
            M::BoxUpTo(n, a) => {
                // ψ ∧ □ψ ∧ … ∧ □ⁿψ: n+1 copies, n ∧-symbols, 0+1+…+n boxes
                let n = *n as usize;
                (n + 1) * a.size() + n + n * (n + 1) / 2
            }
            M::BoxPow(n, a) | M::DiaPow(n, a) => *n as usize + a.size(),
        }
    }

    /// Nesting depth of modal operators in the expanded formula.
    pub fn modal_depth(&self) -> usize {
        use ModalFormula as M;
        match self {
            M::Var(_) | M::Falsum | M::Verum => 0,
            M::Box(a) | M::Dia(a) | M::BoxPlus(a) => 1 + a.modal_depth(),
            M::BoxUpTo(n, a) | M::BoxPow(n, a) | M::DiaPow(n, a) => *n as usize + a.modal_depth(),
            _ => self
                .children()
                .into_iter()
                .map(|c| c.modal_depth())
                .max()
                .unwrap_or(0),
        }
    }
}

fn iterate(n: u32, f: ModalFormula, op: fn(ModalFormula) -> ModalFormula) -> ModalFormula {
    (0..n).fold(f, |acc, _| op(acc))
}

/// A finite map from variable indices to formulas; indices outside the
/// domain are left untouched.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<u32, ModalFormula>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, var: u32, f: ModalFormula) -> Option<ModalFormula> {
        self.map.insert(var, f)
    }

    pub fn get(&self, var: u32) -> Option<&ModalFormula> {
        self.map.get(&var)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &ModalFormula)> {
        self.map.iter().map(|(k, v)| (*k, v))
    }
}

impl FromIterator<(u32, ModalFormula)> for Substitution {
    fn from_iter<T: IntoIterator<Item = (u32, ModalFormula)>>(iter: T) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ModalFormula as M;

    #[test]
    fn box_plus_expands_to_conjunction() {
        let f = M::box_plus(M::var(1));
        assert_eq!(
            f.expand_sugar(),
            M::And(vec![M::var(1), M::boxed(M::var(1))])
        );
    }

    #[test]
    fn box_up_to_zero_is_identity() {
        assert_eq!(M::box_up_to(0, M::var(3)).expand_sugar(), M::var(3));
        assert_eq!(M::box_pow(0, M::var(3)).expand_sugar(), M::var(3));
    }

    #[test]
    fn box_up_to_two() {
        let psi = M::var(1);
        assert_eq!(
            M::box_up_to(2, psi.clone()).expand_sugar(),
            M::And(vec![
                psi.clone(),
                M::boxed(psi.clone()),
                M::boxed(M::boxed(psi))
            ])
        );
    }

    #[test]
    fn sizes() {
        assert_eq!(M::Falsum.size(), 1);
        assert_eq!(M::boxed(M::Falsum).size(), 2);
        assert_eq!(M::And(vec![M::var(1), M::var(2), M::var(3)]).size(), 5);
    }

    #[test]
    fn sugar_size_matches_expansion() {
        let psi = M::implies(M::var(1), M::dia(M::var(2)));
        for n in 0..5 {
            for f in [
                M::box_up_to(n, psi.clone()),
                M::box_pow(n, psi.clone()),
                M::dia_pow(n, psi.clone()),
                M::box_plus(psi.clone()),
            ] {
                assert_eq!(f.size(), f.expand_sugar().size(), "{f:?}");
                assert_eq!(f.modal_depth(), f.expand_sugar().modal_depth());
            }
        }
    }

    #[test]
    fn substitution_basics() {
        let s: Substitution = [(1, M::Falsum)].into_iter().collect();
        assert_eq!(M::boxed(M::var(1)).substitute(&s), M::boxed(M::Falsum));
        let f = M::implies(M::var(1), M::dia(M::var(2)));
        assert_eq!(f.substitute(&Substitution::new()), f);
    }

    #[test]
    fn constancy() {
        assert!(M::boxed(M::Falsum).is_constant());
        assert!(!M::boxed(M::var(2)).is_constant());
        assert_eq!(
            M::And(vec![M::var(2), M::var(1), M::var(2)]).vars(),
            BTreeSet::from([1, 2])
        );
    }
}
