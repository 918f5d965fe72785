//! Quantified Boolean formulas.

/// A quantified Boolean formula over variables `p1, p2, …`.
///
/// There is no negation node; `¬x` is written `x → ⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QbfFormula {
    Var(u32),
    Falsum,
    And(Box<QbfFormula>, Box<QbfFormula>),
    Or(Box<QbfFormula>, Box<QbfFormula>),
    Implies(Box<QbfFormula>, Box<QbfFormula>),
    Forall(u32, Box<QbfFormula>),
    Exists(u32, Box<QbfFormula>),
}

/// Quantifier kind of a prefix entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }
}

impl QbfFormula {
    pub fn var(i: u32) -> Self {
        QbfFormula::Var(i)
    }

    pub fn and(l: QbfFormula, r: QbfFormula) -> Self {
        QbfFormula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: QbfFormula, r: QbfFormula) -> Self {
        QbfFormula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: QbfFormula, r: QbfFormula) -> Self {
        QbfFormula::Implies(Box::new(l), Box::new(r))
    }

    /// `x → ⊥`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: QbfFormula) -> Self {
        QbfFormula::implies(f, QbfFormula::Falsum)
    }

    pub fn forall(i: u32, body: QbfFormula) -> Self {
        QbfFormula::Forall(i, Box::new(body))
    }

    pub fn exists(i: u32, body: QbfFormula) -> Self {
        QbfFormula::Exists(i, Box::new(body))
    }

    pub fn quantified(q: Quantifier, i: u32, body: QbfFormula) -> Self {
        match q {
            Quantifier::Forall => QbfFormula::forall(i, body),
            Quantifier::Exists => QbfFormula::exists(i, body),
        }
    }

    /// Symbol count: one per leaf, connective and quantifier.
    pub fn size(&self) -> usize {
        use QbfFormula as Q;
        match self {
            Q::Var(_) | Q::Falsum => 1,
            Q::And(a, b) | Q::Or(a, b) | Q::Implies(a, b) => 1 + a.size() + b.size(),
            Q::Forall(_, a) | Q::Exists(_, a) => 1 + a.size(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        use QbfFormula as Q;
        match self {
            Q::Var(_) | Q::Falsum => true,
            Q::And(a, b) | Q::Or(a, b) | Q::Implies(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Q::Forall(..) | Q::Exists(..) => false,
        }
    }

    /// Splits a formula into its leading quantifier prefix and the rest.
    pub fn split_prefix(&self) -> (Vec<(Quantifier, u32)>, &QbfFormula) {
        let mut prefix = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                QbfFormula::Forall(i, b) => {
                    prefix.push((Quantifier::Forall, *i));
                    cur = b;
                }
                QbfFormula::Exists(i, b) => {
                    prefix.push((Quantifier::Exists, *i));
                    cur = b;
                }
                _ => return (prefix, cur),
            }
        }
    }

    /// True for `Q₁x₁…Qₙxₙ φ′` with quantifier-free `φ′`.
    pub fn is_prenex(&self) -> bool {
        self.split_prefix().1.is_quantifier_free()
    }

    /// Rebuilds `Q₁x₁…Qₙxₙ matrix`.
    pub fn with_prefix(prefix: &[(Quantifier, u32)], matrix: QbfFormula) -> QbfFormula {
        prefix
            .iter()
            .rev()
            .fold(matrix, |acc, &(q, i)| QbfFormula::quantified(q, i, acc))
    }

    /// Largest variable index occurring anywhere (bound or free), or 0.
    pub fn max_index(&self) -> u32 {
        use QbfFormula as Q;
        match self {
            Q::Var(i) => *i,
            Q::Falsum => 0,
            Q::And(a, b) | Q::Or(a, b) | Q::Implies(a, b) => a.max_index().max(b.max_index()),
            Q::Forall(i, a) | Q::Exists(i, a) => (*i).max(a.max_index()),
        }
    }
}
