//! Concrete syntax printing; the inverse of [`super::parse`].
//!
//! Binary and n-ary connectives are always parenthesized, so the printed
//! text parses back to the same tree without precedence reasoning.

use std::fmt;

use super::modal::ModalFormula;
use super::qbf::QbfFormula;

impl fmt::Display for QbfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QbfFormula::Forall(i, b) => write!(f, "A p{i} . {b}"),
            QbfFormula::Exists(i, b) => write!(f, "E p{i} . {b}"),
            _ => write_qbf_operand(self, f),
        }
    }
}

fn write_qbf_operand(q: &QbfFormula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match q {
        QbfFormula::Var(i) => write!(f, "p{i}"),
        QbfFormula::Falsum => f.write_str("false"),
        QbfFormula::And(a, b) => binary(f, a, "&", b),
        QbfFormula::Or(a, b) => binary(f, a, "|", b),
        QbfFormula::Implies(a, b) => binary(f, a, "->", b),
        QbfFormula::Forall(..) | QbfFormula::Exists(..) => write!(f, "({q})"),
    }
}

fn binary(f: &mut fmt::Formatter<'_>, a: &QbfFormula, op: &str, b: &QbfFormula) -> fmt::Result {
    f.write_str("(")?;
    write_qbf_operand(a, f)?;
    write!(f, " {op} ")?;
    write_qbf_operand(b, f)?;
    f.write_str(")")
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModalFormula as M;
        match self {
            M::Var(i) => write!(f, "p{i}"),
            M::Falsum => f.write_str("false"),
            M::Verum => f.write_str("true"),
            M::Not(a) => write!(f, "~{a}"),
            M::And(xs) => match xs.as_slice() {
                [] => f.write_str("true"),
                [x] => write!(f, "{x}"),
                _ => {
                    f.write_str("(")?;
                    for (k, x) in xs.iter().enumerate() {
                        if k > 0 {
                            f.write_str(" & ")?;
                        }
                        write!(f, "{x}")?;
                    }
                    f.write_str(")")
                }
            },
            M::Or(a, b) => write!(f, "({a} | {b})"),
            M::Implies(a, b) => write!(f, "({a} -> {b})"),
            M::Box(a) => write!(f, "[] {a}"),
            M::Dia(a) => write!(f, "<> {a}"),
            M::BoxPlus(a) => write!(f, "box+ {a}"),
            M::BoxUpTo(n, a) => write!(f, "box<={n} {a}"),
            M::BoxPow(n, a) => write!(f, "box^{n} {a}"),
            M::DiaPow(n, a) => write!(f, "dia^{n} {a}"),
        }
    }
}
