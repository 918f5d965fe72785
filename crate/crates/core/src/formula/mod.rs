//! Syntax of quantified Boolean formulas and modal formulas.

pub mod dag;
pub mod modal;
pub mod parse;
pub mod qbf;
mod render;

pub use modal::{ModalFormula, Substitution};
pub use parse::{parse_modal, parse_modal_sugared, parse_qbf, ParseError, ParseErrorKind};
pub use qbf::{QbfFormula, Quantifier};
