//! The reduction from closed prenex QBFs to K-satisfiability: `φ*`, the
//! variable-free `φ*_α`, and the witness models for both directions.

mod encode;
mod witness;

use std::collections::BTreeSet;

use thiserror::Error;

pub use encode::{
    alpha, alpha_substitution, encode_alpha, encode_star, matrix_to_modal, EncodingContext,
};
pub use witness::{
    alpha_equivalence_violations, extend_model, frame_fm, frame_fm_plus, quantifier_tree,
    EquivalenceViolation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("formula has free variables {0:?}")]
    NotClosed(BTreeSet<u32>),
    #[error("formula is not in prenex form")]
    NotPrenex,
    #[error("formula has no quantifiers")]
    NoQuantifiers,
    #[error("quantifier {position} binds p{found}, expected p{position}")]
    Numbering { position: usize, found: u32 },
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("formula is false; it has no quantifier tree")]
    FalseFormula,
    #[error("base model is not upward persistent")]
    NotPersistent,
}
