//! Reduction toolkit from true quantified Boolean formulas to the
//! variable-free fragment of modal logics between K and weak Grzegorczyk
//! logic.

pub mod corpus;
pub mod formula;
pub mod kripke;
pub mod qbf;
pub mod reduction;
pub mod solver;
pub mod verify;
