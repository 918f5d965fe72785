//! Finite Kripke frames and models.

mod check;
mod frame;
mod json;
mod model;
mod world;

use thiserror::Error;

pub use check::{
    constant_truth_set, frame_validates, holds_at_root, model_check, truth_set, wgrz_axiom,
    Validity, DEFAULT_VALIDITY_BUDGET,
};
pub use frame::{ClosureMode, FrameClass, KripkeFrame};
pub use json::{frame_from_json, frame_to_json, model_from_json, model_to_json};
pub use model::KripkeModel;
pub use world::{GadgetPart, WorldId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("valuation search needs {needed} bits, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("model has no root world")]
    MissingRoot,
    #[error("malformed model document: {0}")]
    Json(String),
}
