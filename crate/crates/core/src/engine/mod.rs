//! Two independent exact evaluators of `A_c(q)`: the drop-dynamics oracle
//! and the final-step induction.

mod dynamics;
mod exact;
mod induction;

pub use dynamics::{
    big_step_weights, drop_order_check, success_probability, BigStepWeight, OccupiedState, MAX_SITES,
};
pub use exact::{remixed_exact, remixed_value};
pub use induction::{remixed_induction, split_terms, split_weight, FinalInduction, SplitTerm};

use crate::qcalc::QCalcError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("drop order does not have the configuration's content")]
    BadContent,
    #[error("q = {0} is negative")]
    NegativeQ(String),
    #[error("{0} sites exceed the supported maximum")]
    TooManySites(usize),
    #[error("oracle produced a negative coefficient: {0}")]
    NegativeCoefficient(String),
    #[error(transparent)]
    Interpolation(#[from] QCalcError),
}
