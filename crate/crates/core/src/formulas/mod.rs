//! Closed forms for `A_c(q)` on the structured families, q-hit numbers,
//! Carlitz–Scoville q-analogs, and a dispatcher over all of them.

mod carlitz;
mod dispatch;
mod families;
mod hits;
mod one_hole;

pub use carlitz::{carlitz_scoville_by_definition, carlitz_scoville_q, carlitz_scoville_series, CSParams};
pub use dispatch::{best_formula, dispatch, evaluate, CrossCheck, EvalReport, Method, MethodChoice};
pub use families::{
    a_almost_lukasiewicz, a_connected, a_lukasiewicz, a_weakly_lukasiewicz, alternating_sum, connected_series,
    generating_series,
};
pub use hits::{
    hit_counts_brute_force, hit_to_connected, q_hit, q_hit_row, staircase_partitions, ConnectedMatch, HitIndex,
};
pub use one_hole::{a_one_hole, corrective_coefficient, corrective_series};

use crate::config::ConfigError;
use crate::engine::EngineError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("configuration is not in the {0} family")]
    WrongFamily(&'static str),
    #[error("shift {shift} is out of range (at most {max})")]
    ShiftOutOfRange { shift: usize, max: usize },
    #[error("shift {shift} exceeds the largest weakly Lukasiewicz shift {bound}")]
    ShiftBeyondWeaklyBound { shift: usize, bound: usize },
    #[error("core holds {balls} balls but n = {n}")]
    BallCount { balls: usize, n: usize },
    #[error("invalid partition {0}")]
    BadPartition(String),
    #[error("hit index {i} is outside [0;{n}]")]
    BadHitIndex { i: usize, n: usize },
    #[error("Carlitz–Scoville parameters need x, y >= 1 (got x = {x}, y = {y})")]
    BadCarlitzScoville { x: usize, y: usize },
    #[error("connected realisation failed verification: {0}")]
    NoMatch(String),
    #[error("H_{i} vanishes, so no connected configuration realises it")]
    Vanishing { i: usize },
    #[error("closed form left Z[q]")]
    Integrality,
    #[error("no closed form applies to this configuration")]
    NoFormula,
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}
