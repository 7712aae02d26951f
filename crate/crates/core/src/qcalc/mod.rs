//! Exact arithmetic in `Z[q]`, `Q`, and truncated series over `Z[q]`.

mod interp;
mod poly;
mod qanalog;
mod rat;
mod series;

pub use interp::interpolate;
pub use poly::QPoly;
pub use qanalog::{binom2, q_binomial, q_factorial, q_int, q_pochhammer, shifted_bracket_product};
pub use rat::QRat;
pub use series::TSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QCalcError {
    #[error("polynomial division has a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("degree {degree} does not fit in a reversal window of {window}")]
    DegreeTooHigh { degree: usize, window: usize },
    #[error("interpolant coefficient of q^{index} is {value}, not an integer")]
    NonIntegerCoefficients { index: usize, value: String },
    #[error("interpolation needs at least one point")]
    NoPoints,
    #[error("abscissa {0} appears twice")]
    RepeatedAbscissa(String),
    #[error("comparison mod t^{requested} exceeds available truncation {available}")]
    TruncationTooShort { requested: usize, available: usize },
    #[error("invalid rational literal {0:?} (expected a/b or an integer)")]
    BadRational(String),
}
