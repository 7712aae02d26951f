//! Exact computation of remixed Eulerian numbers `A_c(q)`.
//!
//! Several independent routes are provided and cross-checked:
//!
//! * [`engine::remixed_exact`] evaluates the ball-drop dynamics exactly at
//!   rational points and interpolates;
//! * [`engine::remixed_induction`] runs the memoized final-step induction;
//! * [`formulas`] holds the closed forms for the Lukasiewicz, almost
//!   Lukasiewicz, connected, weakly Lukasiewicz and one-hole families,
//!   together with q-hit numbers and Carlitz–Scoville q-analogs;
//! * [`simulate`] estimates the same probabilities by seeded Monte Carlo;
//! * [`verify`] runs the identity suites against the memoised oracle.

pub mod config;
pub mod engine;
pub mod formulas;
pub mod qcalc;
pub mod simulate;
pub mod verify;

pub use config::{Classification, Configuration};
pub use qcalc::{QPoly, QRat, TSeries};
