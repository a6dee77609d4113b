//! Exact GHZ contradictions for `N` qudits of dimension `d`.
//!
//! Phases are exact rationals of a turn. Operators are products of rotated
//! shift operators `X_k(φ)`, GHZ states are tracked in the span of their
//! diagonal kets, and hidden-variable models become linear congruences over
//! `Z_d`.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod ghz;
pub mod hv;
pub mod ops;
pub mod phase;

pub use error::{Error, ParsePhaseError, Result};
pub use ghz::GhzState;
pub use hv::{HvSystem, HvVerdict, Status};
pub use ops::{MonomialOp, ProductOperator};
pub use phase::{Angle, RationalPhase};
