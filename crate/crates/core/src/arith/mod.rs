//! Outward-rounded interval arithmetic and the special functions needed by
//! the embedding constants.

mod elementary;
mod gamma;
mod interval;
mod rational;
pub mod round;

pub use elementary::{exp, ln, ln2, pi, powf};
pub use gamma::gamma;
pub use interval::{next_after_up, Interval};
pub use rational::{bigint_enclose, ratio_enclose, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division-by-zero-interval")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(&'static str),
}
