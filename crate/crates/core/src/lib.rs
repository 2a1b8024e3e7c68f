//! Galerkin approximation and computer-assisted existence proofs for the
//! Hénon equation `-Δu = |x - x0|^l |u|^{p-1} u` on the unit interval and the
//! unit square with zero Dirichlet data.

pub mod arith;
pub mod basis;
pub mod constants;
pub mod eigen;
pub mod error;
pub mod galerkin;
pub mod nk;
pub mod problem;
pub mod report;
pub mod supremum;

pub use arith::Interval;
pub use basis::{PolySeries, SpaceKind, SymmetrySpace};
pub use error::{Error, Result};
pub use problem::ProblemSpec;
