//! Legendre-type basis `φ_n`, symmetry subspaces, and rigorous polynomial
//! series on the unit box.

mod assemble;
pub mod gram;
pub mod legendre;
mod phi;
mod series;
mod space;
mod weight;

pub use assemble::{assemble_function, phi_legendre, tensor_to_series};
pub use legendre::Linearization;
pub use phi::{build_phi, shifted_legendre_monomial, BasisFunction};
pub use series::PolySeries;
pub use space::{BasisIndex, SpaceKind, SymmetrySpace, TensorTerm};
pub use weight::weight_poly;

use crate::arith::Interval;

/// Rigorous integral over the unit box.
pub fn integrate_poly(p: &PolySeries) -> Interval {
    p.integrate()
}
