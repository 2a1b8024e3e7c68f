//! Floating-point Galerkin solver, seeding, continuation in `l`, and
//! diagnostic eigenvalues.

mod continuation;
mod eigs;
mod newton;
pub mod presets;
mod seed;
mod system;

pub use continuation::{l_values, symmetry_defect, trace_curve, ContinuationOptions, CurvePoint, Reflection, SymmetryStop};
pub use eigs::{approx_eigs, approx_eigs_tau, default_m_diag, pencil_kappa};
pub use newton::{newton_solve, newton_with_system, GalerkinSolution, NewtonOptions};
pub use presets::{parse_peaks, preset_peaks, PRESET_NAMES};
pub use seed::{make_seed, Peak};
pub use system::{quadrature_order, GalerkinSystem};
