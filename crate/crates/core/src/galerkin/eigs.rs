use nalgebra::{DMatrix, SymmetricEigen};

use super::newton::GalerkinSolution;
use super::system::{quadrature_order, GalerkinSystem};
use crate::arith::next_after_up;
use crate::basis::SymmetrySpace;

/// Default truncation for the diagnostic eigenproblem.
pub fn default_m_diag(n_dim: usize) -> usize {
    if n_dim == 1 {
        40
    } else {
        30
    }
}

/// Smallest `k` values of `μ = 1 - 1/λ`, where `λ` are the eigenvalues of
/// `(∇v, ∇φ) + τ(v, φ) = λ (τ v + w f'(û) v, φ)` discretized on the
/// unrestricted space of order `m_diag`, in ascending order.
pub fn approx_eigs(u: &GalerkinSolution, k: usize, m_diag: usize) -> Vec<f64> {
    let tau = next_after_up(0.0);
    approx_eigs_tau(u, k, m_diag, tau)
}

pub fn approx_eigs_tau(u: &GalerkinSolution, k: usize, m_diag: usize, tau: f64) -> Vec<f64> {
    let n = u.spec.n_dim;
    let space = SymmetrySpace::full(n, m_diag);
    let nq = quadrature_order(&u.spec, m_diag.max(u.space.m));
    let sys = GalerkinSystem::with_order(u.spec, space, nq);
    let tensor = u.space.to_tensor(&u.coeffs).expect("consistent shape");
    let vals = sys.grid_values_of_tensor(u.space.m, &tensor);
    let pot = sys.weighted_derivative(&vals);
    let mass = sys.mass_matrix();
    let a = sys.operator_matrix(None, 1.0, 0.0) + &mass * tau;
    let b = sys.operator_matrix(Some(&pot), 0.0, 1.0) + &mass * tau;
    let kappa = pencil_kappa(&a, &b);
    // μ = 1 - κ with κ = 1/λ; κ descending gives μ ascending
    kappa.iter().take(k).map(|kv| 1.0 - kv).collect()
}

/// Eigenvalues `κ` of `B x = κ A x` for symmetric `B` and SPD `A`, descending.
pub fn pencil_kappa(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Vec<f64> {
    let l = a.clone().cholesky().expect("A is positive definite").l();
    let y = l.solve_lower_triangular(b).expect("nonsingular factor");
    let c = l.solve_lower_triangular(&y.transpose()).expect("nonsingular factor");
    let c = (&c + c.transpose()) * 0.5;
    let mut ev: Vec<f64> = SymmetricEigen::new(c).eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    ev
}
