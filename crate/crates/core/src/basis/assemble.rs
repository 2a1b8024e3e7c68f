use super::series::PolySeries;
use super::space::SymmetrySpace;
use crate::arith::Interval;
use crate::error::Result;

/// Legendre coefficients of `φ_i = (P̃_{i-1} - P̃_{i+1}) / (2(2i+1))`.
pub fn phi_legendre(i: usize) -> [(usize, f64); 2] {
    let s = 1.0 / (2.0 * (2 * i + 1) as f64);
    [(i - 1, s), (i + 1, -s)]
}

/// The polynomial `Σ_k coeffs[k] · basis_k` of a symmetry space.
pub fn assemble_function(space: &SymmetrySpace, coeffs: &[f64]) -> Result<PolySeries> {
    let u = space.to_tensor(coeffs)?;
    Ok(tensor_to_series(space.n_dim, space.m, &u))
}

/// Series of `Σ U[i][j] φ_i(x) φ_j(y)` from row-major tensor coefficients.
pub fn tensor_to_series(n_dim: usize, m: usize, u: &[f64]) -> PolySeries {
    if n_dim == 1 {
        let mut s = PolySeries::zeros(1, m + 2, 1);
        for i in 1..=m {
            let v = u[i - 1];
            if v == 0.0 {
                continue;
            }
            let c = Interval::point(v) / (2 * (2 * i + 1)) as f64;
            s.add_to(i - 1, 0, c);
            s.add_to(i + 1, 0, -c);
        }
        return s;
    }
    let mut s = PolySeries::zeros(2, m + 2, m + 2);
    for i in 1..=m {
        for j in 1..=m {
            let v = u[(i - 1) * m + j - 1];
            if v == 0.0 {
                continue;
            }
            let c = Interval::point(v) / (4 * (2 * i + 1) * (2 * j + 1)) as f64;
            s.add_to(i - 1, j - 1, c);
            s.add_to(i - 1, j + 1, -c);
            s.add_to(i + 1, j - 1, -c);
            s.add_to(i + 1, j + 1, c);
        }
    }
    s
}
