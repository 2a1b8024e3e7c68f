//! Verified eigenvalues of the symmetric pencil `B x = κ A x` with `A`
//! positive definite.
//!
//! A floating-point approximate diagonalization `X` (with `XᵀAX ≈ I`,
//! `XᵀBX ≈ D`) is checked a posteriori: `G = XᵀAX` and `H = XᵀBX` are
//! enclosed with midpoint-radius products, `‖G - I‖ < 1` certifies that `A`
//! is definite and `X` is nonsingular, Weyl's inequality places the eigenvalues
//! of `H` around `D`, and Ostrowski's theorem transfers them to the pencil
//! `(H, G)`, which is congruent to `(B, A)`.

use nalgebra::DMatrix;

use crate::arith::round::{add_up, div_down, div_up, sub_down, sub_up};
use crate::arith::Interval;
use crate::error::{Error, Result};

const U: f64 = f64::EPSILON / 2.0;

fn gamma_n(n: usize) -> f64 {
    let nu = n as f64 * U;
    nu / (1.0 - 2.0 * nu)
}

/// Matrix enclosure `{M : |M - mid| <= rad}`.
#[derive(Clone, Debug)]
pub struct MidRad {
    pub mid: DMatrix<f64>,
    pub rad: DMatrix<f64>,
}

impl MidRad {
    pub fn point(m: DMatrix<f64>) -> Self {
        let rad = DMatrix::zeros(m.nrows(), m.ncols());
        MidRad { mid: m, rad }
    }

    pub fn from_intervals(a: &DMatrix<Interval>) -> Self {
        let mid = a.map(|v| v.mid());
        let rad = a.zip_map(&mid, |v, m| sub_up(v.hi(), m).max(sub_up(m, v.lo())));
        MidRad { mid, rad }
    }

    /// Enclosure of every product `P Q` with `P ∈ self`, `Q ∈ other`.
    ///
    /// Uses the a priori bound `|fl(AB) - AB| <= γ_n |A||B|` (valid for any
    /// summation order and with fused multiply-add) plus an underflow term,
    /// and bounds the floating-point evaluation of the radius itself by a
    /// relative safety factor.
    pub fn mul(&self, other: &MidRad) -> MidRad {
        let n = self.mid.ncols();
        let mid = &self.mid * &other.mid;
        let am = self.mid.abs();
        let bm = other.mid.abs();
        let s1 = &am * &bm;
        let s2 = &am * &other.rad;
        let s3 = &self.rad * (&bm + &other.rad);
        let g = gamma_n(n + 2);
        let safety = 1.0 + 2.0 * g + 16.0 * U;
        let tiny = 4.0 * (n as f64 + 2.0) * f64::MIN_POSITIVE;
        let rad = DMatrix::from_fn(mid.nrows(), mid.ncols(), |i, j| {
            (g * s1[(i, j)] + s2[(i, j)] + s3[(i, j)]) * safety + tiny
        });
        MidRad { mid, rad }
    }

    pub fn transpose(&self) -> MidRad {
        MidRad {
            mid: self.mid.transpose(),
            rad: self.rad.transpose(),
        }
    }

    /// Upper bound of `‖M - diag(d)‖_∞` over the enclosure.
    pub fn dist_inf_from_diag(&self, d: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.mid.nrows() {
            let mut row = 0.0;
            for j in 0..self.mid.ncols() {
                let m = self.mid[(i, j)];
                let dev = if i == j { sub_up(m, d[i]).max(sub_up(d[i], m)) } else { m.abs() };
                row = add_up(row, add_up(dev, self.rad[(i, j)]));
            }
            worst = worst.max(row);
        }
        worst
    }
}

/// Approximate `X` with `XᵀAX ≈ I`, `XᵀBX ≈ diag(κ)`, κ descending.
fn approx_diagonalize(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let chol = a.clone().cholesky().ok_or(Error::PencilNotDefinite)?;
    let l = chol.l();
    let z = l.solve_lower_triangular(b).ok_or(Error::PencilNotDefinite)?;
    let c = l.solve_lower_triangular(&z.transpose()).ok_or(Error::PencilNotDefinite)?;
    let c = (&c + c.transpose()) * 0.5;
    let eig = c.symmetric_eigen();
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let q = DMatrix::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    let x = l.transpose().solve_upper_triangular(&q).ok_or(Error::PencilNotDefinite)?;
    let kappa = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    Ok((x, kappa))
}

/// Enclosures of the eigenvalues `κ_1 >= κ_2 >= ...` of `B x = κ A x`.
pub fn enclose_kappa(a: &DMatrix<Interval>, b: &DMatrix<Interval>) -> Result<Vec<Interval>> {
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let am = MidRad::from_intervals(a);
    let bm = MidRad::from_intervals(b);
    let (x, d) = approx_diagonalize(&am.mid, &bm.mid)?;
    let xp = MidRad::point(x);
    let xt = xp.transpose();
    let g = xt.mul(&am.mul(&xp));
    let h = xt.mul(&bm.mul(&xp));
    let eta = g.dist_inf_from_diag(&vec![1.0; n]);
    if !(eta < 1.0) {
        return Err(Error::PencilNotDefinite);
    }
    let e = h.dist_inf_from_diag(&d);
    let (s_lo, s_hi) = (add_up(1.0, eta), sub_down(1.0, eta));
    Ok(d
        .iter()
        .map(|&dk| {
            let (a, b) = (sub_down(dk, e), add_up(dk, e));
            let lo = if a >= 0.0 { div_down(a, s_lo) } else { div_down(a, s_hi) };
            let hi = if b >= 0.0 { div_up(b, s_hi) } else { div_up(b, s_lo) };
            Interval::new(lo, hi)
        })
        .collect())
}
