//! Floating-point Galerkin system: gradient and Jacobian of the discrete
//! energy on a symmetry space, integrated with tensor Gauss–Legendre rules.

use nalgebra::{DMatrix, DVector};

use crate::basis::gram::{mass_1d_f64, stiffness_1d_f64};
use crate::basis::legendre::gauss_legendre;
use crate::basis::SymmetrySpace;
use crate::problem::ProblemSpec;

/// Basis element `s` of the space as a list of `(tensor position, coef)`.
type ColumnMap = Vec<Vec<(usize, f64)>>;

pub struct GalerkinSystem {
    pub spec: ProblemSpec,
    pub space: SymmetrySpace,
    ax: Vec<usize>,
    ay: Vec<usize>,
    nodes: Vec<f64>,
    /// `φ_{ax[a]}(x_q)`, nq x |ax|.
    phix: DMatrix<f64>,
    phiy: DMatrix<f64>,
    /// Quadrature weight times `|x - x0|^l` on the grid.
    wgrid: DMatrix<f64>,
    kx: DMatrix<f64>,
    mx: DMatrix<f64>,
    ky: DMatrix<f64>,
    my: DMatrix<f64>,
    cols: ColumnMap,
}

fn phi_table(nodes: &[f64], idx: &[usize]) -> DMatrix<f64> {
    let mmax = idx.iter().copied().max().unwrap_or(1);
    let mut vals = Vec::new();
    let mut out = DMatrix::zeros(nodes.len(), idx.len());
    for (q, &x) in nodes.iter().enumerate() {
        crate::basis::legendre::values(x, mmax + 1, &mut vals);
        for (a, &i) in idx.iter().enumerate() {
            out[(q, a)] = (vals[i - 1] - vals[i + 1]) / (2.0 * (2 * i + 1) as f64);
        }
    }
    out
}

/// Number of Gauss nodes per axis integrating `w f(û) φ` exactly when the
/// integrand is a polynomial.
pub fn quadrature_order(spec: &ProblemSpec, m: usize) -> usize {
    let deg = (spec.p + 1.0) * (m as f64 + 1.0) + spec.l;
    (deg / 2.0).ceil() as usize + 4
}

impl GalerkinSystem {
    pub fn new(spec: ProblemSpec, space: SymmetrySpace) -> Self {
        Self::with_order(spec, space, quadrature_order(&spec, space.m))
    }

    pub fn with_order(spec: ProblemSpec, space: SymmetrySpace, nq: usize) -> Self {
        assert_eq!(spec.n_dim, space.n_dim);
        let index = space.index_set();
        let mut ax: Vec<usize> = Vec::new();
        let mut ay: Vec<usize> = Vec::new();
        for &b in &index {
            for t in space.terms(b) {
                ax.push(t.i);
                ay.push(t.j);
            }
        }
        ax.sort_unstable();
        ax.dedup();
        ay.sort_unstable();
        ay.dedup();
        let (nodes, weights) = gauss_legendre(nq);
        let phix = phi_table(&nodes, &ax);
        let two_d = space.n_dim == 2;
        let (phiy, ny) = if two_d {
            (phi_table(&nodes, &ay), nq)
        } else {
            (DMatrix::from_element(1, 1, 1.0), 1)
        };
        let mut wgrid = DMatrix::zeros(nq, ny);
        for q in 0..nq {
            for r in 0..ny {
                let (y, wy) = if two_d { (nodes[r], weights[r]) } else { (0.0, 1.0) };
                wgrid[(q, r)] = weights[q] * wy * spec.weight_at(nodes[q], y);
            }
        }
        let gram = |idx: &[usize], f: fn(usize, usize) -> f64| {
            DMatrix::from_fn(idx.len(), idx.len(), |a, b| f(idx[a], idx[b]))
        };
        let kx = gram(&ax, stiffness_1d_f64);
        let mx = gram(&ax, mass_1d_f64);
        let (ky, my) = if two_d {
            (gram(&ay, stiffness_1d_f64), gram(&ay, mass_1d_f64))
        } else {
            (DMatrix::zeros(1, 1), DMatrix::from_element(1, 1, 1.0))
        };
        let pos_x = |i: usize| ax.binary_search(&i).unwrap();
        let pos_y = |j: usize| ay.binary_search(&j).unwrap();
        let cols = index
            .iter()
            .map(|&b| {
                space
                    .terms(b)
                    .into_iter()
                    .map(|t| (pos_x(t.i) * ay.len() + pos_y(t.j), t.coef))
                    .collect()
            })
            .collect();
        GalerkinSystem {
            spec,
            space,
            ax,
            ay,
            nodes,
            phix,
            phiy,
            wgrid,
            kx,
            mx,
            ky,
            my,
            cols,
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    fn tensor(&self, coeffs: &[f64]) -> DMatrix<f64> {
        let ny = self.ay.len();
        let mut u = DMatrix::zeros(self.ax.len(), ny);
        for (s, col) in self.cols.iter().enumerate() {
            for &(t, c) in col {
                u[(t / ny, t % ny)] += c * coeffs[s];
            }
        }
        u
    }

    fn restrict(&self, g: &DMatrix<f64>) -> DVector<f64> {
        let ny = self.ay.len();
        DVector::from_iterator(
            self.dim(),
            self.cols
                .iter()
                .map(|col| col.iter().map(|&(t, c)| c * g[(t / ny, t % ny)]).sum()),
        )
    }

    fn stiffness_apply(&self, u: &DMatrix<f64>) -> DMatrix<f64> {
        &self.kx * u * &self.my + &self.mx * u * &self.ky
    }

    /// Values of `û` on the quadrature grid.
    pub fn grid_values(&self, coeffs: &[f64]) -> DMatrix<f64> {
        let u = self.tensor(coeffs);
        &self.phix * u * self.phiy.transpose()
    }

    /// `(∇û, ∇û)`.
    pub fn dirichlet_energy(&self, coeffs: &[f64]) -> f64 {
        let u = self.tensor(coeffs);
        u.dot(&self.stiffness_apply(&u))
    }

    /// `(û, û)_{L²}`.
    pub fn l2_sq(&self, coeffs: &[f64]) -> f64 {
        let u = self.tensor(coeffs);
        u.dot(&(&self.mx * &u * &self.my))
    }

    /// `g_k = (∇û, ∇b_k) - (w f(û), b_k)`.
    pub fn gradient(&self, coeffs: &[f64]) -> DVector<f64> {
        let u = self.tensor(coeffs);
        let vals = &self.phix * &u * self.phiy.transpose();
        let fw = DMatrix::from_fn(vals.nrows(), vals.ncols(), |q, r| {
            self.wgrid[(q, r)] * self.spec.nonlinearity(vals[(q, r)])
        });
        let g = self.stiffness_apply(&u) - self.phix.transpose() * fw * &self.phiy;
        self.restrict(&g)
    }

    /// Symmetric Jacobian `(∇b_m, ∇b_k) - ∫ w f'(û) b_m b_k`.
    pub fn jacobian(&self, coeffs: &[f64]) -> DMatrix<f64> {
        let potential = self.weighted_potential(coeffs);
        self.operator_matrix(Some(&potential), 1.0, -1.0)
    }

    /// `stiff (∇b_m, ∇b_k) + pot ∫ V b_m b_k` where `V` is given on the
    /// quadrature grid, already multiplied by the quadrature weights.
    pub fn operator_matrix(&self, v: Option<&DMatrix<f64>>, stiff: f64, pot: f64) -> DMatrix<f64> {
        let (na, nb) = (self.ax.len(), self.ay.len());
        let pmat = v.map(|v| {
            let nq = self.phix.nrows();
            let nqy = self.phiy.nrows();
            let px = DMatrix::from_fn(na * na, nq, |p, q| self.phix[(q, p / na)] * self.phix[(q, p % na)]);
            let py = DMatrix::from_fn(nqy, nb * nb, |r, p| self.phiy[(r, p / nb)] * self.phiy[(r, p % nb)]);
            // [(a a'), (b b')] = Σ_{q r} φ_a φ_a' V φ_b φ_b'
            px * v * py
        });
        let dim = self.dim();
        let entry = |t1: usize, t2: usize| -> f64 {
            let (a, b) = (t1 / nb, t1 % nb);
            let (a2, b2) = (t2 / nb, t2 % nb);
            let mut e = 0.0;
            if stiff != 0.0 {
                e += stiff * (self.kx[(a, a2)] * self.my[(b, b2)] + self.mx[(a, a2)] * self.ky[(b, b2)]);
            }
            if let Some(pm) = &pmat {
                e += pot * pm[(a * na + a2, b * nb + b2)];
            }
            e
        };
        let mut j = DMatrix::zeros(dim, dim);
        for s1 in 0..dim {
            for s2 in s1..dim {
                let mut acc = 0.0;
                for &(t1, c1) in &self.cols[s1] {
                    for &(t2, c2) in &self.cols[s2] {
                        acc += c1 * c2 * entry(t1, t2);
                    }
                }
                j[(s1, s2)] = acc;
                j[(s2, s1)] = acc;
            }
        }
        j
    }

    /// Gram matrix of the space in the L² inner product.
    pub fn mass_matrix(&self) -> DMatrix<f64> {
        let dim = self.dim();
        let nb = self.ay.len();
        let mut m = DMatrix::zeros(dim, dim);
        for s1 in 0..dim {
            for s2 in s1..dim {
                let mut acc = 0.0;
                for &(t1, c1) in &self.cols[s1] {
                    for &(t2, c2) in &self.cols[s2] {
                        acc += c1 * c2 * self.mx[(t1 / nb, t2 / nb)] * self.my[(t1 % nb, t2 % nb)];
                    }
                }
                m[(s1, s2)] = acc;
                m[(s2, s1)] = acc;
            }
        }
        m
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Values on this system's grid of a tensor expansion
    /// `Σ U[i][j] φ_i(x) φ_j(y)` of arbitrary order `m`.
    pub fn grid_values_of_tensor(&self, m: usize, u: &[f64]) -> DMatrix<f64> {
        let idx: Vec<usize> = (1..=m).collect();
        let px = phi_table(&self.nodes, &idx);
        if self.space.n_dim == 1 {
            return px * DMatrix::from_column_slice(m, 1, u);
        }
        let ut = DMatrix::from_fn(m, m, |i, j| u[i * m + j]);
        &px * ut * px.transpose()
    }

    /// `w f'(v)` times the quadrature weights, for grid values `v`.
    pub fn weighted_derivative(&self, vals: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(vals.nrows(), vals.ncols(), |q, r| {
            self.wgrid[(q, r)] * self.spec.nonlinearity_derivative(vals[(q, r)])
        })
    }

    /// Potential `w f'(û)` times the quadrature weights, on the grid.
    pub fn weighted_potential(&self, coeffs: &[f64]) -> DMatrix<f64> {
        self.weighted_derivative(&self.grid_values(coeffs))
    }
}
