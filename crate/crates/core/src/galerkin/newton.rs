use nalgebra::DVector;

use super::system::GalerkinSystem;
use crate::basis::{assemble_function, PolySeries, SymmetrySpace};
use crate::error::{Error, Result};
use crate::problem::ProblemSpec;

/// A Galerkin approximation `û` together with how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct GalerkinSolution {
    pub spec: ProblemSpec,
    pub space: SymmetrySpace,
    /// Ordered as `space.index_set()`.
    pub coeffs: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// ℓ² norm of the discrete gradient at `coeffs`.
    pub grad_norm: f64,
    /// Gradient norms of the Newton iterates, starting with the seed.
    pub history: Vec<f64>,
}

impl GalerkinSolution {
    pub fn new(spec: ProblemSpec, space: SymmetrySpace, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(Error::Shape {
                expected: space.dim(),
                got: coeffs.len(),
            });
        }
        if spec.n_dim != space.n_dim {
            return Err(Error::InvalidInput("space and problem dimension differ".into()));
        }
        Ok(GalerkinSolution {
            spec,
            space,
            coeffs,
            converged: false,
            iterations: 0,
            grad_norm: f64::NAN,
            history: Vec::new(),
        })
    }

    pub fn zero(spec: ProblemSpec, space: SymmetrySpace) -> Self {
        let n = space.dim();
        GalerkinSolution::new(spec, space, vec![0.0; n]).expect("consistent shape")
    }

    pub fn series(&self) -> PolySeries {
        assemble_function(&self.space, &self.coeffs).expect("consistent shape")
    }

    /// Expresses the same function in the unrestricted space of the same order.
    pub fn to_full(&self) -> GalerkinSolution {
        let full = SymmetrySpace::full(self.space.n_dim, self.space.m);
        let u = self.space.to_tensor(&self.coeffs).expect("consistent shape");
        GalerkinSolution {
            space: full,
            coeffs: full.from_tensor(&u),
            ..self.clone()
        }
    }

    /// `‖∇û‖_{L²}` in floating point.
    pub fn h10_norm(&self) -> f64 {
        let m = self.space.m;
        let u = self.space.to_tensor(&self.coeffs).expect("consistent shape");
        let k = |i: usize| 1.0 / (2 * i + 1) as f64;
        let mass = crate::basis::gram::mass_1d_f64;
        let mut acc = 0.0;
        if self.space.n_dim == 1 {
            for i in 1..=m {
                acc += u[i - 1] * u[i - 1] * k(i);
            }
            return acc.sqrt();
        }
        let at = |i: usize, j: usize| u[(i - 1) * m + j - 1];
        for i in 1..=m {
            for j in 1..=m {
                let v = at(i, j);
                if v == 0.0 {
                    continue;
                }
                for j2 in [j.saturating_sub(2), j, j + 2] {
                    if j2 >= 1 && j2 <= m {
                        acc += v * at(i, j2) * k(i) * mass(j, j2);
                    }
                }
                for i2 in [i.saturating_sub(2), i, i + 2] {
                    if i2 >= 1 && i2 <= m {
                        acc += v * at(i2, j) * k(j) * mass(i, i2);
                    }
                }
            }
        }
        acc.max(0.0).sqrt()
    }

    /// Approximate maximum of `û`: grid search followed by local refinement.
    pub fn peak_estimate(&self) -> f64 {
        let s = self.series();
        let n = if self.space.n_dim == 1 { 401 } else { 81 };
        let h = 1.0 / (n - 1) as f64;
        let mut best = (f64::NEG_INFINITY, 0.5, 0.5);
        let ny = if self.space.n_dim == 1 { 1 } else { n };
        for a in 0..n {
            for b in 0..ny {
                let (x, y) = (a as f64 * h, b as f64 * h);
                let v = s.eval_f64(x, y);
                if v > best.0 {
                    best = (v, x, y);
                }
            }
        }
        // pattern search around the best grid point
        let (mut v, mut x, mut y) = best;
        let mut step = h;
        while step > 1e-9 {
            let mut moved = false;
            let dirs: &[(f64, f64)] = if self.space.n_dim == 1 {
                &[(1.0, 0.0), (-1.0, 0.0)]
            } else {
                &[(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]
            };
            for &(dx, dy) in dirs {
                let (nx, ny) = ((x + dx * step).clamp(0.0, 1.0), (y + dy * step).clamp(0.0, 1.0));
                let nv = s.eval_f64(nx, ny);
                if nv > v {
                    (v, x, y) = (nv, nx, ny);
                    moved = true;
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        v
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tol: 1e-13,
            max_iters: 50,
        }
    }
}

/// Damped Newton iteration on the discrete Galerkin system.
///
/// The tolerance is relative to `max(1, ‖S û‖)` so that large-amplitude
/// solutions are held to the same number of significant digits.
pub fn newton_solve(seed: &GalerkinSolution, opts: NewtonOptions) -> Result<GalerkinSolution> {
    let sys = GalerkinSystem::new(seed.spec, seed.space);
    newton_with_system(&sys, seed, opts)
}

pub fn newton_with_system(
    sys: &GalerkinSystem,
    seed: &GalerkinSolution,
    opts: NewtonOptions,
) -> Result<GalerkinSolution> {
    if seed.coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput("seed has non-finite coefficients".into()));
    }
    let mut u = DVector::from_vec(seed.coeffs.clone());
    let mut g = sys.gradient(u.as_slice());
    let mut gn = g.norm();
    let mut history = vec![gn];
    let mut iters = 0;
    let scale = |u: &DVector<f64>| sys.dirichlet_energy(u.as_slice()).sqrt().max(1.0);
    let mut stalled = 0;
    let mut at_precision = false;
    while gn > opts.tol * scale(&u) && iters < opts.max_iters {
        let j = sys.jacobian(u.as_slice());
        let delta = j.lu().solve(&(-&g)).ok_or(Error::JacobianSingular)?;
        if delta.iter().any(|d| !d.is_finite()) {
            return Err(Error::JacobianSingular);
        }
        let mut t = 1.0;
        let (mut un, mut gnew, mut gnn);
        loop {
            un = &u + &delta * t;
            gnew = sys.gradient(un.as_slice());
            gnn = gnew.norm();
            if gnn < gn || t < 1.0 / 1024.0 {
                break;
            }
            t *= 0.5;
        }
        iters += 1;
        at_precision = (&delta * t).norm() <= 16.0 * f64::EPSILON * u.norm();
        if gnn >= gn {
            stalled += 1;
        }
        u = un;
        g = gnew;
        gn = gnn;
        history.push(gn);
        if at_precision || stalled >= 3 {
            break;
        }
    }
    // Newton steps at rounding level mean the discrete solve cannot improve
    let converged =
        gn <= opts.tol * scale(&u) || (at_precision && gn <= 1e3 * opts.tol * scale(&u));
    Ok(GalerkinSolution {
        spec: sys.spec,
        space: sys.space,
        coeffs: u.as_slice().to_vec(),
        converged,
        iterations: iters,
        grad_norm: gn,
        history,
    })
}
