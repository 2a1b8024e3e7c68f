//! Initial guesses: L² projections of smooth bumps onto a symmetry space.

use nalgebra::DMatrix;

use super::newton::GalerkinSolution;
use crate::basis::gram::mass_1d_f64;
use crate::basis::legendre::{gauss_legendre, values};
use crate::basis::SymmetrySpace;
use crate::error::{Error, Result};
use crate::problem::ProblemSpec;

/// One bump `amplitude · ∏ sin(π (x_d - c_d + r) / (2r))^shape` supported on
/// the box of half-width `r` around `center`, where `r` is `width` clipped to
/// the distance from the boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub center: [f64; 2],
    pub amplitude: f64,
    pub width: f64,
    pub shape: f64,
}

impl Peak {
    pub fn new(center: [f64; 2], amplitude: f64) -> Self {
        Peak {
            center,
            amplitude,
            width: 0.5,
            shape: 1.0,
        }
    }

    pub fn with_width(self, width: f64) -> Self {
        Peak { width, ..self }
    }

    pub fn with_shape(self, shape: f64) -> Self {
        Peak { shape, ..self }
    }

    fn eval(&self, x: f64, y: f64, n_dim: usize) -> f64 {
        let factor = |t: f64, c: f64| {
            let r = self.width.min(c).min(1.0 - c);
            if (t - c).abs() >= r {
                0.0
            } else {
                (std::f64::consts::PI * (t - c + r) / (2.0 * r)).sin().powf(self.shape)
            }
        };
        let mut v = self.amplitude * factor(x, self.center[0]);
        if n_dim == 2 {
            v *= factor(y, self.center[1]);
        }
        v
    }
}

/// Projects a sum of bumps onto `space`; an empty list gives the zero seed.
pub fn make_seed(spec: &ProblemSpec, space: &SymmetrySpace, peaks: &[Peak]) -> Result<GalerkinSolution> {
    let n = space.n_dim;
    for p in peaks {
        let inside = |c: f64| c > 0.0 && c < 1.0;
        if !inside(p.center[0]) || (n == 2 && !inside(p.center[1])) {
            return Err(Error::InvalidInput(format!("peak center {:?} is outside the domain", p.center)));
        }
        if !(p.width > 0.0 && p.shape > 0.0) {
            return Err(Error::InvalidInput("peak width and shape must be positive".into()));
        }
    }
    if peaks.is_empty() {
        return Ok(GalerkinSolution::zero(*spec, *space));
    }
    let m = space.m;
    let nq = 2 * m + 40;
    let (nodes, weights) = gauss_legendre(nq);
    let mut phi = DMatrix::zeros(nq, m);
    let mut vals = Vec::new();
    for (q, &x) in nodes.iter().enumerate() {
        values(x, m + 1, &mut vals);
        for i in 1..=m {
            phi[(q, i - 1)] = (vals[i - 1] - vals[i + 1]) / (2.0 * (2 * i + 1) as f64);
        }
    }
    let mass = DMatrix::from_fn(m, m, |a, b| mass_1d_f64(a + 1, b + 1));
    let chol = mass.cholesky().expect("mass matrix is positive definite");
    let tensor: Vec<f64> = if n == 1 {
        let g = DMatrix::from_fn(nq, 1, |q, _| {
            weights[q] * peaks.iter().map(|p| p.eval(nodes[q], 0.0, 1)).sum::<f64>()
        });
        let b = phi.transpose() * g;
        chol.solve(&b).as_slice().to_vec()
    } else {
        let g = DMatrix::from_fn(nq, nq, |q, r| {
            weights[q] * weights[r] * peaks.iter().map(|p| p.eval(nodes[q], nodes[r], 2)).sum::<f64>()
        });
        let b = phi.transpose() * g * &phi;
        // M U M = B
        let left = chol.solve(&b);
        let u = chol.solve(&left.transpose()).transpose();
        // row-major (i, j)
        (0..m * m).map(|k| u[(k / m, k % m)]).collect()
    };
    GalerkinSolution::new(*spec, *space, space.from_tensor(&tensor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::SpaceKind;

    #[test]
    fn centered_bump_keeps_amplitude() {
        let spec = ProblemSpec::new(1, 0.0, 3.0).unwrap();
        let space = SymmetrySpace::new(SpaceKind::V1, 1, 20).unwrap();
        let seed = make_seed(&spec, &space, &[Peak::new([0.5, 0.5], 4.0)]).unwrap();
        let peak = seed.peak_estimate();
        assert!((peak - 4.0).abs() < 0.8, "{peak}");
        assert!(make_seed(&spec, &space, &[]).unwrap().coeffs.iter().all(|&c| c == 0.0));
        assert!(make_seed(&spec, &space, &[Peak::new([1.2, 0.5], 1.0)]).is_err());
    }

    #[test]
    fn diagonal_peaks_project_symmetrically() {
        let spec = ProblemSpec::new(2, 4.0, 3.0).unwrap();
        let space = SymmetrySpace::new(SpaceKind::V2, 2, 12).unwrap();
        let peaks = [
            Peak::new([0.3, 0.3], 5.0).with_width(0.2),
            Peak::new([0.8, 0.2], 5.0).with_width(0.15),
            Peak::new([0.2, 0.8], 5.0).with_width(0.15),
        ];
        let seed = make_seed(&spec, &space, &peaks).unwrap();
        let s = seed.series();
        for &(x, y) in &[(0.1, 0.6), (0.35, 0.9)] {
            assert!((s.eval_f64(x, y) - s.eval_f64(y, x)).abs() < 1e-12);
        }
    }
}
