//! Natural continuation in the weight exponent `l`.

use super::newton::{newton_with_system, GalerkinSolution, NewtonOptions};
use super::system::GalerkinSystem;

/// One point of a traced solution curve.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub l: f64,
    pub branch_id: String,
    pub h10_norm: f64,
    pub peak: f64,
    pub newton_iters: usize,
    pub converged: bool,
}

/// Reflections of the square acting on `φ_i(x)φ_j(y)` tensor coefficients,
/// using `φ_i(1 - x) = (-1)^{i+1} φ_i(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reflection {
    /// x ↦ 1 - x
    X,
    /// y ↦ 1 - y
    Y,
    /// (x, y) ↦ (y, x)
    Diagonal,
    /// (x, y) ↦ (1 - y, 1 - x)
    AntiDiagonal,
}

impl Reflection {
    pub fn all(n_dim: usize) -> &'static [Reflection] {
        if n_dim == 1 {
            &[Reflection::X]
        } else {
            &[Reflection::X, Reflection::Y, Reflection::Diagonal, Reflection::AntiDiagonal]
        }
    }
}

/// `‖R û - û‖ / ‖û‖` in the tensor coefficient norm; zero for `û = 0`.
pub fn symmetry_defect(u: &GalerkinSolution, r: Reflection) -> f64 {
    let m = u.space.m;
    let t = u.space.to_tensor(&u.coeffs).expect("consistent shape");
    let norm: f64 = t.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return 0.0;
    }
    let sign = |i: usize| if i % 2 == 1 { 1.0 } else { -1.0 };
    let mut acc = 0.0;
    if u.space.n_dim == 1 {
        for i in 1..=m {
            let v = t[i - 1];
            acc += (sign(i) * v - v).powi(2);
        }
        return acc.sqrt() / norm;
    }
    let at = |i: usize, j: usize| t[(i - 1) * m + j - 1];
    for i in 1..=m {
        for j in 1..=m {
            let image = match r {
                Reflection::X => sign(i) * at(i, j),
                Reflection::Y => sign(j) * at(i, j),
                Reflection::Diagonal => at(j, i),
                Reflection::AntiDiagonal => sign(i) * sign(j) * at(j, i),
            };
            acc += (image - at(i, j)).powi(2);
        }
    }
    acc.sqrt() / norm
}

const SYMMETRIC_BELOW: f64 = 1e-8;

fn symmetries(u: &GalerkinSolution) -> Vec<Reflection> {
    Reflection::all(u.spec.n_dim)
        .iter()
        .copied()
        .filter(|&r| symmetry_defect(u, r) < SYMMETRIC_BELOW)
        .collect()
}

/// Stop criteria for a traced branch.
#[derive(Clone, Copy, Debug)]
pub struct ContinuationOptions {
    pub newton: NewtonOptions,
    /// Relative change of `‖∇û‖` between neighbouring points that is
    /// treated as a jump to another branch.
    pub max_relative_jump: f64,
    /// When a step fails it is retried as 2, 4, ... equal substeps up to
    /// this many; only the grid values of `l` are recorded.
    pub max_substeps: usize,
    pub symmetry_stop: SymmetryStop,
}

/// Which gain of symmetry along a branch counts as having fallen onto
/// another branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryStop {
    /// The iterate became invariant under every reflection of the domain
    /// (it merged with the fully symmetric branch).
    FullGroup,
    /// Any reflection symmetry the starting solution lacked.
    AnyNew,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        ContinuationOptions {
            newton: NewtonOptions::default(),
            max_relative_jump: 0.3,
            max_substeps: 8,
            symmetry_stop: SymmetryStop::FullGroup,
        }
    }
}

/// The parameter values visited when going from `l_start` towards `l_end`.
pub fn l_values(l_start: f64, l_end: f64, l_step: f64) -> Vec<f64> {
    assert!(l_step > 0.0, "l_step must be positive");
    let span = (l_end - l_start).abs();
    let count = (span / l_step + 1e-9).floor() as usize + 1;
    let dir = if l_end >= l_start { 1.0 } else { -1.0 };
    // keep grid values such as 1.3 free of accumulated representation error
    (0..count)
        .map(|k| ((l_start + dir * k as f64 * l_step) * 1e9).round() / 1e9)
        .collect()
}

/// Natural continuation: each converged point seeds the next value of `l`.
///
/// A branch ends (the failing point is recorded with `converged = false`)
/// when Newton fails, when the iterate gains symmetry as selected by
/// [`SymmetryStop`] (it fell onto the branch it bifurcates from), or when
/// `‖∇û‖` jumps. Failed steps are retried with substeps first.
pub fn trace_curve(
    seed: &GalerkinSolution,
    l_start: f64,
    l_end: f64,
    l_step: f64,
    branch_id: &str,
    opts: ContinuationOptions,
) -> (Vec<CurvePoint>, Vec<GalerkinSolution>) {
    let mut tracer = Tracer {
        opts,
        start_symmetries: None,
        last_norm: None,
    };
    let mut points = Vec::new();
    let mut sols: Vec<GalerkinSolution> = Vec::new();
    let mut current = seed.clone();
    let mut last_l = None;
    for l in l_values(l_start, l_end, l_step) {
        let mut outcome = tracer.attempt(&current, l);
        if outcome.is_err() {
            if let Some(l0) = last_l {
                let mut n = 2;
                while n <= opts.max_substeps {
                    if let Ok(sol) = tracer.substeps(&current, l0, l, n) {
                        outcome = Ok(sol);
                        break;
                    }
                    n *= 2;
                }
            }
        }
        let point = match &outcome {
            Ok(sol) | Err(Some(sol)) => CurvePoint {
                l,
                branch_id: branch_id.to_string(),
                h10_norm: sol.h10_norm(),
                peak: sol.peak_estimate(),
                newton_iters: sol.iterations,
                converged: outcome.is_ok(),
            },
            Err(None) => CurvePoint {
                l,
                branch_id: branch_id.to_string(),
                h10_norm: f64::NAN,
                peak: f64::NAN,
                newton_iters: 0,
                converged: false,
            },
        };
        points.push(point);
        let Ok(sol) = outcome else {
            break;
        };
        tracer.accept(&sol);
        last_l = Some(l);
        current = sol.clone();
        sols.push(sol);
    }
    (points, sols)
}

struct Tracer {
    opts: ContinuationOptions,
    start_symmetries: Option<Vec<Reflection>>,
    last_norm: Option<f64>,
}

impl Tracer {
    /// `Err(Some(_))` carries a Newton result that was rejected.
    fn attempt(&self, from: &GalerkinSolution, l: f64) -> std::result::Result<GalerkinSolution, Option<GalerkinSolution>> {
        let spec = from.spec.with_l(l);
        let mut start = from.clone();
        start.spec = spec;
        let sys = GalerkinSystem::new(spec, from.space);
        let Ok(sol) = newton_with_system(&sys, &start, self.opts.newton) else {
            return Err(None);
        };
        let norm = sol.h10_norm();
        let mut ok = sol.converged && norm > 1e-8;
        if ok {
            if let Some(start) = &self.start_symmetries {
                let now = symmetries(&sol);
                ok = match self.opts.symmetry_stop {
                    SymmetryStop::AnyNew => now.iter().all(|r| start.contains(r)),
                    SymmetryStop::FullGroup => {
                        now.len() < Reflection::all(sol.spec.n_dim).len()
                            || start.len() == now.len()
                    }
                };
            }
        }
        if ok {
            if let Some(prev) = self.last_norm {
                ok = (norm - prev).abs() <= self.opts.max_relative_jump * prev;
            }
        }
        if ok {
            Ok(sol)
        } else {
            Err(Some(sol))
        }
    }

    fn substeps(&self, from: &GalerkinSolution, l0: f64, l1: f64, n: usize) -> std::result::Result<GalerkinSolution, ()> {
        let mut cur = from.clone();
        let mut probe = Tracer {
            opts: self.opts,
            start_symmetries: self.start_symmetries.clone(),
            last_norm: self.last_norm,
        };
        for k in 1..=n {
            let l = if k == n { l1 } else { l0 + (l1 - l0) * k as f64 / n as f64 };
            cur = probe.attempt(&cur, l).map_err(|_| ())?;
            probe.last_norm = Some(cur.h10_norm());
        }
        Ok(cur)
    }

    fn accept(&mut self, sol: &GalerkinSolution) {
        if self.start_symmetries.is_none() {
            self.start_symmetries = Some(symmetries(sol));
        }
        self.last_norm = Some(sol.h10_norm());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_grid() {
        assert_eq!(l_values(0.0, 8.0, 0.05).len(), 161);
        assert_eq!(l_values(2.0, 1.0, 0.25), vec![2.0, 1.75, 1.5, 1.25, 1.0]);
        assert_eq!(l_values(0.0, 0.1, 0.5), vec![0.0]);
    }
}
