use crate::error::{Error, Result};

/// One instance of `-Δu = |x - x0|^l |u|^{p-1} u` on `(0,1)^N` with zero
/// Dirichlet data; `x0` is always the center of the box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemSpec {
    pub n_dim: usize,
    pub l: f64,
    pub p: f64,
}

impl ProblemSpec {
    pub fn new(n_dim: usize, l: f64, p: f64) -> Result<Self> {
        if n_dim != 1 && n_dim != 2 {
            return Err(Error::InvalidInput(format!("N must be 1 or 2, got {n_dim}")));
        }
        if !(l >= 0.0) || !l.is_finite() {
            return Err(Error::InvalidInput(format!("l must be a finite nonnegative number, got {l}")));
        }
        if !(p >= 2.0) || !p.is_finite() {
            return Err(Error::InvalidInput(format!("p must be finite and at least 2, got {p}")));
        }
        Ok(ProblemSpec { n_dim, l, p })
    }

    pub fn with_l(&self, l: f64) -> Self {
        ProblemSpec { l, ..*self }
    }

    /// The center of the box, repeated N times.
    pub fn x0(&self) -> [f64; 2] {
        [0.5, if self.n_dim == 2 { 0.5 } else { 0.0 }]
    }

    pub fn l_even_integer(&self) -> Option<usize> {
        (self.l.fract() == 0.0 && (self.l as usize) % 2 == 0 && self.l < 1e6).then_some(self.l as usize)
    }

    pub fn p_odd_integer(&self) -> Option<u32> {
        (self.p.fract() == 0.0 && self.p >= 3.0 && (self.p as u32) % 2 == 1 && self.p < 1e6)
            .then_some(self.p as u32)
    }

    /// Polynomial nonlinearity: the rigorous path is available.
    pub fn verified_eligible(&self) -> bool {
        self.l_even_integer().is_some() && self.p_odd_integer().is_some()
    }

    /// `|x - x0|^l` evaluated in floating point.
    pub fn weight_at(&self, x: f64, y: f64) -> f64 {
        if self.l == 0.0 {
            return 1.0;
        }
        let r2 = if self.n_dim == 1 {
            (x - 0.5) * (x - 0.5)
        } else {
            (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)
        };
        r2.powf(0.5 * self.l)
    }

    /// `|u|^{p-1} u`.
    pub fn nonlinearity(&self, u: f64) -> f64 {
        if self.p == 3.0 {
            u * u * u
        } else {
            u.abs().powf(self.p - 1.0) * u
        }
    }

    /// Derivative of [`Self::nonlinearity`]: `p |u|^{p-1}`.
    pub fn nonlinearity_derivative(&self, u: f64) -> f64 {
        if self.p == 3.0 {
            3.0 * u * u
        } else {
            self.p * u.abs().powf(self.p - 1.0)
        }
    }
}
