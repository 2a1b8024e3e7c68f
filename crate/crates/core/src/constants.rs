//! Enclosures of the scalar constants entering the certificate.

use crate::arith::{gamma, next_after_up, pi, powf, Interval};
use crate::basis::{weight_poly, Linearization, PolySeries};
use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::supremum::{sup_bound, SupBound, SupOptions};

#[derive(Clone, Debug)]
pub struct ConstantsBundle {
    pub tau: Interval,
    pub c2: Interval,
    /// Embedding constant for `L^{p+1}`.
    pub cp1: Interval,
    pub cm: Interval,
    pub cm_tau: Interval,
    pub d: Interval,
    /// Upper bound of `τ + p w |û|^{p-1}` over the box (lower endpoint is
    /// the best sampled value).
    pub wsup: Interval,
    /// False when the branch and bound hit its depth or cell cap.
    pub wsup_converged: bool,
}

/// Default is the smallest positive binary64 number.
pub fn choose_tau(override_tau: Option<f64>) -> Result<Interval> {
    match override_tau {
        None => Ok(Interval::point(next_after_up(0.0))),
        Some(t) if t > 0.0 && t.is_finite() => Ok(Interval::point(t)),
        Some(t) => Err(Error::InvalidTau(t)),
    }
}

/// `1 / √(Nπ² + τ)`.
pub fn embed_c2(n_dim: usize, tau: Interval) -> Interval {
    let lam1 = pi().sqr() * n_dim as f64;
    Interval::ONE / (lam1 + tau).sqrt().expect("positive")
}

/// `L^p` embedding constant on the unit interval, `p > 2`.
pub fn embed_cp_1d(p: f64, tau: Interval) -> Result<Interval> {
    if !(p > 2.0) {
        return Err(Error::InvalidInput(format!("embedding exponent must exceed 2, got {p}")));
    }
    let eps = Interval::point(2.0) / p;
    let one = Interval::ONE;
    let rho = pi().sqr();
    let threshold = tau * (one - eps) / (one + eps);
    let branch1 = || -> Result<Interval> {
        let a = powf(one - eps, (one - eps) / 4.0)?;
        let b = powf(one + eps, (one + eps) / 4.0)?;
        let c = powf(tau, -(one + eps) / 4.0)?;
        Ok(a * b * c / Interval::point(2.0).sqrt()?)
    };
    let branch2 = || -> Result<Interval> { Ok(powf(rho, (one - eps) / 4.0)? / (rho + tau).sqrt()?) };
    if rho.hi() <= threshold.lo() {
        branch1()
    } else if rho.lo() > threshold.hi() {
        branch2()
    } else {
        // predicate undecided by the enclosures: either formula may apply
        Ok(branch1()?.hull(&branch2()?))
    }
}

/// `L^p` embedding constant on the unit square through the sharp
/// Sobolev-type constant `T_p` with `q = Np/(N+p)`.
pub fn embed_cp_nd(n_dim: usize, p: f64) -> Result<Interval> {
    if n_dim < 2 || !(p > 2.0) || !p.is_finite() {
        return Err(Error::InvalidInput(format!("no square embedding constant for N={n_dim}, p={p}")));
    }
    let n = Interval::point(n_dim as f64);
    let pi_ = Interval::point(p);
    let q = n * pi_ / (n + pi_);
    if !(q.hi() < n.lo()) || !(q.lo() > 1.0) {
        return Err(Error::InvalidInput(format!("exponent q outside (1, N) for p={p}")));
    }
    let one = Interval::ONE;
    let inv_q = one / q;
    let t1 = Interval::ONE / pi().sqrt()?;
    let t2 = powf(n, -inv_q)?;
    let t3 = powf((q - one) / (n - q), one - inv_q)?;
    let num = gamma(one + n / 2.0)? * gamma(n)?;
    let den = gamma(n * inv_q)? * gamma(one + n - n * inv_q)?;
    let t4 = powf(num / den, one / n)?;
    Ok(t1 * t2 * t3 * t4)
}

/// Embedding constant for `L^p` in dimension `N`, `p >= 2`.
pub fn embed_cp(n_dim: usize, p: f64, tau: Interval) -> Result<Interval> {
    if p == 2.0 {
        return Ok(embed_c2(n_dim, tau));
    }
    if n_dim == 1 {
        embed_cp_1d(p, tau)
    } else {
        embed_cp_nd(n_dim, p)
    }
}

/// Projection error constant of the Legendre-type Galerkin space of order `M`.
pub fn proj_cm(m: usize) -> Interval {
    assert!(m >= 2);
    let k = |a: usize| Interval::point((2 * m + a) as f64);
    let rt = |x: Interval| x.sqrt().expect("positive");
    let e1 = Interval::ONE / (k(1) * k(5) * 2.0);
    let e2 = Interval::ONE / (k(5) * rt(k(3)) * rt(k(7)) * 4.0);
    let e3 = Interval::ONE / (k(5) * k(9) * 2.0);
    let e4 = Interval::ONE / (k(9) * rt(k(7)) * rt(k(11)) * 4.0);
    rt((e1 + e2).max(&(e2 + e3 + e4)))
}

/// `C_M √(1 + τ C_M²)`.
pub fn proj_cm_tau(m: usize, tau: Interval) -> Interval {
    let cm = proj_cm(m);
    cm * (Interval::ONE + tau * cm.sqr()).sqrt().expect("positive")
}

/// `max |x - x0|^l` over the box: `(1/2)^l` on the interval and
/// `(1/√2)^l` on the square.
pub fn weight_d(spec: &ProblemSpec) -> Result<Interval> {
    if spec.l == 0.0 {
        return Ok(Interval::ONE);
    }
    let half = Interval::point(0.5);
    let l = Interval::point(spec.l);
    if spec.n_dim == 1 {
        Ok(powf(half, l)?)
    } else {
        Ok(powf(half, l / 2.0)?)
    }
}

/// `τ + p w û^{p-1}` as a polynomial series (odd integer `p`).
pub fn linearization_weight(u: &PolySeries, spec: &ProblemSpec, tau: Interval) -> Result<PolySeries> {
    let p = spec.p_odd_integer().ok_or_else(|| Error::NotVerifiable(format!("p={} is not an odd integer", spec.p)))?;
    let w = weight_poly(spec)?.trimmed();
    let u = u.trimmed();
    let deg_u = u.nx().max(u.ny()) - 1;
    let deg_w = w.nx().max(w.ny()) - 1;
    let lin = Linearization::new(deg_u * (p as usize - 1) + deg_w);
    let mut g = w;
    for _ in 0..p - 1 {
        g = g.mul(&u, &lin);
    }
    let mut g = g.scale(Interval::point(p as f64));
    g.add_to(0, 0, tau);
    Ok(g)
}

/// Rigorous upper bound of `sup (τ + p w |û|^{p-1})` over the closed box.
pub fn wsup_bound(u: &PolySeries, spec: &ProblemSpec, tau: Interval) -> Result<(Interval, SupBound)> {
    let g = linearization_weight(u, spec, tau)?;
    Ok(wsup_of_weight(&g, tau))
}

/// Supremum bound of an already assembled weight `τ + p w û^{p-1}`.
pub fn wsup_of_weight(g: &PolySeries, tau: Interval) -> (Interval, SupBound) {
    let b = sup_bound(g, SupOptions::default());
    let hi = b.upper.max(tau.hi());
    let lo = b.lower.max(tau.lo()).min(hi);
    (Interval::new(lo, hi), b)
}

impl ConstantsBundle {
    /// `g` is the weight `τ + p w û^{p-1}` (see [`linearization_weight`]).
    pub fn compute(g: &PolySeries, spec: &ProblemSpec, m_eig: usize, tau: Interval) -> Result<Self> {
        let (wsup, sb) = wsup_of_weight(g, tau);
        Ok(ConstantsBundle {
            tau,
            c2: embed_c2(spec.n_dim, tau),
            cp1: embed_cp(spec.n_dim, spec.p + 1.0, tau)?,
            cm: proj_cm(m_eig),
            cm_tau: proj_cm_tau(m_eig, tau),
            d: weight_d(spec)?,
            wsup,
            wsup_converged: sb.converged,
        })
    }
}
