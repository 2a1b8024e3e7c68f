//! Verified bounds for the inverse of the linearized operator through the
//! eigenvalues of `(∇v, ∇φ) + τ(v, φ) = λ ((τ + f'(û)) v, φ)`.

mod enclose;
mod pencil;

pub use enclose::{enclose_kappa, MidRad};
pub use pencil::assemble_pencil;

use nalgebra::DMatrix;

use crate::arith::round::{div_down, div_up, sub_down};
use crate::arith::Interval;
use crate::error::{Error, Result};

/// Eigenvalue enclosures in ascending order plus a lower bound for every
/// eigenvalue beyond the last one.
#[derive(Clone, Debug)]
pub struct EigEnclosure {
    pub lambda: Vec<Interval>,
    pub tail_lower: Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contribution {
    Eigenvalue(usize),
    One,
    Tail,
}

#[derive(Clone, Debug)]
pub struct InverseNormCertificate {
    /// Lower bound of `μ₀` as a point interval.
    pub mu0: Interval,
    /// `[1/μ₀]` rounded outward; the upper endpoint bounds the inverse norm.
    pub k: Interval,
    pub contributing: Contribution,
}

/// Eigenvalues `λ` of `A x = λ B x` from the enclosure of `κ = 1/λ`.
pub fn enclose_generalized_eigs(a: &DMatrix<Interval>, b: &DMatrix<Interval>) -> Result<EigEnclosure> {
    let kappa = enclose_kappa(a, b)?;
    let mut lambda = Vec::with_capacity(kappa.len());
    for k in &kappa {
        if !(k.hi() > 0.0) {
            return Err(Error::PencilNotDefinite);
        }
        let lo = div_down(1.0, k.hi());
        let hi = if k.lo() > 0.0 { div_up(1.0, k.lo()) } else { f64::INFINITY };
        lambda.push(Interval::new(lo, hi));
    }
    let tail_lower = lambda.last().map(|l| Interval::point(l.lo())).unwrap_or(Interval::ZERO);
    Ok(EigEnclosure { lambda, tail_lower })
}

/// Lower bounds of the exact eigenvalues from the discrete ones:
/// `λ_k >= λ_k^M / (λ_k^M (C_M^τ)² W + 1)`, which increases with `λ_k^M`, so
/// the lower endpoint of each discrete enclosure is used.
pub fn apply_lower_bound_correction(discrete: &EigEnclosure, cm_tau: Interval, wsup: Interval) -> EigEnclosure {
    let c = cm_tau.sqr() * Interval::point(wsup.hi());
    let corrected = |lam: f64| -> f64 {
        if lam <= 0.0 {
            return 0.0;
        }
        let l = Interval::point(lam);
        (l / (l * c + 1.0)).lo()
    };
    let lambda: Vec<Interval> = discrete
        .lambda
        .iter()
        .map(|l| Interval::new(corrected(l.lo()), l.hi()))
        .collect();
    let tail_lower = lambda.last().map(|l| Interval::point(l.lo())).unwrap_or(Interval::ZERO);
    EigEnclosure { lambda, tail_lower }
}

/// Lower bound of `|1 - 1/λ|` over an enclosure of `λ`, or `None` when the
/// enclosure admits `λ = 1`.
fn mu_gap(l: &Interval) -> Option<f64> {
    if l.lo() <= 0.0 {
        return None;
    }
    let t_lo = if l.hi().is_finite() { div_down(1.0, l.hi()) } else { 0.0 };
    let t_hi = div_up(1.0, l.lo());
    if t_lo > 1.0 {
        Some(sub_down(t_lo, 1.0))
    } else if t_hi < 1.0 {
        Some(sub_down(1.0, t_hi))
    } else {
        None
    }
}

/// `μ₀ = min({1} ∪ {|1 - 1/λ_k|})` and `K = 1/μ₀`.
pub fn inverse_norm(enc: &EigEnclosure) -> Result<InverseNormCertificate> {
    let mut best = (1.0, Contribution::One);
    for (k, l) in enc.lambda.iter().enumerate() {
        let g = mu_gap(l).ok_or(Error::Mu0PossiblyZero)?;
        if g < best.0 {
            best = (g, Contribution::Eigenvalue(k));
        }
    }
    let tail = enc.tail_lower.lo();
    if !(tail > 1.0) {
        return Err(Error::TailUnresolved);
    }
    let g = sub_down(1.0, div_up(1.0, tail));
    if g < best.0 {
        best = (g, Contribution::Tail);
    }
    if !(best.0 > 0.0) {
        return Err(Error::Mu0PossiblyZero);
    }
    let mu0 = Interval::point(best.0);
    Ok(InverseNormCertificate {
        mu0,
        k: Interval::new(div_down(1.0, best.0), div_up(1.0, best.0)),
        contributing: best.1,
    })
}

/// Groups overlapping enclosures; each cluster carries its multiplicity.
pub fn clusters(lambda: &[Interval]) -> Vec<(Interval, usize)> {
    let mut out: Vec<(Interval, usize)> = Vec::new();
    for l in lambda {
        match out.last_mut() {
            Some((c, m)) if c.intersects(l) => {
                *c = c.hull(l);
                *m += 1;
            }
            _ => out.push((*l, 1)),
        }
    }
    out
}

/// `μ = 1 - 1/λ` enclosures for display.
pub fn mu_intervals(enc: &EigEnclosure) -> Vec<Interval> {
    enc.lambda
        .iter()
        .map(|l| {
            let t_lo = if l.hi().is_finite() { div_down(1.0, l.hi()) } else { 0.0 };
            let t_hi = div_up(1.0, l.lo());
            Interval::ONE - Interval::new(t_lo, t_hi)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enc(ls: &[f64], tail: f64) -> EigEnclosure {
        EigEnclosure {
            lambda: ls.iter().map(|&l| Interval::point(l)).collect(),
            tail_lower: Interval::point(tail),
        }
    }

    #[test]
    fn inverse_norm_examples() {
        let c = inverse_norm(&enc(&[2.0], 2.0)).unwrap();
        assert_eq!(c.mu0.lo(), 0.5);
        assert_eq!(c.k.hi(), 2.0);
        let c = inverse_norm(&enc(&[1.0 / 3.0, 3.0], 10.0)).unwrap();
        assert!((c.mu0.lo() - 2.0 / 3.0).abs() < 1e-15);
        assert!((c.k.hi() - 1.5).abs() < 1e-15);
        assert_eq!(c.contributing, Contribution::Eigenvalue(1));
        let bad = EigEnclosure {
            lambda: vec![Interval::new(0.9, 1.1)],
            tail_lower: Interval::point(5.0),
        };
        assert!(matches!(inverse_norm(&bad), Err(Error::Mu0PossiblyZero)));
        assert!(matches!(inverse_norm(&enc(&[0.5], 0.9)), Err(Error::TailUnresolved)));
    }

    #[test]
    fn correction_examples() {
        let d = enc(&[1.0], 1.0);
        let c = apply_lower_bound_correction(&d, Interval::ONE, Interval::ONE);
        assert_eq!(c.lambda[0].lo(), 0.5);
        let c = apply_lower_bound_correction(&enc(&[3.0, 7.0], 7.0), Interval::ZERO, Interval::ONE);
        assert_eq!(c.lambda[0].lo(), 3.0);
        assert_eq!(c.tail_lower.lo(), 7.0);
        for l in &c.lambda {
            assert!(l.lo() <= l.hi());
        }
    }

    #[test]
    fn cluster_merging() {
        let ls = [Interval::new(1.0, 1.1), Interval::new(1.05, 1.2), Interval::new(2.0, 2.0)];
        let c = clusters(&ls);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].1, 2);
    }
}
