//! Newton–Kantorovich certificate: residual, Lipschitz bound, α, β and the
//! existence and uniqueness radii, plus the end-to-end verification pipeline.

use crate::arith::round::{div_up, mul_up};
use crate::arith::{powf, Interval};
use crate::basis::{weight_poly, Linearization, PolySeries, SpaceKind, SymmetrySpace};
use crate::constants::{choose_tau, ConstantsBundle};
use crate::eigen::{
    apply_lower_bound_correction, assemble_pencil, enclose_generalized_eigs, inverse_norm, EigEnclosure,
    InverseNormCertificate,
};
use crate::error::{Error, Result};
use crate::galerkin::GalerkinSolution;
use crate::problem::ProblemSpec;
use crate::supremum::{sup_bound, SupOptions};

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Proven,
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct NKCertificate {
    pub residual: Interval,
    pub k: Interval,
    pub l: Interval,
    pub alpha: Interval,
    pub beta: Interval,
    pub delta: f64,
    pub rho: Interval,
    pub unique_radius: Interval,
    /// Upper endpoint of `ρ`.
    pub r_a: f64,
    /// `r_a / ‖û‖_{H¹₀}` with the lower endpoint of the norm.
    pub r_r: f64,
    pub peak: Interval,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug)]
pub struct Norms {
    pub h10: Interval,
    pub lp1: Interval,
    /// Upper endpoint bounds `max û`; lower endpoint is a sampled value.
    pub peak: Interval,
}

/// Powers `û^0 ..= û^k` as exact series.
struct Powers {
    pw: Vec<PolySeries>,
    lin: Linearization,
}

impl Powers {
    fn new(u: &PolySeries, k: usize, extra_degree: usize) -> Self {
        let u = u.trimmed();
        let deg = u.nx().max(u.ny()) - 1;
        let lin = Linearization::new(deg * k + extra_degree);
        let mut pw = vec![PolySeries::constant(u.n_dim(), Interval::ONE), u.clone()];
        for j in 2..=k {
            let next = pw[j - 1].mul(&u, &lin);
            pw.push(next);
        }
        Powers { pw, lin }
    }
}

fn root(x: Interval, k: u32) -> Result<Interval> {
    let e = Interval::ONE / k as f64;
    let lo = if x.lo() > 0.0 { powf(Interval::point(x.lo()), e)?.lo() } else { 0.0 };
    let hi = if x.hi() > 0.0 { powf(Interval::point(x.hi()), e)?.hi() } else { 0.0 };
    Ok(Interval::new(lo, hi))
}

/// `‖û‖_{H¹₀}` (τ-weighted), `‖û‖_{L^{p+1}}` and an upper bound of `max û`.
pub fn rigorous_norms(u: &PolySeries, spec: &ProblemSpec, tau: Interval) -> Result<Norms> {
    let p = spec
        .p_odd_integer()
        .ok_or_else(|| Error::NotVerifiable(format!("p={} is not an odd integer", spec.p)))?;
    let mut h2 = tau * u.l2_norm_sq() + u.derivative(0).l2_norm_sq();
    if spec.n_dim == 2 {
        h2 += u.derivative(1).l2_norm_sq();
    }
    let h2 = Interval::new(h2.lo().max(0.0), h2.hi());
    let half = (p as usize + 1) / 2;
    let pw = Powers::new(u, half, 0);
    let int = pw.pw[half].l2_norm_sq();
    let int = Interval::new(int.lo().max(0.0), int.hi());
    let sb = sup_bound(
        u,
        SupOptions {
            rel_tol: 1e-9,
            ..SupOptions::default()
        },
    );
    Ok(Norms {
        h10: h2.sqrt()?,
        lp1: root(int, p + 1)?,
        peak: Interval::new(sb.lower.min(sb.upper), sb.upper),
    })
}

/// `C₂ ‖Δû + w û^p‖_{L²}`.
pub fn residual_norm(u: &PolySeries, spec: &ProblemSpec, c2: Interval) -> Result<Interval> {
    let p = spec
        .p_odd_integer()
        .ok_or_else(|| Error::NotVerifiable(format!("p={} is not an odd integer", spec.p)))?;
    let w = weight_poly(spec)?.trimmed();
    let wdeg = w.nx().max(w.ny()) - 1;
    let pw = Powers::new(u, p as usize, wdeg);
    let r = u.laplacian().add(&pw.pw[p as usize].mul(&w, &pw.lin));
    Ok(residual_from_series(&r, c2))
}

fn residual_from_series(r: &PolySeries, c2: Interval) -> Interval {
    let n2 = r.l2_norm_sq();
    let n2 = Interval::new(n2.lo().max(0.0), n2.hi());
    c2 * n2.sqrt().expect("nonnegative")
}

/// `p(p-1) d C³ (‖û‖_{L^{p+1}} + C r)^{p-2}` with `C = C_{p+1}`.
pub fn lipschitz_l(lp1: Interval, p: u32, cp1: Interval, d: Interval, r: Interval) -> Interval {
    let base = lp1 + cp1 * r;
    Interval::point((p * (p - 1)) as f64) * d * cp1.powi(3) * base.powi(p - 2)
}

/// Existence check `αβ <= 1/2` for the given bounds.
pub fn certify(
    residual: Interval,
    k: Interval,
    lfn: impl Fn(Interval) -> Interval,
    norms: &Norms,
) -> NKCertificate {
    let kk = Interval::point(k.hi());
    let alpha = kk * Interval::point(residual.hi());
    let delta = 1e-15f64.max(1e-6 * alpha.hi());
    let r = Interval::point(mul_up(2.0, alpha.hi())) + delta;
    let l = lfn(Interval::point(r.hi()));
    let beta = kk * Interval::point(l.hi());
    let ab = alpha * beta;
    let two_alpha = alpha * 2.0;
    let mut cert = NKCertificate {
        residual,
        k,
        l,
        alpha,
        beta,
        delta,
        rho: Interval::ENTIRE,
        unique_radius: two_alpha,
        r_a: f64::INFINITY,
        r_r: f64::INFINITY,
        peak: norms.peak,
        verdict: Verdict::Failed("alpha-beta".into()),
    };
    if !(ab.hi() <= 0.5) {
        return cert;
    }
    // 2α / (1 + √(1 - 2αβ)) avoids the cancellation of (1 - √(1 - 2αβ)) / β
    let disc = Interval::ONE - ab * 2.0;
    let disc = Interval::new(disc.lo().max(0.0), disc.hi().max(0.0));
    let rho = two_alpha / (Interval::ONE + disc.sqrt().expect("nonnegative"));
    cert.rho = Interval::new(rho.lo().max(0.0), rho.hi().min(two_alpha.hi()));
    cert.r_a = cert.rho.hi();
    cert.r_r = if cert.r_a == 0.0 {
        0.0
    } else if norms.h10.lo() > 0.0 {
        div_up(cert.r_a, norms.h10.lo())
    } else {
        f64::INFINITY
    };
    cert.verdict = Verdict::Proven;
    cert
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Truncation order of the eigenvalue pencil; defaults to the solution's `M`.
    pub m_eig: Option<usize>,
    pub tau: Option<f64>,
    /// Space of the pencil; defaults to the unrestricted space for N=1 and
    /// to the solution's own space for N=2.
    pub eig_space: Option<SpaceKind>,
}

#[derive(Clone, Debug)]
pub struct Verification {
    pub constants: ConstantsBundle,
    pub eig_space: SymmetrySpace,
    pub discrete: EigEnclosure,
    pub corrected: EigEnclosure,
    pub inverse: Option<InverseNormCertificate>,
    pub norms: Norms,
    pub certificate: NKCertificate,
}

pub fn default_eig_space(sol: &GalerkinSolution) -> SpaceKind {
    if sol.space.n_dim == 1 {
        SpaceKind::Full
    } else {
        sol.space.kind
    }
}

/// Constants, verified eigenvalues, inverse-norm bound and the
/// Newton–Kantorovich check for one Galerkin solution.
pub fn verify(sol: &GalerkinSolution, opts: &VerifyOptions) -> Result<Verification> {
    let spec = sol.spec;
    if !spec.verified_eligible() {
        return Err(Error::NotVerifiable(format!(
            "l={} must be an even integer and p={} an odd integer",
            spec.l, spec.p
        )));
    }
    let tau = choose_tau(opts.tau)?;
    let m_eig = opts.m_eig.unwrap_or(sol.space.m).max(2);
    let eig_space = SymmetrySpace::new(opts.eig_space.unwrap_or_else(|| default_eig_space(sol)), spec.n_dim, m_eig)?;
    let p = spec.p_odd_integer().expect("eligible");
    let u = sol.series().trimmed();

    let w = weight_poly(&spec)?.trimmed();
    let wdeg = w.nx().max(w.ny()) - 1;
    let pw = Powers::new(&u, p as usize, wdeg);
    let wu = pw.pw[p as usize - 1].mul(&w, &pw.lin);
    let mut g = wu.scale(Interval::point(p as f64));
    g.add_to(0, 0, tau);
    let constants = ConstantsBundle::compute(&g, &spec, m_eig, tau)?;

    let residual_series = u.laplacian().add(&wu.mul(&u, &pw.lin));
    let residual = residual_from_series(&residual_series, constants.c2);
    let norms = rigorous_norms(&u, &spec, tau)?;

    let (a, b) = assemble_pencil(&g, tau, &eig_space)?;
    let discrete = enclose_generalized_eigs(&a, &b)?;
    let corrected = apply_lower_bound_correction(&discrete, constants.cm_tau, constants.wsup);
    let (inverse, certificate) = match inverse_norm(&corrected) {
        Ok(inv) => {
            let c = &constants;
            let lfn = |r: Interval| lipschitz_l(norms.lp1, p, c.cp1, c.d, r);
            let cert = certify(residual, inv.k, lfn, &norms);
            (Some(inv), cert)
        }
        Err(e) => {
            let mut cert = certify(residual, Interval::ENTIRE, |_| Interval::ENTIRE, &norms);
            cert.verdict = Verdict::Failed(e.to_string());
            (None, cert)
        }
    };
    Ok(Verification {
        constants,
        eig_space,
        discrete,
        corrected,
        inverse,
        norms,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::assemble_function;

    fn norms_zero() -> Norms {
        Norms {
            h10: Interval::ZERO,
            lp1: Interval::ZERO,
            peak: Interval::ZERO,
        }
    }

    #[test]
    fn zero_residual_is_proven() {
        let c = certify(Interval::ZERO, Interval::point(2.0), |_| Interval::ONE, &norms_zero());
        assert_eq!(c.verdict, Verdict::Proven);
        assert_eq!(c.rho.hi(), 0.0);
        assert_eq!(c.r_r, 0.0);
    }

    #[test]
    fn critical_product() {
        // α = 1/4, β = 2: αβ = 1/2 gives ρ = 1/β
        let c = certify(Interval::point(0.25), Interval::ONE, |_| Interval::point(2.0), &norms_zero());
        assert_eq!(c.verdict, Verdict::Proven);
        assert!(c.rho.contains(0.5));
        let c = certify(Interval::point(0.3), Interval::ONE, |_| Interval::point(2.0), &norms_zero());
        assert!(matches!(c.verdict, Verdict::Failed(_)));
    }

    #[test]
    fn phi1_residual_and_norms() {
        let spec = ProblemSpec::new(1, 0.0, 3.0).unwrap();
        let s = SymmetrySpace::full(1, 1);
        let phi = assemble_function(&s, &[1.0]).unwrap();
        let c2 = Interval::ONE;
        let r = residual_norm(&phi, &spec, c2).unwrap();
        // ∫(-2 + (x - x²)³)² = 4 - 4/140 + 1/16380... exact value 4 - 1/35 + 1/12012
        let exact: f64 = 4.0 - 1.0 / 35.0 + 1.0 / 12012.0;
        assert!(r.contains(exact.sqrt()), "{r:?}");
        let n = rigorous_norms(&phi, &spec, Interval::point(next_tau())).unwrap();
        assert!(n.h10.contains((1.0f64 / 3.0).sqrt()) || (n.h10.mid() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(n.peak.hi() >= 0.25 && n.peak.hi() < 0.25 + 1e-9);
        // ∫(x - x²)^4 = 1/630
        assert!(n.lp1.contains((1.0f64 / 630.0).powf(0.25)));
    }

    fn next_tau() -> f64 {
        crate::arith::next_after_up(0.0)
    }

    #[test]
    fn lipschitz_zero() {
        let l = lipschitz_l(Interval::ZERO, 3, Interval::ONE, Interval::ONE, Interval::ZERO);
        assert_eq!(l, Interval::ZERO);
    }
}
