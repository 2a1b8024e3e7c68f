//! Cross-checks of the rigorous path against the independent oracles.

use henon_core::basis::gram::{mass_1d, stiffness_1d};
use henon_core::basis::{assemble_function, Linearization, PolySeries};
use henon_core::constants::{embed_c2, embed_cp_1d, embed_cp_nd, linearization_weight, proj_cm, proj_cm_tau, weight_d};
use henon_core::eigen::{assemble_pencil, enclose_kappa};
use henon_core::galerkin::GalerkinSolution;
use henon_core::nk::{residual_norm, rigorous_norms};
use henon_core::{Interval, ProblemSpec, SpaceKind, SymmetrySpace};
use henon_oracle::{
    f64_to_rational, interval_contains, oracle_constant, oracle_eigs, oracle_integrate, oracle_phi, shifted_legendre,
    BigRationalPoly, ConstParams, Rational,
};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat_in(v: Interval, r: &Rational) -> bool {
    f64_to_rational(v.lo()) <= *r && *r <= f64_to_rational(v.hi())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Monomial form of a Galerkin function from its tensor terms.
fn oracle_function(sol: &GalerkinSolution) -> BigRationalPoly {
    let n = sol.spec.n_dim;
    let mut u = BigRationalPoly::zero(n);
    for (idx, c) in sol.space.index_set().iter().zip(&sol.coeffs) {
        for t in sol.space.terms(*idx) {
            let coef = f64_to_rational(t.coef) * f64_to_rational(*c);
            let mut f = oracle_phi(n, 0, t.i);
            if n == 2 {
                f = f.mul(&oracle_phi(n, 1, t.j));
            }
            u = u.add(&f.scale(&coef));
        }
    }
    u
}

fn oracle_weight(n: usize, l: u32) -> BigRationalPoly {
    let half = BigRationalPoly::constant(n, q(1, 2));
    let mut r2 = BigRationalPoly::zero(n);
    for k in 0..n {
        let d = BigRationalPoly::var(n, k).sub(&half);
        r2 = r2.add(&d.mul(&d));
    }
    r2.pow(l / 2)
}

#[test]
fn basis_gram_matrices() {
    for i in 1..=8 {
        for j in 1..=8 {
            let (a, b) = (oracle_phi(1, 0, i), oracle_phi(1, 0, j));
            let mass = oracle_integrate(&a.mul(&b));
            let stiff = oracle_integrate(&a.derivative(0).mul(&b.derivative(0)));
            assert!(rat_in(mass_1d(i, j), &mass), "mass {i} {j}");
            assert!(rat_in(stiffness_1d(i, j), &stiff), "stiffness {i} {j}");
        }
    }
}

#[test]
fn series_products_and_triple_integrals() {
    let lin = Linearization::new(30);
    for a in 0..=8 {
        for b in 0..=8 {
            for c in 0..=8 {
                let pa = BigRationalPoly::univariate(1, 0, &shifted_legendre(a));
                let pb = BigRationalPoly::univariate(1, 0, &shifted_legendre(b));
                let pc = BigRationalPoly::univariate(1, 0, &shifted_legendre(c));
                let exact = oracle_integrate(&pa.mul(&pb).mul(&pc));
                assert!(rat_in(lin.triple(a, b, c), &exact), "{a} {b} {c}");
            }
        }
    }
    // 2D products of basis functions through the Legendre series
    let s = SymmetrySpace::full(2, 4);
    let n = s.dim();
    for r in (0..n).step_by(3) {
        for c in (0..n).step_by(2) {
            let mut er = vec![0.0; n];
            er[r] = 1.0;
            let mut ec = vec![0.0; n];
            ec[c] = 1.0;
            let fr = assemble_function(&s, &er).unwrap();
            let fc = assemble_function(&s, &ec).unwrap();
            let (ir, ic) = (s.index_set()[r], s.index_set()[c]);
            let or = oracle_phi(2, 0, ir.i).mul(&oracle_phi(2, 1, ir.j));
            let oc = oracle_phi(2, 0, ic.i).mul(&oracle_phi(2, 1, ic.j));
            let exact = oracle_integrate(&or.mul(&oc).mul(&or));
            let got = fr.mul(&fc, &lin).mul(&fr, &lin).integrate();
            assert!(rat_in(got, &exact), "{r} {c}");
        }
    }
}

fn settings() -> Vec<(String, ConstParams)> {
    let tiny = 5e-324;
    let p = |n_dim, p: f64, tau, m, l| ConstParams { n_dim, p, tau, m, l };
    let mut out = Vec::new();
    for (n, t) in [(1, tiny), (2, tiny), (1, 1.0), (2, 0.5), (1, 98.7)] {
        out.push(("C2".to_string(), p(n, 2.0, t, 40, 0.0)));
    }
    for (pp, t) in [(3.0, tiny), (4.0, tiny), (5.0, 0.25), (6.0, 200.0), (4.0, 98.7)] {
        out.push(("Cp1D".to_string(), p(1, pp, t, 40, 0.0)));
    }
    for pp in [3.0, 4.0, 5.0, 6.0, 8.0] {
        out.push(("CpND".to_string(), p(2, pp, 0.0, 40, 0.0)));
    }
    for m in [2, 5, 10, 40, 80] {
        out.push(("CM".to_string(), p(1, 4.0, 0.0, m, 0.0)));
    }
    for (m, t) in [(2, tiny), (5, 1.0), (10, 3.5), (40, 100.0), (80, 1e4)] {
        out.push(("CMtau".to_string(), p(1, 4.0, t, m, 0.0)));
    }
    for (n, l) in [(1, 0.0), (1, 2.0), (1, 4.0), (2, 2.0), (2, 4.0)] {
        out.push(("d".to_string(), p(n, 4.0, 0.0, 40, l)));
    }
    out
}

#[test]
fn constants_contain_oracle_values() {
    for (name, c) in settings() {
        let tau = Interval::point(c.tau);
        let got = match name.as_str() {
            "C2" => embed_c2(c.n_dim, tau),
            "Cp1D" => embed_cp_1d(c.p, tau).unwrap(),
            "CpND" => embed_cp_nd(c.n_dim, c.p).unwrap(),
            "CM" => proj_cm(c.m),
            "CMtau" => proj_cm_tau(c.m, tau),
            "d" => weight_d(&ProblemSpec::new(c.n_dim, c.l, 3.0).unwrap()).unwrap(),
            _ => unreachable!(),
        };
        let want = oracle_constant(&name, &c).unwrap();
        assert!(interval_contains(got.lo(), got.hi(), &want), "{name} {c:?}: {got:?} vs {want}");
        assert!(got.width() <= 1e-9 * got.mag(), "{name} {c:?} too wide: {got:?}");
    }
}

fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rational>> {
    // MᵀM + I with small dyadic entries keeps everything exact in binary64
    let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-8..=8)).collect()).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s: i64 = (0..n).map(|k| m[k][i] * m[k][j]).sum();
                    q(s + if i == j { 1 } else { 0 }, 16)
                })
                .collect()
        })
        .collect()
}

#[test]
fn pencil_enclosures_contain_oracle_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..20 {
        let a = random_spd(&mut rng, 5);
        let b = random_spd(&mut rng, 5);
        let to_iv = |m: &Vec<Vec<Rational>>| {
            DMatrix::from_fn(5, 5, |i, j| {
                let v = henon_oracle::rational_to_f64(&m[i][j]);
                assert_eq!(f64_to_rational(v), m[i][j]);
                Interval::point(v)
            })
        };
        // B x = κ A x
        let kappa = enclose_kappa(&to_iv(&a), &to_iv(&b)).unwrap();
        let mut want = oracle_eigs(&b, &a, 40).unwrap();
        want.reverse();
        for (k, w) in kappa.iter().zip(&want) {
            assert!(interval_contains(k.lo(), k.hi(), w), "trial {trial}: {k:?} vs {w}");
            assert!(k.width() < 1e-9 * k.mag().max(1.0), "trial {trial}: {k:?}");
        }
    }
}

fn sample_solution(spec: ProblemSpec, kind: SpaceKind, m: usize, seed: u64) -> GalerkinSolution {
    let space = SymmetrySpace::new(kind, spec.n_dim, m).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..space.dim()).map(|k| rng.random_range(-1.0..1.0) * 8.0 / (k + 1) as f64).collect();
    GalerkinSolution::new(spec, space, coeffs).unwrap()
}

#[test]
fn pencil_entries_match_exact_integrals() {
    for (spec, kind, m) in [
        (ProblemSpec::new(1, 2.0, 3.0).unwrap(), SpaceKind::Full, 5),
        (ProblemSpec::new(2, 2.0, 3.0).unwrap(), SpaceKind::V2, 3),
        (ProblemSpec::new(2, 0.0, 3.0).unwrap(), SpaceKind::V4, 5),
    ] {
        let sol = sample_solution(spec, kind, m, 3);
        let tau = Interval::point(0.75);
        let g = linearization_weight(&sol.series(), &spec, tau).unwrap();
        let (a, b) = assemble_pencil(&g, tau, &sol.space).unwrap();
        let n = spec.n_dim;
        let u = oracle_function(&sol);
        let og = BigRationalPoly::constant(n, q(3, 4))
            .add(&oracle_weight(n, spec.l as u32).mul(&u).mul(&u).scale(&q(3, 1)));
        let basis: Vec<BigRationalPoly> = (0..sol.space.dim())
            .map(|k| {
                let mut e = vec![0.0; sol.space.dim()];
                e[k] = 1.0;
                oracle_function(&GalerkinSolution::new(spec, sol.space, e).unwrap())
            })
            .collect();
        for r in 0..basis.len() {
            for c in 0..basis.len() {
                let wb = oracle_integrate(&og.mul(&basis[r]).mul(&basis[c]));
                assert!(rat_in(b[(r, c)], &wb), "{kind} B {r} {c}");
                let mut wa = oracle_integrate(&basis[r].mul(&basis[c])) * q(3, 4);
                for k in 0..n {
                    wa += oracle_integrate(&basis[r].derivative(k).mul(&basis[c].derivative(k)));
                }
                assert!(rat_in(a[(r, c)], &wa), "{kind} A {r} {c}");
            }
        }
    }
}

#[test]
fn residual_and_norms_match_exact_integrals() {
    for (spec, kind, m) in [
        (ProblemSpec::new(1, 0.0, 3.0).unwrap(), SpaceKind::V1, 7),
        (ProblemSpec::new(1, 4.0, 3.0).unwrap(), SpaceKind::Full, 6),
        (ProblemSpec::new(2, 2.0, 3.0).unwrap(), SpaceKind::V4, 5),
        (ProblemSpec::new(2, 0.0, 5.0).unwrap(), SpaceKind::V1, 3),
    ] {
        let sol = sample_solution(spec, kind, m, 11);
        let n = spec.n_dim;
        let p = spec.p as u32;
        let u = oracle_function(&sol);
        let mut lap = BigRationalPoly::zero(n);
        for k in 0..n {
            lap = lap.add(&u.derivative(k).derivative(k));
        }
        let r = lap.add(&oracle_weight(n, spec.l as u32).mul(&u.pow(p)));
        let exact_sq = oracle_integrate(&r.mul(&r));
        let got = residual_norm(&sol.series(), &spec, Interval::ONE).unwrap();
        assert!(rat_in(got.sqr(), &exact_sq), "{kind} residual");

        let tau = Interval::point(0.5);
        let norms = rigorous_norms(&sol.series(), &spec, tau).unwrap();
        let mut h = oracle_integrate(&u.mul(&u)) * q(1, 2);
        for k in 0..n {
            h += oracle_integrate(&u.derivative(k).mul(&u.derivative(k)));
        }
        assert!(rat_in(norms.h10.sqr(), &h), "{kind} h10");
        let lp = oracle_integrate(&u.pow(p + 1));
        assert!(rat_in(norms.lp1.powi(p + 1), &lp), "{kind} lp1");
        assert!(!lp.is_zero());
    }
}

#[test]
fn integrate_matches_on_mixed_series() {
    let terms = [(0usize, 3usize, q(2, 3)), (4, 1, q(-5, 7)), (2, 2, q(1, 9))];
    let s = PolySeries::from_monomials(2, &terms);
    let mut o = BigRationalPoly::zero(2);
    for (a, b, c) in &terms {
        o.add_term(vec![*a as u32, *b as u32], c.clone());
    }
    assert!(rat_in(s.integrate(), &oracle_integrate(&o)));
}
