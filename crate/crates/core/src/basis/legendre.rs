//! Shifted Legendre polynomials `P̃_n(x) = P_n(2x - 1)` on `[0, 1]`: product
//! linearization, exact values at dyadic points, and Gauss–Legendre nodes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{ratio_enclose, Interval, Rational};

/// `A_r = binom(2r, r) / 4^r` for `r = 0..=n`, enclosed.
pub fn a_coeffs(n: usize) -> Vec<Interval> {
    let mut a = Vec::with_capacity(n + 1);
    let mut cur = Rational::one();
    a.push(Interval::ONE);
    for r in 1..=n {
        cur *= Rational::new(BigInt::from(2 * r - 1), BigInt::from(2 * r));
        a.push(ratio_enclose(&cur));
    }
    a
}

/// Table of linearization coefficients in
/// `P_m P_n = Σ_s C(m, n, s) P_{m+n-2s}`, `0 <= s <= min(m, n)`.
#[derive(Clone, Debug)]
pub struct Linearization {
    a: Vec<Interval>,
}

impl Linearization {
    pub fn new(max_degree: usize) -> Self {
        Linearization {
            a: a_coeffs(2 * max_degree + 2),
        }
    }

    pub fn max_degree(&self) -> usize {
        (self.a.len() - 3) / 2
    }

    #[inline]
    pub fn coeff(&self, m: usize, n: usize, s: usize) -> Interval {
        let a = &self.a;
        let num = a[s] * a[m - s] * a[n - s];
        let k = (2 * m + 2 * n - 4 * s + 1) as f64;
        let den = (2 * m + 2 * n - 2 * s + 1) as f64;
        num * k / (a[m + n - s] * den)
    }

    /// `∫_0^1 P̃_a P̃_b P̃_c dx`.
    pub fn triple(&self, a: usize, b: usize, c: usize) -> Interval {
        let sum = a + b;
        if c > sum || (sum - c) % 2 == 1 || c + a.min(b) < a.max(b) {
            return Interval::ZERO;
        }
        let s = (sum - c) / 2;
        self.coeff(a, b, s) / ((2 * c + 1) as f64)
    }
}

/// Exact values `P̃_k(t)` and `P̃_k'(t)` for `k = 0..=n` at a rational point.
///
/// With `2t - 1 = m / D` the unshifted recurrence keeps integer numerators
/// `N_k = D^k k! P_k`, so only the final division rounds.
pub fn exact_values(t: &Rational, n: usize) -> (Vec<Interval>, Vec<Interval>) {
    let s: Rational = t * Rational::from_integer(BigInt::from(2)) - Rational::one();
    let m = s.numer().clone();
    let d = s.denom().clone();
    let mut num: Vec<BigInt> = Vec::with_capacity(n + 1);
    num.push(BigInt::one());
    if n >= 1 {
        num.push(m.clone());
    }
    let d2 = &d * &d;
    for k in 1..n {
        let next = BigInt::from(2 * k + 1) * &m * &num[k] - BigInt::from(k * k) * &d2 * &num[k - 1];
        num.push(next);
    }
    // denominators D^k k!
    let mut den = BigInt::one();
    let mut vals_exact: Vec<Rational> = Vec::with_capacity(n + 1);
    for (k, nk) in num.iter().enumerate() {
        if k > 0 {
            den = den * &d * BigInt::from(k);
        }
        vals_exact.push(Rational::new(nk.clone(), den.clone()));
    }
    // P'_{k+1} = P'_{k-1} + (2k+1) P_k, shifted derivative doubles
    let mut der_exact: Vec<Rational> = vec![Rational::zero(); n + 1];
    for k in 0..n {
        let prev = if k >= 1 {
            der_exact[k - 1].clone()
        } else {
            Rational::zero()
        };
        der_exact[k + 1] = prev + Rational::from_integer(BigInt::from(2 * k + 1)) * &vals_exact[k];
    }
    let two = Rational::from_integer(BigInt::from(2));
    let vals = vals_exact.iter().map(ratio_enclose).collect();
    let ders = der_exact.iter().map(|v| ratio_enclose(&(v * &two))).collect();
    (vals, ders)
}

/// Enclosures of `P̃_k(t)` for `k = 0..=n` by the three-term recurrence in
/// interval arithmetic; `2t - 1` must be exactly representable.
pub fn interval_values(t: f64, n: usize) -> Vec<Interval> {
    let s = 2.0 * t - 1.0;
    debug_assert_eq!((s + 1.0) / 2.0, t);
    let unit = Interval::new(-1.0, 1.0);
    let clamp = |v: Interval| Interval::new(v.lo().max(-1.0), v.hi().min(1.0));
    let x = Interval::point(s);
    let mut out = Vec::with_capacity(n + 1);
    out.push(Interval::ONE);
    if n >= 1 {
        out.push(x);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = (Interval::point(2.0 * kf + 1.0) * x * out[k] - Interval::point(kf) * out[k - 1]) / (kf + 1.0);
        out.push(if next.is_bounded() { clamp(next) } else { unit });
    }
    out
}

/// `P̃_k(x)` for `k = 0..=n` in floating point.
pub fn values(x: f64, n: usize, out: &mut Vec<f64>) {
    out.clear();
    let s = 2.0 * x - 1.0;
    out.push(1.0);
    if n >= 1 {
        out.push(s);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * s * out[k] - kf * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
}

/// `P̃_k'(x)` for `k = 0..=n` given the values from [`values`].
pub fn derivatives(vals: &[f64], out: &mut Vec<f64>) {
    let n = vals.len();
    out.clear();
    out.resize(n, 0.0);
    for k in 0..n.saturating_sub(1) {
        let prev = if k >= 1 { out[k - 1] } else { 0.0 };
        out[k + 1] = prev + 2.0 * (2 * k + 1) as f64 * vals[k];
    }
}

/// `sup_{[0,1]} |P̃_k'| = k(k+1)`.
pub fn sup_derivative(k: usize) -> f64 {
    (k * (k + 1)) as f64
}

/// `sup_{[0,1]} |P̃_k''| = (k-1)k(k+1)(k+2)/2`.
pub fn sup_second_derivative(k: usize) -> f64 {
    if k < 2 {
        0.0
    } else {
        ((k - 1) * k * (k + 1) * (k + 2)) as f64 / 2.0
    }
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * z * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = 0.5 * (1.0 - z);
        nodes[n - 1 - i] = 0.5 * (1.0 + z);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linearization_small_cases() {
        let lin = Linearization::new(4);
        // P1 P1 = 2/3 P2 + 1/3 P0
        assert!(lin.coeff(1, 1, 0).contains(2.0 / 3.0));
        assert!(lin.coeff(1, 1, 1).contains(1.0 / 3.0));
        // ∫ P̃_2^2 = 1/5
        let t = lin.triple(2, 2, 0);
        assert!(t.lo() <= 0.2 && 0.2 <= t.hi());
        assert_eq!(lin.triple(1, 1, 1), Interval::ZERO);
        assert_eq!(lin.triple(1, 4, 1), Interval::ZERO);
    }

    #[test]
    fn exact_values_match_float_recurrence() {
        let t = Rational::new(BigInt::from(3), BigInt::from(8));
        let (v, d) = exact_values(&t, 12);
        let mut fv = Vec::new();
        let mut fd = Vec::new();
        values(0.375, 12, &mut fv);
        derivatives(&fv, &mut fd);
        for k in 0..=12 {
            assert!((v[k].mid() - fv[k]).abs() < 1e-14);
            assert!((d[k].mid() - fd[k]).abs() < 1e-11 * (1.0 + fd[k].abs()));
            assert!(v[k].width() <= 2.0 * f64::EPSILON);
        }
        let (v, d) = exact_values(&Rational::one(), 6);
        for k in 0..=6 {
            assert_eq!(v[k], Interval::ONE);
            assert_eq!(d[k].mid(), sup_derivative(k));
        }
    }

    #[test]
    fn gauss_rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(5);
        let s: f64 = w.iter().sum();
        assert!((s - 1.0).abs() < 1e-15);
        let m8: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(9)).sum();
        assert!((m8 - 0.1).abs() < 1e-15);
        let (x, w) = gauss_legendre(60);
        let m: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(119)).sum();
        assert!((m - 1.0 / 120.0).abs() < 1e-14);
    }
}
