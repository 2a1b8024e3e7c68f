//! Rigorous polynomials on the unit box, stored as tensor shifted-Legendre
//! series `Σ c_ab P̃_a(x) P̃_b(y)` with interval coefficients.
//!
//! Products use the exact linearization formula, integrals read off `c_00`,
//! and L² inner products follow from orthogonality, so no conversion to the
//! monomial basis (whose conditioning collapses at the degrees used here)
//! ever happens.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::legendre::{self, Linearization};
use crate::arith::{ratio_enclose, Interval, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct PolySeries {
    n_dim: usize,
    nx: usize,
    ny: usize,
    c: Vec<Interval>,
}

impl PolySeries {
    /// Zero polynomial with room for degrees `< nx` in x and `< ny` in y.
    pub fn zeros(n_dim: usize, nx: usize, ny: usize) -> Self {
        assert!(n_dim == 1 || n_dim == 2);
        let ny = if n_dim == 1 { 1 } else { ny.max(1) };
        let nx = nx.max(1);
        PolySeries {
            n_dim,
            nx,
            ny,
            c: vec![Interval::ZERO; nx * ny],
        }
    }

    pub fn constant(n_dim: usize, v: Interval) -> Self {
        let mut s = PolySeries::zeros(n_dim, 1, 1);
        s.c[0] = v;
        s
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    /// Number of coefficient slots in x (degree bound plus one).
    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn coeff(&self, a: usize, b: usize) -> Interval {
        if a < self.nx && b < self.ny {
            self.c[a * self.ny + b]
        } else {
            Interval::ZERO
        }
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, v: Interval) {
        self.c[a * self.ny + b] = v;
    }

    #[inline]
    pub fn add_to(&mut self, a: usize, b: usize, v: Interval) {
        let k = a * self.ny + b;
        self.c[k] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| *v == Interval::ZERO)
    }

    /// Converts exact monomial coefficients `(a, b, r)` meaning `r x^a y^b`.
    pub fn from_monomials(n_dim: usize, terms: &[(usize, usize, Rational)]) -> Self {
        let dx = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let dy = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let tx = monomial_to_legendre(dx);
        let ty = monomial_to_legendre(dy);
        let ny = if n_dim == 1 { 1 } else { dy + 1 };
        let mut exact = vec![Rational::zero(); (dx + 1) * ny];
        for (a, b, r) in terms {
            assert!(n_dim == 2 || *b == 0);
            for (ka, ca) in tx[*a].iter().enumerate() {
                for (kb, cb) in ty[*b].iter().enumerate() {
                    exact[ka * ny + kb] += r * ca * cb;
                }
            }
        }
        let mut s = PolySeries::zeros(n_dim, dx + 1, ny);
        for (k, v) in exact.iter().enumerate() {
            s.c[k] = ratio_enclose(v);
        }
        s
    }

    fn resized(&self, nx: usize, ny: usize) -> Self {
        let mut out = PolySeries::zeros(self.n_dim, nx, ny);
        for a in 0..self.nx.min(out.nx) {
            for b in 0..self.ny.min(out.ny) {
                out.set(a, b, self.coeff(a, b));
            }
        }
        out
    }

    pub fn add(&self, other: &PolySeries) -> PolySeries {
        assert_eq!(self.n_dim, other.n_dim);
        let mut out = self.resized(self.nx.max(other.nx), self.ny.max(other.ny));
        for a in 0..other.nx {
            for b in 0..other.ny {
                out.add_to(a, b, other.coeff(a, b));
            }
        }
        out
    }

    pub fn sub(&self, other: &PolySeries) -> PolySeries {
        self.add(&other.scale(-Interval::ONE))
    }

    pub fn scale(&self, k: Interval) -> PolySeries {
        let mut out = self.clone();
        for v in out.c.iter_mut() {
            *v = *v * k;
        }
        out
    }

    /// Exact product via `P_m P_n = Σ_s C(m,n,s) P_{m+n-2s}` in each variable.
    pub fn mul(&self, other: &PolySeries, lin: &Linearization) -> PolySeries {
        assert_eq!(self.n_dim, other.n_dim);
        let (f, g) = (self, other);
        let nx = f.nx + g.nx - 1;
        let ny = f.ny + g.ny - 1;
        assert!(
            nx.max(ny) <= lin.max_degree() + 1,
            "linearization table too small for degree {}",
            nx.max(ny) - 1
        );
        let (fy, gy) = (f.ny, g.ny);
        let nzf: Vec<Vec<usize>> = (0..f.nx)
            .map(|a| (0..fy).filter(|&b| f.coeff(a, b) != Interval::ZERO).collect())
            .collect();
        let nzg: Vec<Vec<usize>> = (0..g.nx)
            .map(|a| (0..gy).filter(|&b| g.coeff(a, b) != Interval::ZERO).collect())
            .collect();
        // stage 1: contract x, keep the pair of y indices
        let mut z = vec![Interval::ZERO; nx * fy * gy];
        let mut touched = vec![false; nx];
        let mut prod = vec![Interval::ZERO; fy * gy];
        for a in 0..f.nx {
            if nzf[a].is_empty() {
                continue;
            }
            for ap in 0..g.nx {
                if nzg[ap].is_empty() {
                    continue;
                }
                for &b in &nzf[a] {
                    let fa = f.coeff(a, b);
                    for &bp in &nzg[ap] {
                        prod[b * gy + bp] = fa * g.coeff(ap, bp);
                    }
                }
                for s in 0..=a.min(ap) {
                    let n = a + ap - 2 * s;
                    let l = lin.coeff(a, ap, s);
                    touched[n] = true;
                    let row = &mut z[n * fy * gy..(n + 1) * fy * gy];
                    for &b in &nzf[a] {
                        for &bp in &nzg[ap] {
                            let k = b * gy + bp;
                            row[k] += l * prod[k];
                        }
                    }
                }
                for &b in &nzf[a] {
                    for &bp in &nzg[ap] {
                        prod[b * gy + bp] = Interval::ZERO;
                    }
                }
            }
        }
        // stage 2: contract y
        let mut out = PolySeries::zeros(self.n_dim, nx, ny);
        if self.n_dim == 1 {
            for n in 0..nx {
                out.c[n] = z[n];
            }
            return out;
        }
        let ly: Vec<Vec<Vec<Interval>>> = (0..fy)
            .map(|b| {
                (0..gy)
                    .map(|bp| (0..=b.min(bp)).map(|t| lin.coeff(b, bp, t)).collect())
                    .collect()
            })
            .collect();
        for n in 0..nx {
            if !touched[n] {
                continue;
            }
            let row = &z[n * fy * gy..(n + 1) * fy * gy];
            for b in 0..fy {
                for bp in 0..gy {
                    let v = row[b * gy + bp];
                    if v == Interval::ZERO {
                        continue;
                    }
                    for (t, l) in ly[b][bp].iter().enumerate() {
                        out.add_to(n, b + bp - 2 * t, *l * v);
                    }
                }
            }
        }
        out
    }

    /// `∫_{(0,1)^N} p`.
    pub fn integrate(&self) -> Interval {
        self.c[0]
    }

    /// `∫ p q` by orthogonality: `∫ P̃_a² = 1/(2a+1)`.
    pub fn inner(&self, other: &PolySeries) -> Interval {
        let mut acc = Interval::ZERO;
        for a in 0..self.nx.min(other.nx) {
            for b in 0..self.ny.min(other.ny) {
                let p = self.coeff(a, b) * other.coeff(a, b);
                if p != Interval::ZERO {
                    acc += p / (((2 * a + 1) * (2 * b + 1)) as f64);
                }
            }
        }
        acc
    }

    pub fn l2_norm_sq(&self) -> Interval {
        let mut acc = Interval::ZERO;
        for a in 0..self.nx {
            for b in 0..self.ny {
                let v = self.coeff(a, b);
                if v != Interval::ZERO {
                    acc += v.sqr() / (((2 * a + 1) * (2 * b + 1)) as f64);
                }
            }
        }
        acc
    }

    /// Partial derivative in x (`axis = 0`) or y (`axis = 1`), using
    /// `P̃_n' = 2 Σ_{k<n, n-k odd} (2k+1) P̃_k`.
    pub fn derivative(&self, axis: usize) -> PolySeries {
        let mut out = PolySeries::zeros(self.n_dim, self.nx, self.ny);
        let (len, other) = if axis == 0 { (self.nx, self.ny) } else { (self.ny, self.nx) };
        for o in 0..other {
            let get = |k: usize| if axis == 0 { self.coeff(k, o) } else { self.coeff(o, k) };
            let mut tail = [Interval::ZERO, Interval::ZERO];
            for k in (0..len).rev() {
                let d = tail[(k + 1) % 2] * (2.0 * (2 * k + 1) as f64);
                if axis == 0 {
                    out.set(k, o, d);
                } else {
                    out.set(o, k, d);
                }
                tail[k % 2] += get(k);
            }
        }
        out
    }

    pub fn laplacian(&self) -> PolySeries {
        let dxx = self.derivative(0).derivative(0);
        if self.n_dim == 1 {
            return dxx;
        }
        dxx.add(&self.derivative(1).derivative(1))
    }

    /// Drops trailing coefficient rows/columns that are exactly zero.
    pub fn trimmed(&self) -> PolySeries {
        let mut nx = self.nx;
        while nx > 1 && (0..self.ny).all(|b| self.coeff(nx - 1, b) == Interval::ZERO) {
            nx -= 1;
        }
        let mut ny = self.ny;
        while ny > 1 && (0..nx).all(|a| self.coeff(a, ny - 1) == Interval::ZERO) {
            ny -= 1;
        }
        self.resized(nx, ny)
    }

    /// Interval evaluation from tabulated basis values at one point.
    pub fn eval_tabulated(&self, vx: &[Interval], vy: &[Interval]) -> Interval {
        let mut acc = Interval::ZERO;
        for a in 0..self.nx {
            let mut row = Interval::ZERO;
            for b in 0..self.ny {
                let c = self.c[a * self.ny + b];
                if c != Interval::ZERO {
                    row += c * if self.n_dim == 1 { Interval::ONE } else { vy[b] };
                }
            }
            if row != Interval::ZERO {
                acc += row * vx[a];
            }
        }
        acc
    }

    /// Floating-point evaluation at the midpoints of the coefficients.
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut vx = Vec::new();
        let mut vy = Vec::new();
        legendre::values(x, self.nx - 1, &mut vx);
        legendre::values(y, self.ny - 1, &mut vy);
        let mut acc = 0.0;
        for a in 0..self.nx {
            for b in 0..self.ny {
                acc += self.c[a * self.ny + b].mid() * vx[a] * vy[b];
            }
        }
        acc
    }

    /// Upper bound of `Σ |c_ab| wx(a) wy(b)`.
    pub fn weighted_abs_sum(&self, wx: impl Fn(usize) -> f64, wy: impl Fn(usize) -> f64) -> f64 {
        let mut acc = Interval::ZERO;
        for a in 0..self.nx {
            for b in 0..self.ny {
                let c = self.c[a * self.ny + b];
                if c != Interval::ZERO {
                    let w = Interval::point(wx(a)) * Interval::point(if self.n_dim == 1 { 1.0 } else { wy(b) });
                    acc += Interval::point(c.mag()) * w;
                }
            }
        }
        acc.hi()
    }
}

/// `x^n = Σ_k (2k+1) n!^2 / ((n-k)! (n+k+1)!) P̃_k(x)`, rows `n = 0..=d`.
fn monomial_to_legendre(d: usize) -> Vec<Vec<Rational>> {
    let fact = |n: usize| -> BigInt { (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)) };
    (0..=d)
        .map(|n| {
            let nf = fact(n);
            (0..=n)
                .map(|k| {
                    Rational::new(
                        BigInt::from(2 * k + 1) * &nf * &nf,
                        fact(n - k) * fact(n + k + 1),
                    )
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn monomial_conversion_and_integrals() {
        // (1 - 2x)^2 = 1 - 4x + 4x^2 integrates to 1/3
        let p = PolySeries::from_monomials(1, &[(0, 0, q(1, 1)), (1, 0, q(-4, 1)), (2, 0, q(4, 1))]);
        assert!(p.integrate().contains(1.0 / 3.0));
        let xy = PolySeries::from_monomials(2, &[(1, 1, q(1, 1))]);
        assert_eq!(xy.integrate(), Interval::point(0.25));
        assert_eq!(PolySeries::zeros(2, 3, 3).integrate(), Interval::ZERO);
    }

    #[test]
    fn product_matches_monomial_product() {
        let lin = Linearization::new(12);
        let bubble = PolySeries::from_monomials(1, &[(1, 0, q(1, 1)), (2, 0, q(-1, 1))]);
        let b2 = bubble.mul(&bubble, &lin);
        let b4 = b2.mul(&b2, &lin);
        assert!(b4.integrate().lo() <= 1.0 / 630.0 && 1.0 / 630.0 <= b4.integrate().hi());
        assert!(b2.integrate().contains(1.0 / 30.0));
        assert!(bubble.l2_norm_sq().contains(1.0 / 30.0));
        let f = PolySeries::from_monomials(2, &[(1, 0, q(1, 1)), (0, 2, q(3, 1))]);
        let g = PolySeries::from_monomials(2, &[(2, 1, q(1, 1)), (0, 0, q(-1, 2))]);
        let fg = f.mul(&g, &lin);
        for &(x, y) in &[(0.3, 0.7), (0.9, 0.1), (0.5, 0.5)] {
            let exact = (x + 3.0 * y * y) * (x * x * y - 0.5);
            assert!((fg.eval_f64(x, y) - exact).abs() < 1e-14);
        }
        assert!((fg.integrate().mid() - f.inner(&g).mid()).abs() < 1e-15);
    }

    #[test]
    fn derivatives_and_laplacian() {
        // u = x^3 y^2: Δu = 6x y^2 + 2 x^3
        let u = PolySeries::from_monomials(2, &[(3, 2, q(1, 1))]);
        let lap = u.laplacian();
        for &(x, y) in &[(0.2, 0.4), (0.75, 0.5)] {
            let exact = 6.0 * x * y * y + 2.0 * x * x * x;
            assert!((lap.eval_f64(x, y) - exact).abs() < 1e-13);
        }
        let dy = u.derivative(1);
        assert!((dy.eval_f64(0.5, 0.25) - 2.0 * 0.125 * 0.25).abs() < 1e-14);
    }
}
