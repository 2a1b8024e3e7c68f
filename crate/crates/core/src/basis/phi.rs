use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;

/// Exact monomial coefficients of one basis function `φ_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisFunction {
    pub n: usize,
    /// `coeffs[k]` multiplies `x^k`.
    pub coeffs: Vec<Rational>,
}

impl BasisFunction {
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Monomial coefficients of the shifted Legendre polynomial `Q_n`, i.e. the
/// Rodrigues polynomial `(1/n!) d^n/dx^n (x^2 - x)^n`.
pub fn shifted_legendre_monomial(n: usize) -> Vec<Rational> {
    (0..=n)
        .map(|k| {
            let sign = if (n + k) % 2 == 0 { 1 } else { -1 };
            Rational::from_integer(BigInt::from(sign) * binom(n, k) * binom(n + k, k))
        })
        .collect()
}

/// `φ_n(x) = x(1-x) Q_n'(x) / (n(n+1))`.
pub fn build_phi(n: usize) -> BasisFunction {
    assert!(n >= 1, "basis index starts at 1");
    let q = shifted_legendre_monomial(n);
    let dq: Vec<Rational> = (1..=n)
        .map(|k| &q[k] * Rational::from_integer(BigInt::from(k)))
        .collect();
    let scale = Rational::new(BigInt::one(), BigInt::from(n * (n + 1)));
    let mut coeffs = vec![Rational::zero(); n + 2];
    // (x - x^2) * dq
    for (k, c) in dq.iter().enumerate() {
        let c = c * &scale;
        coeffs[k + 1] += &c;
        coeffs[k + 2] -= c;
    }
    BasisFunction { n, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn phi_one_is_the_bubble() {
        let p = build_phi(1);
        assert_eq!(p.coeffs, vec![q(0, 1), q(1, 1), q(-1, 1)]);
        assert_eq!(p.eval(&q(1, 2)), q(1, 4));
    }

    #[test]
    fn boundary_degree_and_parity() {
        for n in 1..=12 {
            let p = build_phi(n);
            assert_eq!(p.degree(), n + 1);
            assert!(p.eval(&q(0, 1)).is_zero());
            assert!(p.eval(&q(1, 1)).is_zero());
            for t in [q(1, 7), q(2, 5), q(1, 3)] {
                let mirrored = p.eval(&(q(1, 1) - &t));
                let v = p.eval(&t);
                if n % 2 == 1 {
                    assert_eq!(mirrored, v);
                } else {
                    assert_eq!(mirrored, -v);
                }
            }
        }
    }
}
