use num_bigint::BigInt;

use super::series::PolySeries;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::problem::ProblemSpec;

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// `|x - x0|^l` for even integer `l` with `x0` the center of the box.
pub fn weight_poly(spec: &ProblemSpec) -> Result<PolySeries> {
    let l = spec.l_even_integer().ok_or_else(|| {
        Error::NotVerifiable(format!("weight exponent l={} is not an even integer", spec.l))
    })?;
    let half = l / 2;
    // (x - 1/2)^2 = x^2 - x + 1/4
    let sq: Vec<(usize, Rational)> = vec![
        (0, Rational::new(1.into(), 4.into())),
        (1, Rational::from_integer((-1).into())),
        (2, Rational::from_integer(1.into())),
    ];
    let mut pw: Vec<Vec<Rational>> = vec![vec![Rational::from_integer(1.into())]];
    for _ in 0..half {
        let prev = pw.last().unwrap();
        let mut next = vec![Rational::from_integer(0.into()); prev.len() + 2];
        for (k, c) in prev.iter().enumerate() {
            for (e, s) in &sq {
                next[k + e] += c * s;
            }
        }
        pw.push(next);
    }
    let mut terms = Vec::new();
    if spec.n_dim == 1 {
        for (k, c) in pw[half].iter().enumerate() {
            terms.push((k, 0, c.clone()));
        }
    } else {
        // ((x-1/2)^2 + (y-1/2)^2)^half by the binomial theorem
        for r in 0..=half {
            let b = Rational::from_integer(binom(half, r));
            for (a, ca) in pw[r].iter().enumerate() {
                for (bb, cb) in pw[half - r].iter().enumerate() {
                    terms.push((a, bb, &b * ca * cb));
                }
            }
        }
    }
    Ok(PolySeries::from_monomials(spec.n_dim, &terms))
}
