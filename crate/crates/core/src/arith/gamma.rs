//! Enclosure of the gamma function on the positive reals.
//!
//! The argument is shifted up to `y >= 15` with `Γ(x+1) = xΓ(x)`, where the
//! Stirling series for `ln Γ(y)` converges fast; the first omitted term bounds
//! the truncation error for real `y > 0`.

use super::elementary::{exp, ln, pi};
use super::interval::Interval;
use super::ArithError;

/// Bernoulli numbers B_2, B_4, ..., B_26 as (numerator, denominator).
const BERNOULLI: [(f64, f64); 13] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
];

const SHIFT_TARGET: f64 = 15.0;

/// Brackets the abscissa of the minimum of Γ on (0, ∞), 1.4616321449683623...
const ARGMIN_LO: f64 = 1.46163214496836;
const ARGMIN_HI: f64 = 1.46163214496837;
/// Lower bound of min Γ = 0.88560319441088870...
const MIN_VALUE_LO: f64 = 0.8856031944108886;

fn ln_gamma_large(y: Interval) -> Interval {
    let half = Interval::point(0.5);
    let ln_y = ln(y).expect("positive");
    let ln_2pi = ln(pi() * 2.0).expect("positive");
    let mut s = (y - half) * ln_y - y + half * ln_2pi;
    let inv_y = Interval::ONE / y;
    let inv_y2 = inv_y.sqr();
    let mut pw = inv_y;
    let n = BERNOULLI.len() - 1;
    for (k, &(num, den)) in BERNOULLI[..n].iter().enumerate() {
        let two_k = (2 * (k + 1)) as f64;
        let b = Interval::point(num) / den;
        s += b * pw / (two_k * (two_k - 1.0));
        pw *= inv_y2;
    }
    let (num, den) = BERNOULLI[n];
    let two_k = (2 * (n + 1)) as f64;
    let rem = (Interval::point(num.abs()) / den * pw / (two_k * (two_k - 1.0))).hi();
    s.inflate(rem)
}

fn gamma_point(x: f64) -> Interval {
    let xi = Interval::point(x);
    let mut y = xi;
    let mut prod = Interval::ONE;
    while y.lo() < SHIFT_TARGET {
        prod *= y;
        y = y + 1.0;
    }
    exp(ln_gamma_large(y)) / prod
}

/// Encloses `Γ(x)` for every `x` in `a`; requires `a.lo > 0`.
pub fn gamma(a: Interval) -> Result<Interval, ArithError> {
    if a.lo() <= 0.0 {
        return Err(ArithError::Domain("gamma of nonpositive argument"));
    }
    if a.hi() > 171.0 {
        return Err(ArithError::Domain("gamma overflows binary64"));
    }
    if a.hi() <= ARGMIN_LO {
        return Ok(Interval::new(gamma_point(a.hi()).lo(), gamma_point(a.lo()).hi()));
    }
    if a.lo() >= ARGMIN_HI {
        return Ok(Interval::new(gamma_point(a.lo()).lo(), gamma_point(a.hi()).hi()));
    }
    let hi = gamma_point(a.lo()).hi().max(gamma_point(a.hi()).hi());
    Ok(Interval::new(MIN_VALUE_LO, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_and_half_integer_values() {
        let g2 = gamma(Interval::point(2.0)).unwrap();
        assert!(g2.contains(1.0));
        let g3 = gamma(Interval::point(3.0)).unwrap();
        assert!(g3.contains(2.0));
        let g = gamma(Interval::point(1.5)).unwrap();
        // sqrt(pi)/2 = 0.886226925452758013649...
        assert!(g.lo() <= 0.886226925452758 && g.hi() >= 0.8862269254527581);
        assert!(g.width() / g.mid() < 1e-12);
    }

    #[test]
    fn relative_width_on_unit_range() {
        for i in 0..=20 {
            let x = 1.0 + i as f64 / 20.0;
            let g = gamma(Interval::point(x)).unwrap();
            assert!(g.width() / g.lo() < 1e-12, "x = {x}: {g:?}");
        }
    }

    #[test]
    fn straddling_minimum() {
        let g = gamma(Interval::new(1.4, 1.5)).unwrap();
        assert!(g.lo() <= 0.8856031944108887);
        assert!(g.hi() >= gamma(Interval::point(1.4)).unwrap().lo());
        assert!(gamma(Interval::new(0.0, 1.0)).is_err());
    }
}
