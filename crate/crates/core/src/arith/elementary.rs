//! Enclosures of π, ln 2, exp, ln and real powers.

use super::interval::Interval;
use super::ArithError;

/// Encloses π. `std::f64::consts::PI` is the binary64 number just below π.
pub fn pi() -> Interval {
    Interval::new(std::f64::consts::PI, std::f64::consts::PI.next_up())
}

/// Encloses ln 2. `LN_2` rounds down as well.
pub fn ln2() -> Interval {
    Interval::new(std::f64::consts::LN_2, std::f64::consts::LN_2.next_up())
}

const EXP_TERMS: usize = 22;
const ATANH_TERMS: usize = 14;

/// Encloses `exp(x)` for a point `x`.
fn exp_point(x: f64) -> Interval {
    if x == 0.0 {
        return Interval::ONE;
    }
    if x > 709.8 {
        return Interval::new(f64::MAX, f64::INFINITY);
    }
    if x < -745.2 {
        return Interval::new(0.0, f64::from_bits(1));
    }
    let k = (x / std::f64::consts::LN_2).round();
    let r = Interval::point(x) - ln2() * k;
    // |r| <= 0.35 + tiny; Taylor polynomial of degree EXP_TERMS - 1 in Horner form
    let mut acc = Interval::ONE;
    for n in (1..EXP_TERMS).rev() {
        acc = Interval::ONE + r * acc / (n as f64);
    }
    // Lagrange remainder |r|^n / n! * e^|r| with e^|r| <= 2
    let mut tail = 2.0_f64;
    let rm = r.mag();
    for n in 1..=EXP_TERMS {
        tail = (Interval::point(tail) * rm / (n as f64)).hi();
    }
    (acc.inflate(tail)).ldexp(k as i32).max(&Interval::ZERO)
}

/// Encloses `ln(x)` for a point `x > 0`.
fn ln_point(x: f64) -> Interval {
    debug_assert!(x > 0.0);
    if x == 1.0 {
        return Interval::ZERO;
    }
    if x.is_infinite() {
        return Interval::new(709.0, f64::INFINITY);
    }
    let (mut m, mut e) = frexp(x);
    // m in [1/2, 1); move to [1/sqrt2, sqrt2)
    if m < std::f64::consts::FRAC_1_SQRT_2 {
        m *= 2.0;
        e -= 1;
    }
    let num = Interval::point(m - 1.0); // exact by Sterbenz
    let z = num / (Interval::point(m) + 1.0);
    let z2 = z.sqr();
    let mut acc = Interval::ZERO;
    for k in (0..ATANH_TERMS).rev() {
        acc = Interval::ONE / ((2 * k + 1) as f64) + z2 * acc;
    }
    let series = z * acc;
    let zm = z.mag();
    let n = ATANH_TERMS as i32;
    let rem = Interval::point(zm).powi((2 * n + 1) as u32)
        / (Interval::point((2 * n + 1) as f64) * (Interval::ONE - Interval::point(zm).sqr()));
    let ln_m = (series * 2.0).inflate((rem * 2.0).hi());
    ln_m + ln2() * (e as f64)
}

/// Splits a positive finite `x` as `m * 2^e` with `m` in `[1/2, 1)`.
fn frexp(x: f64) -> (f64, i32) {
    if x < f64::MIN_POSITIVE {
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, exp - 1022)
}

pub fn exp(x: Interval) -> Interval {
    let lo = exp_point(x.lo()).lo();
    let hi = exp_point(x.hi()).hi();
    Interval::new(lo, hi)
}

pub fn ln(x: Interval) -> Result<Interval, ArithError> {
    if x.lo() <= 0.0 {
        return Err(ArithError::Domain("logarithm of nonpositive interval"));
    }
    Ok(Interval::new(ln_point(x.lo()).lo(), ln_point(x.hi()).hi()))
}

/// `a^e` for `a > 0`.
pub fn powf(a: Interval, e: Interval) -> Result<Interval, ArithError> {
    if a.lo() <= 0.0 {
        return Err(ArithError::Domain("real power of nonpositive interval"));
    }
    if e == Interval::ZERO {
        return Ok(Interval::ONE);
    }
    Ok(exp(e * ln(a)?))
}
