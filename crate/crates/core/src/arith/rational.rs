use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::interval::Interval;
use super::round::{ldexp_down, ldexp_up};

pub type Rational = num_rational::BigRational;

/// Tightest binary64 interval containing the rational `r` (one ulp wide
/// unless `r` is representable).
pub fn ratio_enclose(r: &Rational) -> Interval {
    enclose_quotient(r.numer(), r.denom())
}

pub fn bigint_enclose(n: &BigInt) -> Interval {
    enclose_quotient(n, &BigInt::from(1))
}

fn enclose_quotient(n: &BigInt, d: &BigInt) -> Interval {
    if n.is_zero() {
        return Interval::ZERO;
    }
    let negative = (n.sign() == Sign::Minus) != (d.sign() == Sign::Minus);
    let n = n.abs();
    let d = d.abs();
    let shift = 66 - (n.bits() as i64 - d.bits() as i64);
    let (q, r) = if shift >= 0 {
        (n << shift as usize).div_rem(&d)
    } else {
        n.div_rem(&(d << (-shift) as usize))
    };
    let qbits = q.bits() as i64;
    let trunc = qbits - 53;
    let top: BigInt = &q >> trunc as usize;
    let exact = r.is_zero() && (&top << trunc as usize) == q;
    let top = u64::try_from(&top).expect("53-bit mantissa") as f64;
    let e = (trunc - shift) as i32;
    let (lo, hi) = if exact {
        (ldexp_down(top, e), ldexp_up(top, e))
    } else {
        (ldexp_down(top, e), ldexp_up(top + 1.0, e))
    };
    if negative {
        Interval::new(-hi, -lo)
    } else {
        Interval::new(lo, hi)
    }
}
