use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::round::*;
use super::ArithError;

/// Closed interval `[lo, hi]` of reals with binary64 endpoints.
///
/// All arithmetic rounds outward, so the result of every operation contains
/// the exact image of its operands.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// Panics if `lo > hi` or either endpoint is NaN.
    #[inline]
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    #[inline]
    pub fn point(x: f64) -> Self {
        assert!(!x.is_nan());
        Interval { lo: x, hi: x }
    }

    /// Smallest interval containing both `a` and `b`.
    #[inline]
    pub fn spanning(a: f64, b: f64) -> Self {
        Interval::new(a.min(b), a.max(b))
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    /// Upper bound on the width.
    #[inline]
    pub fn width(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Upper bound on the radius about `mid()`.
    pub fn rad(&self) -> f64 {
        let m = self.mid();
        sub_up(self.hi, m).max(sub_up(m, self.lo))
    }

    /// Largest absolute value.
    #[inline]
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value.
    #[inline]
    pub fn mig(&self) -> f64 {
        if self.lo > 0.0 {
            self.lo
        } else if self.hi < 0.0 {
            -self.hi
        } else {
            0.0
        }
    }

    #[inline]
    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    #[inline]
    pub fn subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn abs(&self) -> Interval {
        Interval {
            lo: self.mig(),
            hi: self.mag(),
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    pub fn sqr(&self) -> Interval {
        let m = self.mig();
        let big = self.mag();
        Interval {
            lo: mul_down(m, m),
            hi: mul_up(big, big),
        }
    }

    pub fn recip(&self) -> Result<Interval, ArithError> {
        Interval::ONE.try_div(*self)
    }

    pub fn try_div(self, rhs: Interval) -> Result<Interval, ArithError> {
        if rhs.contains_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (a, b) = (self, rhs);
        let r = if b.lo > 0.0 {
            if a.lo >= 0.0 {
                (div_down(a.lo, b.hi), div_up(a.hi, b.lo))
            } else if a.hi <= 0.0 {
                (div_down(a.lo, b.lo), div_up(a.hi, b.hi))
            } else {
                (div_down(a.lo, b.lo), div_up(a.hi, b.lo))
            }
        } else if a.lo >= 0.0 {
            (div_down(a.hi, b.hi), div_up(a.lo, b.lo))
        } else if a.hi <= 0.0 {
            (div_down(a.hi, b.lo), div_up(a.lo, b.hi))
        } else {
            (div_down(a.hi, b.hi), div_up(a.lo, b.hi))
        };
        Ok(Interval { lo: r.0, hi: r.1 })
    }

    pub fn sqrt(&self) -> Result<Interval, ArithError> {
        if self.lo < 0.0 {
            return Err(ArithError::Domain("sqrt of negative interval"));
        }
        Ok(Interval {
            lo: sqrt_down(self.lo),
            hi: sqrt_up(self.hi),
        })
    }

    /// Integer power with the even/odd hull handled exactly.
    pub fn powi(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::ONE;
        }
        if k % 2 == 0 {
            let m = self.mig();
            let big = self.mag();
            Interval {
                lo: pow_down_nonneg(m, k),
                hi: pow_up_nonneg(big, k),
            }
        } else {
            let lo = if self.lo >= 0.0 {
                pow_down_nonneg(self.lo, k)
            } else {
                -pow_up_nonneg(-self.lo, k)
            };
            let hi = if self.hi >= 0.0 {
                pow_up_nonneg(self.hi, k)
            } else {
                -pow_down_nonneg(-self.hi, k)
            };
            Interval { lo, hi }
        }
    }

    /// Multiplies by `2^k`.
    pub fn ldexp(&self, k: i32) -> Interval {
        Interval {
            lo: ldexp_down(self.lo, k),
            hi: ldexp_up(self.hi, k),
        }
    }

    /// Widens each endpoint outward by `r`.
    pub fn inflate(&self, r: f64) -> Interval {
        Interval {
            lo: sub_down(self.lo, r),
            hi: add_up(self.hi, r),
        }
    }
}

fn pow_down_nonneg(x: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    let mut base = x;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_down(acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = mul_down(base, base);
        }
    }
    acc
}

fn pow_up_nonneg(x: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    let mut base = x;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_up(acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = mul_up(base, base);
        }
    }
    acc
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, rhs.lo),
            hi: add_up(self.hi, rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: sub_down(self.lo, rhs.hi),
            hi: sub_up(self.hi, rhs.lo),
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b) = (self, rhs);
        if a.lo >= 0.0 && b.lo >= 0.0 {
            return Interval {
                lo: mul_down(a.lo, b.lo),
                hi: mul_up(a.hi, b.hi),
            };
        }
        let lo = mul_down(a.lo, b.lo)
            .min(mul_down(a.lo, b.hi))
            .min(mul_down(a.hi, b.lo))
            .min(mul_down(a.hi, b.hi));
        let hi = mul_up(a.lo, b.lo)
            .max(mul_up(a.lo, b.hi))
            .max(mul_up(a.hi, b.lo))
            .max(mul_up(a.hi, b.hi));
        Interval { lo, hi }
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, b: f64) -> Interval {
        if b >= 0.0 {
            Interval {
                lo: mul_down(self.lo, b),
                hi: mul_up(self.hi, b),
            }
        } else {
            Interval {
                lo: mul_down(self.hi, b),
                hi: mul_up(self.lo, b),
            }
        }
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, b: f64) -> Interval {
        Interval {
            lo: add_down(self.lo, b),
            hi: add_up(self.hi, b),
        }
    }
}

/// Division by an interval containing zero yields the entire real line; use
/// [`Interval::try_div`] to get an error instead.
impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        self.try_div(rhs).unwrap_or(Interval::ENTIRE)
    }
}

impl Div<f64> for Interval {
    type Output = Interval;
    fn div(self, rhs: f64) -> Interval {
        self / Interval::point(rhs)
    }
}

impl AddAssign for Interval {
    #[inline]
    fn add_assign(&mut self, rhs: Interval) {
        *self = *self + rhs;
    }
}

impl SubAssign for Interval {
    #[inline]
    fn sub_assign(&mut self, rhs: Interval) {
        *self = *self - rhs;
    }
}

impl MulAssign for Interval {
    #[inline]
    fn mul_assign(&mut self, rhs: Interval) {
        *self = *self * rhs;
    }
}

impl Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}

/// Smallest representable binary64 strictly greater than `x`.
pub fn next_after_up(x: f64) -> f64 {
    x.next_up()
}
