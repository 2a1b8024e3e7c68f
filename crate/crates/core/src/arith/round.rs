//! Directed rounding on top of round-to-nearest hardware arithmetic.
//!
//! Each operation is computed once in round-to-nearest; an error-free
//! transformation (TwoSum, Dekker's TwoProduct) recovers the exact rounding
//! error, whose sign decides whether the result has to be stepped to the
//! neighbouring float. When the error-free transformation is not exact
//! (underflow of the error term, overflow in the splitting) the result is
//! widened by one ulp unconditionally, which is always safe.

/// 2^27 + 1, the Veltkamp splitting constant for binary64.
const SPLITTER: f64 = 134_217_729.0;

/// Operands above this magnitude may overflow inside `split`.
const SPLIT_LIMIT: f64 = 6.703903964971299e+299; // 2^996

/// Products below this magnitude may have an error term that underflows.
const PROD_FLOOR: f64 = 4.008336720017946e-292; // 2^-968

#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = SPLITTER * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

#[inline]
fn prod_is_exact_checkable(a: f64, b: f64, p: f64) -> bool {
    a.abs() < SPLIT_LIMIT && b.abs() < SPLIT_LIMIT && p.abs() >= PROD_FLOOR && p.is_finite()
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return s.next_down();
    }
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return s.next_up();
    }
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if prod_is_exact_checkable(a, b, p) {
        let (_, e) = two_prod(a, b);
        if e < 0.0 {
            p.next_down()
        } else {
            p
        }
    } else {
        p.next_down()
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if prod_is_exact_checkable(a, b, p) {
        let (_, e) = two_prod(a, b);
        if e > 0.0 {
            p.next_up()
        } else {
            p
        }
    } else {
        p.next_up()
    }
}

/// Sign of `a - q*b` relative to `b`: positive when the exact quotient `a/b`
/// exceeds `q`. `None` when the remainder cannot be computed exactly.
#[inline]
fn div_direction(a: f64, b: f64, q: f64) -> Option<f64> {
    if !q.is_finite() || q == 0.0 {
        return None;
    }
    if !prod_is_exact_checkable(q, b, q * b) || a.abs() < PROD_FLOOR * 4.0 {
        return None;
    }
    let (p, e) = two_prod(q, b);
    let r = (a - p) - e;
    Some(if b > 0.0 { r } else { -r })
}

#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    match div_direction(a, b, q) {
        Some(r) if r >= 0.0 => q,
        Some(_) => q.next_down(),
        None => q.next_down(),
    }
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    match div_direction(a, b, q) {
        Some(r) if r <= 0.0 => q,
        Some(_) => q.next_up(),
        None => q.next_up(),
    }
}

#[inline]
fn sqrt_direction(a: f64, s: f64) -> Option<f64> {
    if s == 0.0 || !s.is_finite() || a < PROD_FLOOR * 4.0 || a > SPLIT_LIMIT {
        return None;
    }
    let (p, e) = two_prod(s, s);
    Some((a - p) - e)
}

/// Requires `a >= 0`.
#[inline]
pub fn sqrt_down(a: f64) -> f64 {
    let s = a.sqrt();
    if a == 0.0 {
        return 0.0;
    }
    match sqrt_direction(a, s) {
        Some(r) if r >= 0.0 => s,
        _ => s.next_down().max(0.0),
    }
}

/// Requires `a >= 0`.
#[inline]
pub fn sqrt_up(a: f64) -> f64 {
    let s = a.sqrt();
    if a == 0.0 {
        return 0.0;
    }
    match sqrt_direction(a, s) {
        Some(r) if r <= 0.0 => s,
        _ => s.next_up(),
    }
}

/// Multiplies by `2^k` with directed rounding; exact in the normal range.
pub fn ldexp_down(x: f64, k: i32) -> f64 {
    scale2(x, k, mul_down)
}

pub fn ldexp_up(x: f64, k: i32) -> f64 {
    scale2(x, k, mul_up)
}

fn scale2(mut x: f64, mut k: i32, mul: fn(f64, f64) -> f64) -> f64 {
    while k > 1000 {
        x = mul(x, 2f64.powi(1000));
        k -= 1000;
    }
    while k < -1000 {
        x = mul(x, 2f64.powi(-1000));
        k += 1000;
    }
    mul(x, 2f64.powi(k))
}
