//! Closed-form one-dimensional Gram matrices of `φ_i`.

use crate::arith::Interval;

/// `∫_0^1 φ_i' φ_k' = δ_ik / (2i+1)`.
pub fn stiffness_1d(i: usize, k: usize) -> Interval {
    if i == k {
        Interval::ONE / (2 * i + 1) as f64
    } else {
        Interval::ZERO
    }
}

/// `∫_0^1 φ_i φ_k`, nonzero only for `|i - k| ∈ {0, 2}`.
pub fn mass_1d(i: usize, k: usize) -> Interval {
    let (i, k) = (i.min(k), i.max(k));
    if i == k {
        let two_i = 2 * i as u64;
        // (1/(2i-1) + 1/(2i+3)) / (4(2i+1)^2) = (4i+2) / ((2i-1)(2i+3) 4 (2i+1)^2)
        let num = (2 * two_i + 2) as f64;
        let den = Interval::point(((two_i - 1) * (two_i + 3)) as f64)
            * Interval::point((4 * (two_i + 1) * (two_i + 1)) as f64);
        Interval::point(num) / den
    } else if k == i + 2 {
        let two_i = 2 * i as u64;
        let den = Interval::point((4 * (two_i + 1) * (two_i + 3)) as f64) * Interval::point((two_i + 5) as f64);
        -(Interval::ONE / den)
    } else {
        Interval::ZERO
    }
}

pub fn stiffness_1d_f64(i: usize, k: usize) -> f64 {
    if i == k {
        1.0 / (2 * i + 1) as f64
    } else {
        0.0
    }
}

pub fn mass_1d_f64(i: usize, k: usize) -> f64 {
    let (i, k) = (i.min(k), i.max(k));
    let fi = i as f64;
    if i == k {
        (1.0 / (2.0 * fi - 1.0) + 1.0 / (2.0 * fi + 3.0)) / (4.0 * (2.0 * fi + 1.0).powi(2))
    } else if k == i + 2 {
        -1.0 / (4.0 * (2.0 * fi + 1.0) * (2.0 * fi + 3.0) * (2.0 * fi + 5.0))
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_entries() {
        // ∫ (x - x^2)^2 = 1/30
        assert!(mass_1d(1, 1).contains(1.0 / 30.0));
        assert!(stiffness_1d(1, 1).contains(1.0 / 3.0));
        assert_eq!(mass_1d(1, 2), Interval::ZERO);
        assert!((mass_1d(3, 1).mid() - mass_1d_f64(1, 3)).abs() < 1e-18);
        for i in 1..30 {
            assert!(mass_1d(i, i).contains(mass_1d_f64(i, i)) || mass_1d(i, i).width() < 1e-17);
        }
    }
}
