use std::collections::BTreeSet;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::arith::Interval;
use crate::basis::gram::{mass_1d, stiffness_1d};
use crate::basis::{Linearization, PolySeries, SymmetrySpace};
use crate::error::{Error, Result};

/// `∫_0^1 P̃_α φ_i φ_k` for every `α`, as `(α, value)` pairs.
fn t_row(lin: &Linearization, alpha_max: usize, i: usize, k: usize) -> Vec<(usize, Interval)> {
    let lo = (i.abs_diff(k)).saturating_sub(2);
    let hi = (i + k + 2).min(alpha_max);
    let den = (4 * (2 * i + 1) * (2 * k + 1)) as f64;
    let mut out = Vec::new();
    let mut alpha = lo + (lo + i + k) % 2;
    while alpha <= hi {
        let mut acc = Interval::ZERO;
        for (a, sa) in [(i - 1, 1.0), (i + 1, -1.0)] {
            for (c, sc) in [(k - 1, 1.0), (k + 1, -1.0)] {
                let t = lin.triple(alpha, a, c);
                if sa * sc > 0.0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
        }
        if acc != Interval::ZERO {
            out.push((alpha, acc / den));
        }
        alpha += 2;
    }
    out
}

fn active(space: &SymmetrySpace) -> (Vec<usize>, Vec<usize>) {
    let mut xs = BTreeSet::new();
    let mut ys = BTreeSet::new();
    for b in space.index_set() {
        for t in space.terms(b) {
            xs.insert(t.i);
            ys.insert(t.j);
        }
    }
    (xs.into_iter().collect(), ys.into_iter().collect())
}

/// Interval matrices of the pencil: `A` is the τ-weighted `H¹₀` Gram matrix
/// and `B` the Gram matrix of `∫ g b_m b_k` for a polynomial weight `g`,
/// both over the basis of `space`.
pub fn assemble_pencil(g: &PolySeries, tau: Interval, space: &SymmetrySpace) -> Result<(DMatrix<Interval>, DMatrix<Interval>)> {
    if g.n_dim() != space.n_dim {
        return Err(Error::InvalidInput("weight and space dimension differ".into()));
    }
    let g = g.trimmed();
    let idx = space.index_set();
    let n = idx.len();
    let m = space.m;
    let (xs, ys) = active(space);
    let gdeg = g.nx().max(g.ny()) - 1;
    let lin = Linearization::new(gdeg.max(m + 1));
    let two_d = space.n_dim == 2;

    // position of active index in the compressed tensor
    let mut xpos = vec![usize::MAX; m + 2];
    for (p, &i) in xs.iter().enumerate() {
        xpos[i] = p;
    }
    let mut ypos = vec![usize::MAX; m + 2];
    for (p, &j) in ys.iter().enumerate() {
        ypos[j] = p;
    }
    let (nxs, nys) = (xs.len(), ys.len());

    let tx: Vec<Vec<Vec<(usize, Interval)>>> = xs
        .iter()
        .map(|&i| xs.iter().map(|&k| t_row(&lin, g.nx() - 1, i, k)).collect())
        .collect();

    // bt[(pi, pj), (pk, pl)] = ∫ g φ_i φ_k(x) φ_j φ_l(y)
    let bt: Vec<Vec<Interval>> = if two_d {
        let ty: Vec<Vec<Vec<(usize, Interval)>>> = ys
            .iter()
            .map(|&j| ys.iter().map(|&l| t_row(&lin, g.ny() - 1, j, l)).collect())
            .collect();
        // h[α][pj*nys + pl] = Σ_β g_αβ T(β, j, l)
        let h: Vec<Vec<Interval>> = (0..g.nx())
            .into_par_iter()
            .map(|alpha| {
                let mut row = vec![Interval::ZERO; nys * nys];
                for pj in 0..nys {
                    for pl in pj..nys {
                        let mut acc = Interval::ZERO;
                        for &(beta, t) in &ty[pj][pl] {
                            let c = g.coeff(alpha, beta);
                            if c != Interval::ZERO {
                                acc += c * t;
                            }
                        }
                        row[pj * nys + pl] = acc;
                        row[pl * nys + pj] = acc;
                    }
                }
                row
            })
            .collect();
        (0..nxs * nys)
            .into_par_iter()
            .map(|r| {
                let (pi, pj) = (r / nys, r % nys);
                let mut out = vec![Interval::ZERO; nxs * nys];
                for pk in 0..nxs {
                    let trow = &tx[pi][pk];
                    for pl in 0..nys {
                        let mut acc = Interval::ZERO;
                        for &(alpha, t) in trow {
                            let v = h[alpha][pj * nys + pl];
                            if v != Interval::ZERO {
                                acc += t * v;
                            }
                        }
                        out[pk * nys + pl] = acc;
                    }
                }
                out
            })
            .collect()
    } else {
        (0..nxs)
            .map(|pi| {
                (0..nxs)
                    .map(|pk| {
                        let mut acc = Interval::ZERO;
                        for &(alpha, t) in &tx[pi][pk] {
                            acc += g.coeff(alpha, 0) * t;
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };

    let terms: Vec<_> = idx.iter().map(|&b| space.terms(b)).collect();
    let mut a = DMatrix::from_element(n, n, Interval::ZERO);
    let mut b = DMatrix::from_element(n, n, Interval::ZERO);
    for r in 0..n {
        for c in r..n {
            let mut sa = Interval::ZERO;
            let mut sb = Interval::ZERO;
            for t in &terms[r] {
                for s in &terms[c] {
                    let w = Interval::point(t.coef * s.coef);
                    let (ea, eb) = if two_d {
                        let (kx, mx) = (stiffness_1d(t.i, s.i), mass_1d(t.i, s.i));
                        let (ky, my) = (stiffness_1d(t.j, s.j), mass_1d(t.j, s.j));
                        let ea = kx * my + mx * ky + tau * mx * my;
                        let eb = bt[xpos[t.i] * nys + ypos[t.j]][xpos[s.i] * nys + ypos[s.j]];
                        (ea, eb)
                    } else {
                        let ea = stiffness_1d(t.i, s.i) + tau * mass_1d(t.i, s.i);
                        (ea, bt[xpos[t.i]][xpos[s.i]])
                    };
                    sa += w * ea;
                    sb += w * eb;
                }
            }
            a[(r, c)] = sa;
            a[(c, r)] = sa;
            b[(r, c)] = sb;
            b[(c, r)] = sb;
        }
    }
    Ok((a, b))
}
