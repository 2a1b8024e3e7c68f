//! Rigorous upper bounds for the maximum of a polynomial over the closed
//! unit box by branch and bound on dyadic cells.
//!
//! Each cell is bounded by a third-order Taylor expansion about its center:
//! value, gradient and Hessian are enclosed at the (dyadic) center and the
//! third derivatives are bounded globally by `Σ |c_ab|` of their series,
//! using `|P̃_k| <= 1` on `[0, 1]`. Near a maximum only the positive part of
//! the Hessian enters, so the bound tightens like `h³` there.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::arith::Interval;
use crate::basis::legendre::interval_values;
use crate::basis::PolySeries;

#[derive(Clone, Copy, Debug)]
pub struct SupOptions {
    /// Stop once the bound is within this fraction of the best sample.
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
    pub max_cells: usize,
}

impl Default for SupOptions {
    fn default() -> Self {
        SupOptions {
            rel_tol: 1e-3,
            abs_tol: 0.0,
            max_depth: 40,
            max_cells: 1_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SupBound {
    /// Rigorous: `p(x) <= upper` on the closed box.
    pub upper: f64,
    /// Largest rigorously evaluated sample value.
    pub lower: f64,
    pub argmax: [f64; 2],
    /// False when the depth cap or cell budget ended the search; `upper`
    /// is still valid, only looser.
    pub converged: bool,
    pub cells: usize,
}

#[derive(Clone, Copy)]
struct Cell {
    upper: f64,
    level: u32,
    ix: u64,
    iy: u64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.upper == other.upper
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper.total_cmp(&other.upper)
    }
}

type Table = Vec<Interval>;

struct Evaluator<'a> {
    p: &'a PolySeries,
    px: PolySeries,
    pxx: PolySeries,
    /// `∂y`, `∂xy`, `∂yy` in two dimensions.
    py: Option<[PolySeries; 3]>,
    /// Bound of `|D³p[d, d, d]|` for `|d|_∞ <= 1`.
    third: f64,
    deg: usize,
    cache: HashMap<(u32, u64), Table>,
}

fn abs_sum(s: &PolySeries) -> f64 {
    s.weighted_abs_sum(|_| 1.0, |_| 1.0)
}

fn pos(v: Interval) -> Interval {
    Interval::point(v.hi().max(0.0))
}

impl<'a> Evaluator<'a> {
    fn new(p: &'a PolySeries) -> Self {
        let px = p.derivative(0);
        let pxx = px.derivative(0);
        let (py, third) = if p.n_dim() == 2 {
            let py = p.derivative(1);
            let pxy = px.derivative(1);
            let pyy = py.derivative(1);
            let t = Interval::point(abs_sum(&pxx.derivative(0)))
                + Interval::point(abs_sum(&pxx.derivative(1))) * 3.0
                + Interval::point(abs_sum(&pxy.derivative(1))) * 3.0
                + Interval::point(abs_sum(&pyy.derivative(1)));
            (Some([py, pxy, pyy]), t.hi())
        } else {
            (None, abs_sum(&pxx.derivative(0)))
        };
        Evaluator {
            p,
            px,
            pxx,
            py,
            third,
            deg: p.nx().max(p.ny()),
            cache: HashMap::new(),
        }
    }

    /// Values at the center `(2i+1)/2^(level+1)` of the `i`-th cell.
    fn table(&mut self, level: u32, i: u64) -> Table {
        let deg = self.deg;
        self.cache
            .entry((level, i))
            .or_insert_with(|| interval_values(center(level, i), deg))
            .clone()
    }

    /// (rigorous upper bound on the cell, enclosure at the center)
    fn bound(&mut self, level: u32, ix: u64, iy: u64) -> (f64, Interval) {
        let h = Interval::ONE.ldexp(-(level as i32) - 1);
        let cubic = Interval::point(self.third) * h.powi(3) / 6.0;
        let vx = self.table(level, ix);
        let vy = if self.py.is_some() { self.table(level, iy) } else { Vec::new() };
        let Some([py, pxy, pyy]) = &self.py else {
            let f = self.p.eval_tabulated(&vx, &[]);
            let fx = self.px.eval_tabulated(&vx, &[]);
            let fxx = self.pxx.eval_tabulated(&vx, &[]);
            let ub = f + fx.abs() * h + pos(fxx) * h.sqr() * 0.5 + cubic;
            return (ub.hi(), f);
        };
        let f = self.p.eval_tabulated(&vx, &vy);
        let fx = self.px.eval_tabulated(&vx, &vy);
        let fy = py.eval_tabulated(&vx, &vy);
        let fxx = self.pxx.eval_tabulated(&vx, &vy);
        let fxy = pxy.eval_tabulated(&vx, &vy);
        let fyy = pyy.eval_tabulated(&vx, &vy);
        let quad = (pos(fxx) + Interval::point(fxy.mag()) * 2.0 + pos(fyy)) * h.sqr() * 0.5;
        let ub = f + (fx.abs() + fy.abs()) * h + quad + cubic;
        (ub.hi(), f)
    }
}

fn center(level: u32, i: u64) -> f64 {
    (2 * i + 1) as f64 / (1u64 << (level + 1)) as f64
}

/// Upper bound of `max p` over `[0,1]^N`.
pub fn sup_bound(p: &PolySeries, opts: SupOptions) -> SupBound {
    let p = &p.trimmed();
    if p.nx() == 1 && p.ny() == 1 {
        let c = p.coeff(0, 0);
        return SupBound {
            upper: c.hi(),
            lower: c.lo(),
            argmax: [0.5, 0.5],
            converged: true,
            cells: 0,
        };
    }
    let mut ev = Evaluator::new(p);
    let two_d = p.n_dim() == 2;
    let mut heap = BinaryHeap::new();
    let mut best = f64::NEG_INFINITY;
    let mut argmax = [0.5, 0.5];
    let mut capped = f64::NEG_INFINITY;
    let mut cells = 0usize;
    // corners and edges are covered by the cells; start from a 4x4 grid
    let start = 2u32;
    let n0 = 1u64 << start;
    for ix in 0..n0 {
        for iy in 0..(if two_d { n0 } else { 1 }) {
            let (ub, f) = ev.bound(start, ix, iy);
            cells += 1;
            if f.lo() > best {
                best = f.lo();
                argmax = [center(start, ix), if two_d { center(start, iy) } else { 0.5 }];
            }
            heap.push(Cell { upper: ub, level: start, ix, iy });
        }
    }
    let done = |ub: f64, best: f64| ub - best <= opts.abs_tol.max(opts.rel_tol * best.abs());
    let mut converged = true;
    let upper = loop {
        let Some(cell) = heap.pop() else {
            break capped;
        };
        if cell.upper <= capped || done(cell.upper, best) {
            break cell.upper.max(capped);
        }
        if cell.level >= opts.max_depth {
            capped = capped.max(cell.upper);
            converged = false;
            continue;
        }
        if cells >= opts.max_cells {
            converged = false;
            break heap.iter().map(|c| c.upper).fold(cell.upper.max(capped), f64::max);
        }
        let level = cell.level + 1;
        let ys: &[u64] = if two_d { &[0, 1] } else { &[0] };
        for dx in [0u64, 1] {
            for &dy in ys {
                let (ix, iy) = (2 * cell.ix + dx, if two_d { 2 * cell.iy + dy } else { 0 });
                let (ub, f) = ev.bound(level, ix, iy);
                cells += 1;
                if f.lo() > best {
                    best = f.lo();
                    argmax = [center(level, ix), if two_d { center(level, iy) } else { 0.5 }];
                }
                heap.push(Cell { upper: ub, level, ix, iy });
            }
        }
    };
    SupBound {
        upper,
        lower: best,
        argmax,
        converged,
        cells,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{assemble_function, SymmetrySpace};

    #[test]
    fn quartic_maximum() {
        // 3 (x - x^2)^2 has maximum 3/16 at 1/2
        let s = SymmetrySpace::full(1, 1);
        let phi = assemble_function(&s, &[1.0]).unwrap();
        let lin = crate::basis::Linearization::new(8);
        let g = phi.mul(&phi, &lin).scale(Interval::point(3.0));
        let b = sup_bound(&g, SupOptions::default());
        assert!(b.upper >= 3.0 / 16.0 && b.upper <= 3.0 / 16.0 * 1.001, "{b:?}");
        assert!(b.lower <= b.upper);
    }

    #[test]
    fn tight_in_two_dimensions() {
        // φ1(x)φ1(y) peaks at 1/16 in the center
        let s = SymmetrySpace::full(2, 1);
        let phi = assemble_function(&s, &[1.0]).unwrap();
        let opts = SupOptions {
            rel_tol: 1e-9,
            ..SupOptions::default()
        };
        let b = sup_bound(&phi, opts);
        assert!(b.converged);
        assert!(b.upper >= 1.0 / 16.0 && b.upper - 1.0 / 16.0 < 1e-9, "{b:?}");
    }
}
