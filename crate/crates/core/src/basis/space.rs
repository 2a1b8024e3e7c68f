use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Which symmetry-restricted subspace the coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Full,
    /// N=1: symmetric about x=1/2. N=2: symmetric about x=1/2 only.
    V1,
    /// Symmetric about y=x.
    V2,
    /// Symmetric about y=x and y=1-x.
    V3,
    /// Full symmetry group of the square.
    V4,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceKind::Full => "Full",
            SpaceKind::V1 => "V1",
            SpaceKind::V2 => "V2",
            SpaceKind::V3 => "V3",
            SpaceKind::V4 => "V4",
        };
        f.write_str(s)
    }
}

impl FromStr for SpaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "full" | "v" => Ok(SpaceKind::Full),
            "v1" => Ok(SpaceKind::V1),
            "v2" => Ok(SpaceKind::V2),
            "v3" => Ok(SpaceKind::V3),
            "v4" => Ok(SpaceKind::V4),
            _ => Err(Error::InvalidInput(format!("unknown space '{s}'"))),
        }
    }
}

/// A subspace tag together with the dimension N and truncation order M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetrySpace {
    pub kind: SpaceKind,
    pub n_dim: usize,
    pub m: usize,
}

/// One basis element: `φ_i` (N=1), `φ_i(x)φ_j(y)` or `ψ_{i,j}` (N=2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub i: usize,
    /// Zero for N=1.
    pub j: usize,
}

/// `coef * φ_i(x) φ_j(y)`; `j = 0` stands for the absent y factor when N=1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensorTerm {
    pub i: usize,
    pub j: usize,
    pub coef: f64,
}

impl SymmetrySpace {
    pub fn new(kind: SpaceKind, n_dim: usize, m: usize) -> Result<Self, Error> {
        if n_dim != 1 && n_dim != 2 {
            return Err(Error::InvalidInput(format!("N must be 1 or 2, got {n_dim}")));
        }
        if m < 1 {
            return Err(Error::InvalidInput("M must be positive".into()));
        }
        if n_dim == 1 && matches!(kind, SpaceKind::V2 | SpaceKind::V3 | SpaceKind::V4) {
            return Err(Error::UnsupportedSpace(kind, n_dim));
        }
        Ok(SymmetrySpace { kind, n_dim, m })
    }

    pub fn full(n_dim: usize, m: usize) -> Self {
        SymmetrySpace {
            kind: SpaceKind::Full,
            n_dim,
            m,
        }
    }

    /// Lexicographic on `(i, j)`.
    pub fn index_set(&self) -> Vec<BasisIndex> {
        let m = self.m;
        let mut out = Vec::new();
        if self.n_dim == 1 {
            for i in 1..=m {
                if self.kind == SpaceKind::Full || i % 2 == 1 {
                    out.push(BasisIndex { i, j: 0 });
                }
            }
            return out;
        }
        for i in 1..=m {
            for j in 1..=m {
                let keep = match self.kind {
                    SpaceKind::Full => true,
                    SpaceKind::V1 => i % 2 == 1,
                    SpaceKind::V2 => i <= j,
                    SpaceKind::V3 => i <= j && i % 2 == j % 2,
                    SpaceKind::V4 => i <= j && i % 2 == 1 && j % 2 == 1,
                };
                if keep {
                    out.push(BasisIndex { i, j });
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.index_set().len()
    }

    pub fn is_psi(&self) -> bool {
        matches!(self.kind, SpaceKind::V2 | SpaceKind::V3 | SpaceKind::V4)
    }

    /// Expansion of a basis element into tensor products of `φ`.
    pub fn terms(&self, idx: BasisIndex) -> Vec<TensorTerm> {
        let BasisIndex { i, j } = idx;
        if !self.is_psi() {
            return vec![TensorTerm { i, j, coef: 1.0 }];
        }
        if i == j {
            vec![TensorTerm { i, j, coef: 2.0 }]
        } else {
            vec![TensorTerm { i, j, coef: 1.0 }, TensorTerm { i: j, j: i, coef: 1.0 }]
        }
    }

    /// Dense map from space coefficients to tensor coefficients `U[i-1][j-1]`
    /// (row-major, `m x m`; `m` entries for N=1).
    pub fn to_tensor(&self, coeffs: &[f64]) -> Result<Vec<f64>, Error> {
        let idx = self.index_set();
        if coeffs.len() != idx.len() {
            return Err(Error::Shape {
                expected: idx.len(),
                got: coeffs.len(),
            });
        }
        let m = self.m;
        let mut u = vec![0.0; if self.n_dim == 1 { m } else { m * m }];
        for (k, &b) in idx.iter().enumerate() {
            for t in self.terms(b) {
                let pos = if self.n_dim == 1 { t.i - 1 } else { (t.i - 1) * m + t.j - 1 };
                u[pos] += t.coef * coeffs[k];
            }
        }
        Ok(u)
    }

    /// Least-squares style restriction used by seeding: averages tensor
    /// coefficients over each basis element's terms.
    pub fn from_tensor(&self, u: &[f64]) -> Vec<f64> {
        let m = self.m;
        self.index_set()
            .into_iter()
            .map(|b| {
                let terms = self.terms(b);
                let mut acc = 0.0;
                for t in &terms {
                    let pos = if self.n_dim == 1 { t.i - 1 } else { (t.i - 1) * m + t.j - 1 };
                    acc += u[pos] / t.coef;
                }
                acc / terms.len() as f64
            })
            .collect()
    }
}
