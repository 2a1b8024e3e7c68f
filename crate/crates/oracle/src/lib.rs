//! Slow reference computations for cross-checking `henon-core`.
//!
//! Everything here is built on different arithmetic from the production
//! path: exact monomial polynomials over `BigRational`, and multiprecision
//! binary floats from `astro-float` for transcendental constants and
//! eigenvalues.

use std::collections::BTreeMap;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    UnknownConstant(String),
    BadParameter(String),
    NotDefinite,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::UnknownConstant(n) => write!(f, "unknown constant {n}"),
            OracleError::BadParameter(m) => write!(f, "bad parameter: {m}"),
            OracleError::NotDefinite => write!(f, "matrix is not positive definite"),
        }
    }
}

impl std::error::Error for OracleError {}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial in `n_vars` variables with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BigRationalPoly {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl BigRationalPoly {
    pub fn zero(n_vars: usize) -> Self {
        BigRationalPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(vec![0; n_vars], c);
        p
    }

    /// The coordinate `x_k`.
    pub fn var(n_vars: usize, k: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[k] = 1;
        let mut p = Self::zero(n_vars);
        p.add_term(e, BigRational::one());
        p
    }

    /// A univariate polynomial `Σ c_k t^k` placed in variable `var`.
    pub fn univariate(n_vars: usize, var: usize, coeffs: &[BigRational]) -> Self {
        let mut p = Self::zero(n_vars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n_vars];
            e[var] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        assert_eq!(exps.len(), self.n_vars);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.n_vars, BigRational::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut f = e.clone();
                f[var] -= 1;
                out.add_term(f, c * BigRational::from_integer(BigInt::from(e[var])));
            }
        }
        out
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }
}

/// Exact `∫_{[0,1]^n} p`.
pub fn oracle_integrate(p: &BigRationalPoly) -> BigRational {
    let mut acc = BigRational::zero();
    for (e, c) in &p.terms {
        let den = e.iter().fold(BigInt::one(), |d, &k| d * BigInt::from(k + 1));
        acc += c / BigRational::from_integer(den);
    }
    acc
}

/// Shifted Legendre polynomial on `[0,1]` by Rodrigues' formula,
/// `(1/n!) dⁿ/dxⁿ (x² - x)ⁿ`, in monomial coefficients.
pub fn shifted_legendre(n: usize) -> Vec<BigRational> {
    let x = BigRationalPoly::var(1, 0);
    let mut p = x.mul(&x).sub(&x).pow(n as u32);
    let mut fact = BigInt::one();
    for k in 1..=n {
        p = p.derivative(0);
        fact *= BigInt::from(k);
    }
    let inv = BigRational::new(BigInt::one(), fact);
    (0..=n).map(|k| p.coeff(&[k as u32]) * &inv).collect()
}

/// `φ_n(x) = x(1-x) Q_n'(x) / (n(n+1))` in variable `var` of `n_vars`.
pub fn oracle_phi(n_vars: usize, var: usize, n: usize) -> BigRationalPoly {
    let qn = BigRationalPoly::univariate(n_vars, var, &shifted_legendre(n));
    let x = BigRationalPoly::var(n_vars, var);
    let bubble = x.sub(&x.mul(&x));
    bubble
        .mul(&qn.derivative(var))
        .scale(&q(1, (n * (n + 1)) as i64))
}

/// Exact rational value of a decimal literal such as `-1.25e-3`.
pub fn decimal_to_rational(s: &str) -> Result<BigRational, OracleError> {
    let bad = || OracleError::BadParameter(format!("not a decimal number: {s}"));
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let e = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(n);
    if e >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, e as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-e) as usize));
    }
    Ok(if neg { -r } else { r })
}

/// Exact rational value of a finite binary64 number.
pub fn f64_to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Multiprecision context: precision in bits plus the constants cache.
pub struct Mp {
    p: usize,
    rm: RoundingMode,
    cc: Consts,
}

impl Mp {
    pub fn with_digits(digits: usize) -> Self {
        Mp {
            p: (digits as f64 * 3.33) as usize + 96,
            rm: RoundingMode::ToEven,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn rat(&mut self, r: &BigRational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, self.p, self.rm, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, self.p, self.rm, &mut self.cc);
        n.div(&d, self.p, self.rm)
    }

    pub fn int(&self, k: i64) -> BigFloat {
        BigFloat::from_i64(k, self.p)
    }

    pub fn f64(&mut self, x: f64) -> BigFloat {
        self.rat(&f64_to_rational(x))
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, self.rm)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, self.rm)
    }
    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, self.rm)
    }
    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, self.rm)
    }
    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, self.rm)
    }
    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, self.rm)
    }
    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, self.rm, &mut self.cc)
    }
    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, self.rm, &mut self.cc)
    }
    /// `a^b` for `a > 0`.
    pub fn powf(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        let l = self.ln(a);
        let t = self.mul(&l, b);
        self.exp(&t)
    }

    /// `Γ(x)` for `x > 0`: shift to `z >= 50`, then Stirling's series with
    /// exact Bernoulli numbers.
    pub fn gamma(&mut self, x: &BigFloat) -> BigFloat {
        let one = self.int(1);
        let fifty = self.int(50);
        let mut z = x.clone();
        let mut prod = one.clone();
        while z.cmp(&fifty).expect("finite") < 0 {
            prod = self.mul(&prod, &z);
            z = self.add(&z, &one);
        }
        let half = self.rat(&q(1, 2));
        let two_pi = {
            let pi = self.pi();
            self.add(&pi, &pi)
        };
        let lz = self.ln(&z);
        let mut s = self.mul(&self.sub(&z, &half), &lz);
        s = self.sub(&s, &z);
        let l2p = self.ln(&two_pi);
        s = self.add(&s, &self.mul(&half, &l2p));
        let b = bernoulli_even(40);
        let z2 = self.mul(&z, &z);
        let mut zp = z.clone();
        for (j, bj) in b.iter().enumerate().skip(1) {
            let c = bj / BigRational::from_integer(BigInt::from(2 * j * (2 * j - 1)));
            let cr = self.rat(&c);
            let t = self.div(&cr, &zp);
            s = self.add(&s, &t);
            zp = self.mul(&zp, &z2);
        }
        let g = self.exp(&s);
        self.div(&g, &prod)
    }

    /// `digits` significant decimal digits in `d.ddd…e±x` form.
    pub fn to_decimal(&mut self, x: &BigFloat, digits: usize) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let s = x.format(Radix::Dec, self.rm, &mut self.cc).expect("format");
        let (mant, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let neg = mant.starts_with('-');
        let ds: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
        let mut ds: String = ds.chars().take(digits).collect();
        while ds.len() < digits {
            ds.push('0');
        }
        let exp: i64 = exp.trim_start_matches('+').parse().expect("exponent");
        format!("{}{}.{}e{}", if neg { "-" } else { "" }, &ds[..1], &ds[1..], exp)
    }
}

/// `B_0, B_2, …, B_{2n}` exactly.
pub fn bernoulli_even(n: usize) -> Vec<BigRational> {
    let m = 2 * n;
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=m {
        // Σ_{j<k} C(k+1, j) B_j + (k+1) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    b.into_iter().step_by(2).collect()
}

/// Parameters for [`oracle_constant`].
#[derive(Clone, Debug, PartialEq)]
pub struct ConstParams {
    pub n_dim: usize,
    /// Embedding exponent (the `p` of `L^p`).
    pub p: f64,
    pub tau: f64,
    pub m: usize,
    pub l: f64,
}

impl Default for ConstParams {
    fn default() -> Self {
        ConstParams {
            n_dim: 1,
            p: 4.0,
            tau: 0.0,
            m: 40,
            l: 0.0,
        }
    }
}

/// 50-digit decimal value of a named constant:
/// `C2`, `Cp1D`, `CpND`, `CM`, `CMtau`, `d`.
pub fn oracle_constant(name: &str, params: &ConstParams) -> Result<String, OracleError> {
    let mut mp = Mp::with_digits(70);
    let v = constant_value(&mut mp, name, params)?;
    Ok(mp.to_decimal(&v, 50))
}

fn constant_value(mp: &mut Mp, name: &str, c: &ConstParams) -> Result<BigFloat, OracleError> {
    let one = mp.int(1);
    let tau = mp.f64(c.tau);
    match name {
        "C2" => {
            let pi = mp.pi();
            let n = mp.int(c.n_dim as i64);
            let lam = mp.add(&mp.mul(&n, &mp.mul(&pi, &pi)), &tau);
            Ok(mp.div(&one, &mp.sqrt(&lam)))
        }
        "Cp1D" => {
            if !(c.p > 2.0) {
                return Err(OracleError::BadParameter("Cp1D needs p > 2".into()));
            }
            let pi = mp.pi();
            let rho = mp.mul(&pi, &pi);
            let p = mp.f64(c.p);
            let eps = mp.div(&mp.int(2), &p);
            let a = mp.sub(&one, &eps);
            let b = mp.add(&one, &eps);
            let four = mp.int(4);
            let thr = mp.div(&mp.mul(&tau, &a), &b);
            if rho.cmp(&thr).expect("finite") <= 0 {
                let t1 = mp.powf(&a, &mp.div(&a, &four));
                let t2 = mp.powf(&b, &mp.div(&b, &four));
                let t3 = mp.powf(&tau, &mp.div(&b, &four).neg());
                let s2 = mp.sqrt(&mp.int(2));
                Ok(mp.div(&mp.mul(&mp.mul(&t1, &t2), &t3), &s2))
            } else {
                let num = mp.powf(&rho, &mp.div(&a, &four));
                Ok(mp.div(&num, &mp.sqrt(&mp.add(&rho, &tau))))
            }
        }
        "CpND" => {
            let n = mp.int(c.n_dim as i64);
            let p = mp.f64(c.p);
            let qq = mp.div(&mp.mul(&n, &p), &mp.add(&n, &p));
            if !(qq.cmp(&one).expect("finite") > 0 && qq.cmp(&n).expect("finite") < 0) {
                return Err(OracleError::BadParameter("q outside (1, N)".into()));
            }
            let pi = mp.pi();
            let inv_q = mp.div(&one, &qq);
            let t1 = mp.div(&one, &mp.sqrt(&pi));
            let t2 = mp.powf(&n, &inv_q.neg());
            let t3 = mp.powf(
                &mp.div(&mp.sub(&qq, &one), &mp.sub(&n, &qq)),
                &mp.sub(&one, &inv_q),
            );
            let half_n = mp.div(&n, &mp.int(2));
            let g1 = mp.gamma(&mp.add(&one, &half_n));
            let g2 = mp.gamma(&n);
            let n_over_q = mp.mul(&n, &inv_q);
            let g3 = mp.gamma(&n_over_q);
            let g4 = mp.gamma(&mp.sub(&mp.add(&one, &n), &n_over_q));
            let ratio = mp.div(&mp.mul(&g1, &g2), &mp.mul(&g3, &g4));
            let t4 = mp.powf(&ratio, &mp.div(&one, &n));
            Ok(mp.mul(&mp.mul(&t1, &t2), &mp.mul(&t3, &t4)))
        }
        "CM" | "CMtau" => {
            if c.m < 2 {
                return Err(OracleError::BadParameter("M must be at least 2".into()));
            }
            let k = |mp: &mut Mp, a: i64| mp.int(2 * c.m as i64 + a);
            let (k1, k3, k5, k7, k9, k11) = (k(mp, 1), k(mp, 3), k(mp, 5), k(mp, 7), k(mp, 9), k(mp, 11));
            let two = mp.int(2);
            let four = mp.int(4);
            let e1 = mp.div(&one, &mp.mul(&mp.mul(&k1, &k5), &two));
            let e2 = mp.div(&one, &mp.mul(&mp.mul(&k5, &mp.sqrt(&mp.mul(&k3, &k7))), &four));
            let e3 = mp.div(&one, &mp.mul(&mp.mul(&k5, &k9), &two));
            let e4 = mp.div(&one, &mp.mul(&mp.mul(&k9, &mp.sqrt(&mp.mul(&k7, &k11))), &four));
            let a = mp.add(&e1, &e2);
            let b = mp.add(&mp.add(&e2, &e3), &e4);
            let m = if a.cmp(&b).expect("finite") >= 0 { a } else { b };
            let cm = mp.sqrt(&m);
            if name == "CM" {
                Ok(cm)
            } else {
                let f = mp.sqrt(&mp.add(&one, &mp.mul(&tau, &mp.mul(&cm, &cm))));
                Ok(mp.mul(&cm, &f))
            }
        }
        "d" => {
            if c.l == 0.0 {
                return Ok(one);
            }
            let half = mp.rat(&q(1, 2));
            let base = if c.n_dim == 1 { half } else { mp.sqrt(&half) };
            let l = mp.f64(c.l);
            Ok(mp.powf(&base, &l))
        }
        other => Err(OracleError::UnknownConstant(other.to_string())),
    }
}

/// Eigenvalues of `A x = λ B x` (ascending) for exact symmetric `A` and
/// positive definite `B`, as decimal strings with `digits` significant digits.
///
/// Reduces to `L⁻¹ A L⁻ᵀ` with the Cholesky factor of `B` and runs cyclic
/// Jacobi rotations in multiprecision.
pub fn oracle_eigs(a: &[Vec<BigRational>], b: &[Vec<BigRational>], digits: usize) -> Result<Vec<String>, OracleError> {
    let n = a.len();
    if b.len() != n || a.iter().chain(b).any(|r| r.len() != n) {
        return Err(OracleError::BadParameter("matrices must be square and of equal size".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if a[i][j] != a[j][i] || b[i][j] != b[j][i] {
                return Err(OracleError::BadParameter("matrices must be symmetric".into()));
            }
        }
    }
    let mut mp = Mp::with_digits(digits + 20);
    let am: Vec<Vec<BigFloat>> = a.iter().map(|r| r.iter().map(|v| mp.rat(v)).collect()).collect();
    let bm: Vec<Vec<BigFloat>> = b.iter().map(|r| r.iter().map(|v| mp.rat(v)).collect()).collect();
    let zero = mp.int(0);
    // Cholesky B = L Lᵀ
    let mut l = vec![vec![zero.clone(); n]; n];
    for j in 0..n {
        let mut s = bm[j][j].clone();
        for k in 0..j {
            s = mp.sub(&s, &mp.mul(&l[j][k], &l[j][k]));
        }
        if !s.is_positive() {
            return Err(OracleError::NotDefinite);
        }
        l[j][j] = mp.sqrt(&s);
        for i in j + 1..n {
            let mut s = bm[i][j].clone();
            for k in 0..j {
                s = mp.sub(&s, &mp.mul(&l[i][k], &l[j][k]));
            }
            l[i][j] = mp.div(&s, &l[j][j]);
        }
    }
    // Y = L⁻¹ A, then C = L⁻¹ Yᵀ = L⁻¹ A L⁻ᵀ
    let solve_lower = |mp: &Mp, rhs: &Vec<Vec<BigFloat>>| -> Vec<Vec<BigFloat>> {
        let mut y = rhs.clone();
        for col in 0..n {
            for i in 0..n {
                let mut s = rhs[i][col].clone();
                for k in 0..i {
                    s = mp.sub(&s, &mp.mul(&l[i][k], &y[k][col]));
                }
                y[i][col] = mp.div(&s, &l[i][i]);
            }
        }
        y
    };
    let y = solve_lower(&mp, &am);
    let yt: Vec<Vec<BigFloat>> = (0..n).map(|i| (0..n).map(|j| y[j][i].clone()).collect()).collect();
    let mut c = solve_lower(&mp, &yt);
    for i in 0..n {
        for j in i + 1..n {
            let avg = mp.div(&mp.add(&c[i][j], &c[j][i]), &mp.int(2));
            c[i][j] = avg.clone();
            c[j][i] = avg;
        }
    }
    let tol = mp.rat(&BigRational::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(10), digits + 15),
    ));
    for _sweep in 0..100 {
        let mut off = zero.clone();
        for i in 0..n {
            for j in i + 1..n {
                off = mp.add(&off, &mp.mul(&c[i][j], &c[i][j]));
            }
        }
        let scale = (0..n).fold(zero.clone(), |s, i| mp.add(&s, &mp.mul(&c[i][i], &c[i][i])));
        if mp.sqrt(&off).cmp(&mp.mul(&tol, &mp.add(&mp.sqrt(&scale), &mp.int(1)))).expect("finite") <= 0 {
            break;
        }
        for pidx in 0..n {
            for qidx in pidx + 1..n {
                if c[pidx][qidx].is_zero() {
                    continue;
                }
                // classical Jacobi rotation annihilating c[p][q]
                let theta = mp.div(
                    &mp.sub(&c[qidx][qidx], &c[pidx][pidx]),
                    &mp.mul(&mp.int(2), &c[pidx][qidx]),
                );
                let one = mp.int(1);
                let root = mp.sqrt(&mp.add(&mp.mul(&theta, &theta), &one));
                let t = if theta.is_negative() {
                    mp.div(&one, &mp.sub(&theta, &root))
                } else {
                    mp.div(&one, &mp.add(&theta, &root))
                };
                let cs = mp.div(&one, &mp.sqrt(&mp.add(&mp.mul(&t, &t), &one)));
                let sn = mp.mul(&t, &cs);
                for k in 0..n {
                    let ckp = c[k][pidx].clone();
                    let ckq = c[k][qidx].clone();
                    c[k][pidx] = mp.sub(&mp.mul(&cs, &ckp), &mp.mul(&sn, &ckq));
                    c[k][qidx] = mp.add(&mp.mul(&sn, &ckp), &mp.mul(&cs, &ckq));
                }
                for k in 0..n {
                    let cpk = c[pidx][k].clone();
                    let cqk = c[qidx][k].clone();
                    c[pidx][k] = mp.sub(&mp.mul(&cs, &cpk), &mp.mul(&sn, &cqk));
                    c[qidx][k] = mp.add(&mp.mul(&sn, &cpk), &mp.mul(&cs, &cqk));
                }
                c[pidx][qidx] = zero.clone();
                c[qidx][pidx] = zero.clone();
            }
        }
    }
    let mut ev: Vec<BigFloat> = (0..n).map(|i| c[i][i].clone()).collect();
    ev.sort_by(|x, y| x.cmp(y).expect("finite").cmp(&0));
    Ok(ev.iter().map(|v| mp.to_decimal(v, digits)).collect())
}

/// True when `[lo, hi]` contains the decimal value `s` up to a relative
/// slack of `10^-45` for the truncation of the oracle output.
pub fn interval_contains(lo: f64, hi: f64, s: &str) -> bool {
    let v = decimal_to_rational(s).expect("oracle output is decimal");
    let slack = v.abs() * q(1, 1) / BigRational::from_integer(num_traits::pow(BigInt::from(10), 45));
    f64_to_rational(lo) <= &v + &slack && f64_to_rational(hi) >= &v - &slack
}

/// `f64` nearest to a rational, for diagnostics.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
