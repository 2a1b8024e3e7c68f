//! File formats: solution files with hexadecimal coefficients, certificate
//! reports, curve CSV and a minimal SVG plot.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::arith::Interval;
use crate::basis::{SpaceKind, SymmetrySpace};
use crate::error::{Error, Result};
use crate::galerkin::{CurvePoint, GalerkinSolution};
use crate::nk::{Verdict, Verification};
use crate::problem::ProblemSpec;

/// `0x1.8p+1` style literal; round-trips every finite binary64 value.
pub fn hex_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp == 0 && frac == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, e) = if exp == 0 { (0, -1022) } else { (1, exp - 1023) };
    let mut digits = format!("{frac:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    let dot = if digits.is_empty() { String::new() } else { format!(".{digits}") };
    let es = if e >= 0 { format!("+{e}") } else { e.to_string() };
    format!("{sign}0x{lead}{dot}p{es}")
}

pub fn parse_hex_f64(s: &str) -> Result<f64> {
    let bad = || Error::Format(format!("bad hexadecimal float '{s}'"));
    let (neg, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let sign = if neg { -1.0 } else { 1.0 };
    match rest {
        "inf" => return Ok(sign * f64::INFINITY),
        "nan" => return Ok(f64::NAN),
        _ => {}
    }
    let body = rest.strip_prefix("0x").or_else(|| rest.strip_prefix("0X")).ok_or_else(bad)?;
    let (mant, exp) = body.split_once(['p', 'P']).ok_or_else(bad)?;
    let exp: i64 = exp.parse().map_err(|_| bad())?;
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() || frac.len() > 13 || int.len() > 1 {
        return Err(bad());
    }
    let lead = u64::from_str_radix(int, 16).map_err(|_| bad())?;
    let f = if frac.is_empty() {
        0
    } else {
        u64::from_str_radix(frac, 16).map_err(|_| bad())? << (4 * (13 - frac.len()))
    };
    let bits = match (lead, exp) {
        (0, _) if f == 0 => 0,
        (0, -1022) => f,
        (1, e) if (-1022..=1023).contains(&e) => (((e + 1023) as u64) << 52) | f,
        _ => return Err(bad()),
    };
    Ok(sign * f64::from_bits(bits))
}

/// Header data of a solution file beyond the solution itself.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionMeta {
    pub created: String,
    pub branch_id: String,
}

impl SolutionMeta {
    pub fn now(branch_id: &str) -> Self {
        SolutionMeta {
            created: chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string(),
            branch_id: branch_id.to_string(),
        }
    }
}

pub fn format_solution(sol: &GalerkinSolution, meta: &SolutionMeta) -> String {
    let spec = &sol.spec;
    let mut out = String::new();
    let x0 = if spec.n_dim == 1 { "0.5".to_string() } else { "0.5 0.5".to_string() };
    writeln!(out, "N = {}", spec.n_dim).unwrap();
    writeln!(out, "l = {}", spec.l).unwrap();
    writeln!(out, "p = {}", spec.p).unwrap();
    writeln!(out, "x0 = {x0}").unwrap();
    writeln!(out, "space = {}", sol.space.kind).unwrap();
    writeln!(out, "M = {}", sol.space.m).unwrap();
    writeln!(out, "created = {}", meta.created).unwrap();
    writeln!(out, "branch_id = {}", meta.branch_id).unwrap();
    writeln!(out).unwrap();
    for (idx, c) in sol.space.index_set().iter().zip(&sol.coeffs) {
        if spec.n_dim == 1 {
            writeln!(out, "{} {}", idx.i, hex_f64(*c)).unwrap();
        } else {
            writeln!(out, "{} {} {}", idx.i, idx.j, hex_f64(*c)).unwrap();
        }
    }
    out
}

pub fn parse_solution(text: &str) -> Result<(GalerkinSolution, SolutionMeta)> {
    let mut lines = text.lines();
    let mut get = std::collections::HashMap::new();
    for line in lines.by_ref() {
        let line = line.trim();
        if line.is_empty() {
            break;
        }
        if line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("header line without '=': {line}")))?;
        get.insert(k.trim().to_string(), v.trim().to_string());
    }
    let key = |k: &str| get.get(k).cloned().ok_or_else(|| Error::Format(format!("missing header key {k}")));
    let num = |k: &str| -> Result<f64> { key(k)?.parse().map_err(|_| Error::Format(format!("bad value for {k}"))) };
    let n_dim = num("N")? as usize;
    let spec = ProblemSpec::new(n_dim, num("l")?, num("p")?)?;
    let kind: SpaceKind = key("space")?.parse()?;
    let space = SymmetrySpace::new(kind, n_dim, num("M")? as usize)?;
    let index = space.index_set();
    let mut coeffs = vec![0.0; index.len()];
    let mut seen = vec![false; index.len()];
    for line in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != n_dim + 1 {
            return Err(Error::Format(format!("bad coefficient line: {line}")));
        }
        let ij: Vec<usize> = parts[..n_dim]
            .iter()
            .map(|s| s.parse().map_err(|_| Error::Format(format!("bad index in: {line}"))))
            .collect::<Result<_>>()?;
        let j = if n_dim == 2 { ij[1] } else { 0 };
        let pos = index
            .iter()
            .position(|b| b.i == ij[0] && b.j == j)
            .ok_or_else(|| Error::Format(format!("index not in space {kind}: {line}")))?;
        coeffs[pos] = parse_hex_f64(parts[n_dim])?;
        seen[pos] = true;
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(Error::Format(format!("missing coefficient for {:?}", index[k])));
    }
    let meta = SolutionMeta {
        created: key("created").unwrap_or_default(),
        branch_id: key("branch_id").unwrap_or_default(),
    };
    Ok((GalerkinSolution::new(spec, space, coeffs)?, meta))
}

/// Writes through a temporary file in the same directory and renames it.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::InvalidInput(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

pub fn save_solution(path: &Path, sol: &GalerkinSolution, meta: &SolutionMeta) -> Result<()> {
    write_atomic(path, format_solution(sol, meta).as_bytes())
}

pub fn load_solution(path: &Path) -> Result<(GalerkinSolution, SolutionMeta)> {
    parse_solution(&fs::read_to_string(path)?)
}

/// `x` rounded to `digits` significant decimal digits in the given
/// direction, in scientific notation.
pub fn sci_directed(x: f64, digits: usize, up: bool) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.*e}", digits - 1, x);
    let back: f64 = s.parse().expect("formatted float");
    let off = if up { back < x } else { back > x };
    if !off {
        return s;
    }
    let (mant, exp) = s.split_once('e').expect("scientific");
    let mut exp: i32 = exp.parse().expect("exponent");
    let neg = mant.starts_with('-');
    let mut m: i64 = mant.trim_start_matches('-').replace('.', "").parse().expect("mantissa");
    let scale = 10i64.pow(digits as u32 - 1);
    // moving away from zero for the sign that matches the direction
    if up != neg {
        m += 1;
        if m == 10 * scale {
            m = scale;
            exp += 1;
        }
    } else {
        m -= 1;
        if m < scale {
            m = 10 * scale - 1;
            exp -= 1;
        }
    }
    let ms = m.to_string();
    let body = if digits > 1 { format!("{}.{}", &ms[..1], &ms[1..]) } else { ms };
    format!("{}{body}e{exp}", if neg { "-" } else { "" })
}

/// `[lo, hi]` rounded outward to 9 significant digits.
pub fn fmt_interval(v: Interval) -> String {
    format!("[{}, {}]", sci_directed(v.lo(), 9, false), sci_directed(v.hi(), 9, true))
}

fn fmt_upper(x: f64) -> String {
    sci_directed(x, 9, true)
}

/// Certificate in `key = value` lines.
pub fn certificate_report(sol: &GalerkinSolution, v: &Verification) -> String {
    let c = &v.certificate;
    let k = &v.constants;
    let mut out = String::new();
    let mut line = |key: &str, val: String| writeln!(out, "{key:<16} = {val}").unwrap();
    line("N", sol.spec.n_dim.to_string());
    line("l", sol.spec.l.to_string());
    line("p", sol.spec.p.to_string());
    line("space", sol.space.kind.to_string());
    line("M", sol.space.m.to_string());
    line("eig_space", format!("{} M={}", v.eig_space.kind, v.eig_space.m));
    line("tau", fmt_interval(k.tau));
    line("C2", fmt_interval(k.c2));
    line("Cp1", fmt_interval(k.cp1));
    line("CM", fmt_interval(k.cm));
    line("CM_tau", fmt_interval(k.cm_tau));
    line("d", fmt_interval(k.d));
    line("wsup", format!("{}{}", fmt_upper(k.wsup.hi()), if k.wsup_converged { "" } else { " (search capped)" }));
    line("h10_norm", fmt_interval(v.norms.h10));
    line("lp1_norm", fmt_interval(v.norms.lp1));
    for (i, l) in v.corrected.lambda.iter().take(5).enumerate() {
        line(&format!("lambda_{}", i + 1), fmt_interval(*l));
    }
    line("lambda_tail", format!(">= {}", sci_directed(v.corrected.tail_lower.lo(), 9, false)));
    if let Some(inv) = &v.inverse {
        line("mu0", format!(">= {}", sci_directed(inv.mu0.lo(), 9, false)));
        line("mu0_from", format!("{:?}", inv.contributing));
    }
    line("residual", fmt_interval(c.residual));
    line("K", fmt_interval(c.k));
    line("L", fmt_interval(c.l));
    line("alpha", fmt_interval(c.alpha));
    line("beta", fmt_interval(c.beta));
    line("delta", fmt_upper(c.delta));
    line("rho", fmt_interval(c.rho));
    line("unique_radius", fmt_interval(c.unique_radius));
    line("rA", format!("<= {}", fmt_upper(c.r_a)));
    line("rR", format!("<= {}", fmt_upper(c.r_r)));
    line("peak", format!("<= {}", sci_directed(c.peak.hi(), 7, true)));
    line("peak_sample", format!("{} approx", sci_directed(c.peak.lo(), 9, false)));
    if sol.grad_norm.is_finite() {
        line("newton_grad", format!("{:.3e} approx", sol.grad_norm));
    }
    let verdict = match &c.verdict {
        Verdict::Proven => "Proven".to_string(),
        Verdict::Failed(r) => format!("Failed({r})"),
    };
    line("verdict", verdict);
    out
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CsvRow {
    l: f64,
    branch_id: String,
    h10_norm: f64,
    peak: f64,
    newton_iters: usize,
    converged: bool,
}

pub fn curve_csv(points: &[CurvePoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in points {
        w.serialize(CsvRow {
            l: p.l,
            branch_id: p.branch_id.clone(),
            h10_norm: p.h10_norm,
            peak: p.peak,
            newton_iters: p.newton_iters,
            converged: p.converged,
        })
        .map_err(|e| Error::Format(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn parse_curve_csv(text: &str) -> Result<Vec<CurvePoint>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize::<CsvRow>()
        .map(|row| {
            let row = row.map_err(|e| Error::Format(e.to_string()))?;
            Ok(CurvePoint {
                l: row.l,
                branch_id: row.branch_id,
                h10_norm: row.h10_norm,
                peak: row.peak,
                newton_iters: row.newton_iters,
                converged: row.converged,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotQuantity {
    Peak,
    Norm,
}

/// One polyline per branch over converged points, with plain axes.
pub fn curve_svg(points: &[CurvePoint], what: PlotQuantity) -> String {
    let (w, h, pad) = (640.0, 420.0, 50.0);
    let val = |p: &CurvePoint| match what {
        PlotQuantity::Peak => p.peak,
        PlotQuantity::Norm => p.h10_norm,
    };
    let ok: Vec<&CurvePoint> = points.iter().filter(|p| p.converged && val(p).is_finite()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in &ok {
        x0 = x0.min(p.l);
        x1 = x1.max(p.l);
        y0 = y0.min(val(p));
        y1 = y1.max(val(p));
    }
    if ok.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);
    let label = match what {
        PlotQuantity::Peak => "peak",
        PlotQuantity::Norm => "H1_0 norm",
    };
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<path d="M{pad} {t} V{b} H{r}" fill="none" stroke="black"/>"#,
        t = pad,
        b = h - pad,
        r = w - pad
    )
    .unwrap();
    writeln!(s, r#"<text x="{}" y="{}" font-size="12">{x0:.3}</text>"#, pad, h - pad + 16.0).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{x1:.3}</text>"#, w - pad, h - pad + 16.0).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{y0:.4}</text>"#, pad - 4.0, h - pad).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{y1:.4}</text>"#, pad - 4.0, pad + 4.0).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">l</text>"#, w / 2.0, h - 12.0).unwrap();
    writeln!(s, r#"<text x="12" y="{}" font-size="12">{label}</text>"#, pad - 16.0).unwrap();
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
    let mut branches: Vec<&str> = Vec::new();
    for p in &ok {
        if !branches.contains(&p.branch_id.as_str()) {
            branches.push(&p.branch_id);
        }
    }
    for (k, b) in branches.iter().enumerate() {
        let pts: Vec<String> = ok
            .iter()
            .filter(|p| p.branch_id == *b)
            .map(|p| format!("{:.2},{:.2}", sx(p.l), sy(val(p))))
            .collect();
        let color = colors[k % colors.len()];
        writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" ")).unwrap();
        writeln!(s, r#"<text x="{}" y="{}" font-size="12" fill="{color}">{b}</text>"#, w - pad - 100.0, pad + 14.0 * k as f64).unwrap();
    }
    s.push_str("</svg>\n");
    s
}
