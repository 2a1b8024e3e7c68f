//! Named seed layouts for the branches of the solution gallery.

use super::seed::Peak;
use crate::error::{Error, Result};
use crate::problem::ProblemSpec;

pub const PRESET_NAMES: &[&str] = &["center", "off-center", "corner", "edge2", "diagonal2", "corners3", "corners4"];

/// Rough maximum of a solution at exponent `l`; seeds only need to land in
/// the basin of attraction.
fn amplitude(spec: &ProblemSpec) -> f64 {
    let l = spec.l;
    if spec.n_dim == 1 {
        4.0 + 10.0 * l + 1.5 * l * l
    } else {
        6.0 + 8.0 * l + 2.0 * l * l
    }
}

/// Peaks for a named layout. Off-center layouts put peaks at distance 0.2
/// from the walls, where they sit for moderate `l`.
pub fn preset_peaks(name: &str, spec: &ProblemSpec) -> Result<Vec<Peak>> {
    let a = amplitude(spec);
    let (c, w) = (0.2, 0.2);
    let near = |x: f64, y: f64| Peak::new([x, y], a).with_width(w);
    let peaks = match (name, spec.n_dim) {
        ("center", _) => vec![Peak::new([0.5, 0.5], a)],
        ("off-center", 1) => vec![Peak::new([0.25, 0.5], a)],
        ("off-center", 2) => vec![near(0.5, c)],
        ("corner", 2) => vec![near(c, c)],
        ("edge2", 2) => vec![near(c, c), near(1.0 - c, c)],
        ("diagonal2", 2) => vec![near(c, c), near(1.0 - c, 1.0 - c)],
        ("corners3", 2) => vec![near(c, c), near(1.0 - c, c), near(c, 1.0 - c)],
        ("corners4", 2) => vec![near(c, c), near(1.0 - c, c), near(c, 1.0 - c), near(1.0 - c, 1.0 - c)],
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown preset '{name}' for N={} (known: {})",
                spec.n_dim,
                PRESET_NAMES.join(", ")
            )))
        }
    };
    Ok(peaks)
}

/// Parses `x[,y]:amplitude[:width]` items separated by `;`.
pub fn parse_peaks(text: &str, n_dim: usize) -> Result<Vec<Peak>> {
    let bad = || Error::InvalidInput(format!("cannot parse peak list '{text}'"));
    let mut out = Vec::new();
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(bad());
        }
        let coords: Vec<f64> = parts[0]
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        if coords.len() != n_dim {
            return Err(bad());
        }
        let amp: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let mut p = Peak::new([coords[0], *coords.get(1).unwrap_or(&0.5)], amp);
        if let Some(w) = parts.get(2) {
            p = p.with_width(w.trim().parse().map_err(|_| bad())?);
        }
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_lists() {
        let p = parse_peaks("0.3,0.4:5; 0.7,0.7:2:0.1", 2).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[1].width, 0.1);
        assert!(parse_peaks("0.3:5", 2).is_err());
        assert_eq!(parse_peaks("0.3:5", 1).unwrap()[0].center, [0.3, 0.5]);
        let spec = ProblemSpec::new(1, 0.0, 3.0).unwrap();
        assert!(preset_peaks("corners4", &spec).is_err());
        assert_eq!(preset_peaks("center", &spec).unwrap().len(), 1);
    }
}
