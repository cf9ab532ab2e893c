use super::geometry::Geometry;
use crate::error::{Error, Result};
use crate::specfun::bessel_i_scaled;

/// Mass allowed within five sites of a truncation edge.
pub const EDGE_MASS_TOL: f64 = 1e-10;

/// `sum_{|k| >= m} e^{-t} I_k(t)`, the two-sided tail of the `lambda = 1/2`
/// line kernel.
pub fn line_tail(m: usize, t: f64) -> f64 {
    if t == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let mut tail = 0.0;
    let mut k = m as i64;
    loop {
        let v = bessel_i_scaled(k, t).expect("t >= 0");
        tail += if k == 0 { v } else { 2.0 * v };
        if v < 1e-30 || k > m as i64 + 10_000 {
            break;
        }
        k += 1;
    }
    tail
}

/// Smallest distance `d` to a truncation edge such that the mass within five
/// sites of the edge stays below [`EDGE_MASS_TOL`] up to time `t`.
pub fn required_margin(t: f64) -> usize {
    let mut d = 5;
    while line_tail(d - 5, t) >= EDGE_MASS_TOL {
        d += 1;
    }
    d
}

/// Distance from `site` to the truncation edge of the window.
fn edge_distance(g: &Geometry, truncation: usize, site: i64) -> Option<usize> {
    let (lo, hi) = g.window(truncation);
    match g {
        Geometry::Line => Some((hi - site).min(site - lo).max(0) as usize),
        Geometry::HalfLine(_) => Some((hi - site).max(0) as usize),
        Geometry::Segment { .. } => None,
    }
}

/// Errors unless the window keeps every site in `sites` at least
/// [`required_margin`] away from the truncation edge.
pub fn check_window(g: &Geometry, truncation: usize, sites: &[i64], t: f64) -> Result<()> {
    if g.is_finite() {
        return Ok(());
    }
    let need = required_margin(t);
    for &s in sites {
        match edge_distance(g, truncation, s) {
            Some(d) if d >= need => {}
            Some(d) => {
                return Err(Error::WindowInsufficient(format!(
                    "site {s} is {d} sites from the edge of the {g} window (truncation {truncation}); \
                     time {t} needs {need}"
                )))
            }
            None => {}
        }
    }
    Ok(())
}

/// Smallest truncation satisfying [`check_window`] for the given sites.
pub fn default_truncation(g: &Geometry, sites: &[i64], t: f64) -> usize {
    let need = required_margin(t) as i64;
    let far = sites.iter().map(|s| s.abs()).max().unwrap_or(0);
    match g {
        Geometry::Line => (far + need).max(2) as usize,
        Geometry::HalfLine(_) => (far + need + 1).max(2) as usize,
        Geometry::Segment { sites, .. } => *sites,
    }
}
