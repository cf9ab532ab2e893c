use std::f64::consts::PI;

use super::chebyshev::ChebKind;

/// Default point count for oracle integrals.
pub const DEFAULT_POINTS: usize = 128;

/// Gauss rule on (-1, 1) for one of the Chebyshev weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    /// Strictly increasing.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: ChebKind,
}

impl QuadratureRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `m`-point Gauss rule exact through degree `2m - 1` against
/// `1/sqrt(1-u^2)` (first), `sqrt(1-u^2)` (second) or `sqrt((1+u)/(1-u))` (third).
pub fn gauss_chebyshev(kind: ChebKind, m: usize) -> QuadratureRule {
    assert!(m >= 1, "quadrature needs at least one point");
    let mf = m as f64;
    let mut pts: Vec<(f64, f64)> = (1..=m)
        .map(|k| {
            let kf = k as f64;
            match kind {
                ChebKind::First => (((2.0 * kf - 1.0) * PI / (2.0 * mf)).cos(), PI / mf),
                ChebKind::Second => {
                    let th = kf * PI / (mf + 1.0);
                    (th.cos(), PI / (mf + 1.0) * th.sin().powi(2))
                }
                ChebKind::Third => {
                    let th = (2.0 * kf - 1.0) * PI / (2.0 * mf + 1.0);
                    let x = th.cos();
                    (x, 2.0 * PI / (2.0 * mf + 1.0) * (1.0 + x))
                }
            }
        })
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    QuadratureRule { nodes: pts.iter().map(|p| p.0).collect(), weights: pts.iter().map(|p| p.1).collect(), kind }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on `P_m`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "quadrature needs at least one point");
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { x } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = mf * (x * pm - pm1) / (x * x - 1.0);
            let dx = pm / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}
