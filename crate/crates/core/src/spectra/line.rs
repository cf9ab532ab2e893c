use std::f64::consts::PI;

use super::measure::check_lambda;
use super::polynomials::{cheb_argument, line_first, line_second};
use crate::error::Result;
use crate::specfun::{gauss_chebyshev, ChebKind, DEFAULT_POINTS};

/// 2x2 spectral matrix of the scalar generator on the integer line:
/// `[[1, u], [u, 1]] / (pi sqrt((x - sigma_-)(sigma_+ - x)))` with
/// `u = (1 - x) / (2 lambda)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMatrix2 {
    pub lambda: f64,
}

pub fn spectral_matrix_line(lambda: f64) -> Result<SpectralMatrix2> {
    check_lambda(lambda)?;
    Ok(SpectralMatrix2 { lambda })
}

impl SpectralMatrix2 {
    pub fn support(&self) -> (f64, f64) {
        (1.0 - 2.0 * self.lambda.abs(), 1.0 + 2.0 * self.lambda.abs())
    }

    fn base(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(x > lo && x < hi) {
            return 0.0;
        }
        1.0 / (PI * ((x - lo) * (hi - x)).sqrt())
    }

    pub fn psi11(&self, x: f64) -> f64 {
        self.base(x)
    }

    pub fn psi12(&self, x: f64) -> f64 {
        self.base(x) * cheb_argument(self.lambda, x)
    }

    pub fn psi22(&self, x: f64) -> f64 {
        self.base(x)
    }

    /// `[[psi11, psi12], [psi12, psi22]]` at `x`.
    pub fn at(&self, x: f64) -> [[f64; 2]; 2] {
        let (a, b) = (self.psi11(x), self.psi12(x));
        [[a, b], [b, a]]
    }

    /// `sum_{a,b} int f(x) Q^a_n psi^{ab} Q^b_m dx`.
    pub fn pair_integral(&self, n: i64, m: i64, f: impl Fn(f64) -> f64) -> f64 {
        self.pair_integral_with(DEFAULT_POINTS, n, m, f)
    }

    pub fn pair_integral_with(&self, points: usize, n: i64, m: i64, f: impl Fn(f64) -> f64) -> f64 {
        let rule = gauss_chebyshev(ChebKind::First, points);
        let s: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&u, &w)| {
                let x = 1.0 - 2.0 * self.lambda * u;
                let (a1, a2) = (line_first(n, u), line_second(n, u));
                let (b1, b2) = (line_first(m, u), line_second(m, u));
                w * f(x) * (a1 * b1 + u * (a1 * b2 + a2 * b1) + a2 * b2)
            })
            .sum();
        s / PI
    }
}
