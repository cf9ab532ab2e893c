use crate::channels::{bloch_affine_matrix, BasisOrigin, EigenChannelBasis, QubitDensity};
use crate::error::Result;
use crate::generators::Geometry;
use crate::kernels::{kernels_for, site_block_vec, GoalState};
use crate::linalg::vec;

/// Below this `sqrt(a^2 + b^2 + c^2)` every Bloch point is optimal.
pub const DEGENERATE_TOL: f64 = 1e-14;

/// Extremal initial densities for the state probability `d + aX + bY + cZ`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalStates {
    pub rho_plus: QubitDensity,
    pub rho_minus: QubitDensity,
    pub value_plus: f64,
    pub value_minus: f64,
    /// `(a, b, c, d)`.
    pub coefficients: [f64; 4],
    /// `a = b = c = 0`; both states are the center of the ball.
    pub degenerate: bool,
    /// `PqLabeled` for the closed form, `Numeric` when the coefficients
    /// were extracted by evaluating the affine map.
    pub origin: BasisOrigin,
}

/// Coefficients `(a, b, c, d)` of the affine map from Bloch coordinates of
/// the initial density to the state probability, read off by evaluating
/// at the center and the three unit directions.
pub fn affine_coefficients(
    basis: &EigenChannelBasis,
    g: &Geometry,
    i: i64,
    j: i64,
    t: f64,
    goal: &GoalState,
) -> Result<[f64; 4]> {
    let f = |x: f64, y: f64, z: f64| -> Result<f64> {
        let m = bloch_affine_matrix(x, y, z);
        let block = site_block_vec(basis, g, &vec(&m), j, i, t)?;
        Ok((&goal.gamma * &block).trace().re)
    };
    let d = f(0.0, 0.0, 0.0)?;
    Ok([f(1.0, 0.0, 0.0)? - d, f(0.0, 1.0, 0.0)? - d, f(0.0, 0.0, 1.0)? - d, d])
}

/// Closed-form PQ coefficients with eigenvalues in the labeled order
/// `1/2, p-1/2, (q+r)/2, (q-r)/2`.
fn pq_coefficients(
    basis: &EigenChannelBasis,
    g: &Geometry,
    i: i64,
    j: i64,
    t: f64,
    goal: &GoalState,
) -> Result<[f64; 4]> {
    let p = kernels_for(&basis.lambdas, g, i, j, t)?;
    let coh = goal.coherence();
    Ok([(goal.psi[0].norm_sqr() - 0.5) * p[1], coh.re * p[2], coh.im * p[3], 0.5 * p[0]])
}

/// Maximizes and minimizes the probability of finding the walker at `i` in
/// the goal state over initial densities at `j`.
///
/// The objective is affine in the Bloch vector, so the extrema sit at
/// `+-(a, b, c)/|(a, b, c)|` with values `d +- |(a, b, c)|`.
pub fn optimal_initial_state(
    basis: &EigenChannelBasis,
    g: &Geometry,
    i: i64,
    j: i64,
    t: f64,
    goal: &GoalState,
) -> Result<OptimalStates> {
    let coefficients = match basis.origin {
        BasisOrigin::PqLabeled => pq_coefficients(basis, g, i, j, t, goal)?,
        BasisOrigin::Numeric => affine_coefficients(basis, g, i, j, t, goal)?,
    };
    let [a, b, c, d] = coefficients;
    let norm = (a * a + b * b + c * c).sqrt();
    let origin = basis.origin;
    if norm <= DEGENERATE_TOL {
        let center = QubitDensity::maximally_mixed();
        return Ok(OptimalStates {
            rho_plus: center.clone(),
            rho_minus: center,
            value_plus: d,
            value_minus: d,
            coefficients,
            degenerate: true,
            origin,
        });
    }
    let (x, y, z) = (a / norm, b / norm, c / norm);
    Ok(OptimalStates {
        rho_plus: QubitDensity::from_bloch(x, y, z)?,
        rho_minus: QubitDensity::from_bloch(-x, -y, -z)?,
        value_plus: d + norm,
        value_minus: d - norm,
        coefficients,
        degenerate: false,
        origin,
    })
}

/// Radical inverse of `index` in `base`.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut out = 0.0;
    while index > 0 {
        f /= base as f64;
        out += f * (index % base) as f64;
        index /= base;
    }
    out
}

/// `n` quasi-uniform points in the unit Bloch ball from the Halton sequence
/// in bases 2, 3, 5.
pub fn bloch_ball_samples(n: usize) -> Vec<[f64; 3]> {
    (1..=n as u64)
        .map(|k| {
            let rad = halton(k, 2).cbrt();
            let cos_t = 1.0 - 2.0 * halton(k, 3);
            let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
            let phi = 2.0 * std::f64::consts::PI * halton(k, 5);
            [rad * sin_t * phi.cos(), rad * sin_t * phi.sin(), rad * cos_t]
        })
        .collect()
}
