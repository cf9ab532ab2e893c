use crate::error::{Error, Result};
use crate::generators::{Boundary, Geometry};
use crate::specfun::bessel_i_scaled_signed;
use crate::spectra::scalar_measure;

/// Largest `|lambda|` a normalized channel can produce, with slack for rounding.
pub const LAMBDA_BOUND: f64 = 0.5 + 1e-12;

/// Transition `j -> i` over time `t` for the scalar generator with
/// off-diagonal `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelRequest {
    pub geometry: Geometry,
    pub lambda: f64,
    pub i: i64,
    pub j: i64,
    pub t: f64,
}

impl KernelRequest {
    pub fn new(geometry: Geometry, lambda: f64, i: i64, j: i64, t: f64) -> Result<Self> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Validation(format!("time must be finite and nonnegative, got {t}")));
        }
        if !lambda.is_finite() || lambda.abs() > LAMBDA_BOUND {
            return Err(Error::Validation(format!("need |lambda| <= 1/2, got {lambda}")));
        }
        geometry.check_site(i)?;
        geometry.check_site(j)?;
        Ok(Self { geometry, lambda: lambda.clamp(-0.5, 0.5), i, j, t })
    }

    pub(crate) fn trivial(&self) -> f64 {
        if self.i == self.j {
            (-self.t).exp()
        } else {
            0.0
        }
    }
}

/// `e^{-t} I_n(2 lambda t)` evaluated as `e^{-t + |y|} (e^{-|y|} I_n(y))`.
fn damped_bessel(n: i64, lambda: f64, t: f64) -> f64 {
    let y = 2.0 * lambda * t;
    (y.abs() - t).exp() * bessel_i_scaled_signed(n, y)
}

/// Closed-form scalar transition probability `P_ij(t)`.
///
/// Infinite geometries use modified Bessel functions; segments sum over the
/// atoms of the spectral measure. `lambda = 0` decouples the sites.
pub fn scalar_kernel(req: &KernelRequest) -> f64 {
    let KernelRequest { geometry, lambda, i, j, t } = *req;
    if t == 0.0 {
        return if i == j { 1.0 } else { 0.0 };
    }
    if lambda == 0.0 {
        return req.trivial();
    }
    match geometry {
        Geometry::HalfLine(Boundary::Absorbing) => {
            damped_bessel(i - j, lambda, t) - damped_bessel(i + j + 2, lambda, t)
        }
        Geometry::HalfLine(Boundary::Reflecting) => {
            damped_bessel(i - j, lambda, t) + damped_bessel(i + j + 1, lambda, t)
        }
        Geometry::Line => damped_bessel(i - j, lambda, t),
        Geometry::Segment { .. } => {
            let m = scalar_measure(&geometry, lambda).expect("lambda validated");
            segment_sum(&m, i, j, t)
        }
    }
}

pub(crate) fn segment_sum(m: &crate::spectra::ScalarMeasure, i: i64, j: i64, t: f64) -> f64 {
    let fam = m.family();
    let len = i.max(j) as usize + 1;
    m.atoms
        .iter()
        .map(|&(x, a)| {
            let q = fam.eval_all(x, len);
            (-x * t).exp() * q[i as usize] * q[j as usize] * a
        })
        .sum()
}

/// Kernels of all four eigenvalues for one transition.
pub fn kernels_for(lambdas: &[f64; 4], g: &Geometry, i: i64, j: i64, t: f64) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (o, &l) in out.iter_mut().zip(lambdas) {
        *o = scalar_kernel(&KernelRequest::new(*g, l, i, j, t)?);
    }
    Ok(out)
}
