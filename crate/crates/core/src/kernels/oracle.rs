use super::scalar::KernelRequest;
use crate::generators::{Geometry, ScalarJacobi};
use crate::linalg::expm;
use crate::specfun::DEFAULT_POINTS;
use crate::spectra::{scalar_measure, spectral_matrix_line};

/// Gauss points for `int e^{-xt} Q_i Q_j`: the polynomial degree plus enough
/// Chebyshev terms to resolve `e^{2 lambda t u}`.
fn points_for(req: &KernelRequest) -> usize {
    let degree = (req.i.unsigned_abs() + req.j.unsigned_abs()) as usize;
    let exp_terms = (4.0 * req.lambda.abs() * req.t) as usize;
    DEFAULT_POINTS.max(degree / 2 + exp_terms + 64)
}

/// Karlin-McGregor integral `int e^{-xt} Q_i(x) Q_j(x) dpsi(x)` by Gauss
/// quadrature against the spectral measure, independent of the Bessel route.
///
/// The line uses the 2x2 spectral matrix and both polynomial families.
/// Segments are checked against a dense matrix exponential of the scalar
/// generator.
pub fn km_quadrature_oracle(req: &KernelRequest) -> f64 {
    let KernelRequest { geometry, lambda, i, j, t } = *req;
    if lambda == 0.0 {
        return req.trivial();
    }
    let points = points_for(req);
    match geometry {
        Geometry::Line => {
            spectral_matrix_line(lambda).expect("lambda validated").pair_integral_with(points, i, j, |x| (-x * t).exp())
        }
        Geometry::HalfLine(_) => {
            let m = scalar_measure(&geometry, lambda).expect("lambda validated");
            let fam = m.family();
            let len = i.max(j) as usize + 1;
            m.integrate_with(points, |x| {
                let q = fam.eval_all(x, len);
                (-x * t).exp() * q[i as usize] * q[j as usize]
            })
        }
        Geometry::Segment { .. } => {
            let a = ScalarJacobi::new(lambda, &geometry, 0).expect("segment").to_dense();
            expm(&a, t)[(i as usize, j as usize)].re
        }
    }
}
