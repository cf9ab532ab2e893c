//! Chebyshev polynomials, modified Bessel functions and Gauss quadrature.

mod bessel;
mod chebyshev;
mod quadrature;

pub use bessel::{
    bessel_i, bessel_i_hankel, bessel_i_quadrature, bessel_i_quadrature_scaled, bessel_i_scaled,
    bessel_i_scaled_signed, bessel_laplace, LaplaceValue,
};
pub use chebyshev::{cheb_eval, cheb_eval_all, cheb_u_ext, cheb_zeros, ChebKind};
pub use quadrature::{gauss_chebyshev, gauss_legendre, QuadratureRule, DEFAULT_POINTS};
