use crate::error::{Error, Result};
use crate::generators::{Boundary, Geometry};
use crate::specfun::{cheb_eval, cheb_u_ext, ChebKind};

/// Orthogonal polynomial family of a scalar Jacobi generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialFamily {
    pub geometry: Geometry,
    pub lambda: f64,
}

/// Value of `Q_n(x)`: a single polynomial, or the pair of line families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyValue {
    Single(f64),
    Pair(f64, f64),
}

impl PolyValue {
    /// The single value, or the first family on the line.
    pub fn first(self) -> f64 {
        match self {
            PolyValue::Single(v) | PolyValue::Pair(v, _) => v,
        }
    }
}

/// Chebyshev argument `(1 - x) / (2 lambda)`, with `lambda` kept signed.
pub fn cheb_argument(lambda: f64, x: f64) -> f64 {
    (1.0 - x) / (2.0 * lambda)
}

/// First line family: `U_n` for `n >= 0`, `-U_{-n-2}` for `n <= -1`.
pub fn line_first(n: i64, u: f64) -> f64 {
    if n >= 0 {
        cheb_u_ext(n, u)
    } else {
        -cheb_u_ext(-n - 2, u)
    }
}

/// Second line family: `-U_{n-1}` for `n >= 0`, `U_{-n-1}` for `n <= -1`.
pub fn line_second(n: i64, u: f64) -> f64 {
    if n >= 0 {
        -cheb_u_ext(n - 1, u)
    } else {
        cheb_u_ext(-n - 1, u)
    }
}

impl PolynomialFamily {
    pub fn new(geometry: Geometry, lambda: f64) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::Degenerate(format!("polynomials need a nonzero finite lambda, got {lambda}")));
        }
        Ok(Self { geometry, lambda })
    }

    /// Chebyshev kind in the argument `(1 - x) / (2 lambda)`: the left
    /// barrier decides, absorbing giving `U` and reflecting giving `V`.
    fn kind(&self) -> ChebKind {
        match self.geometry {
            Geometry::HalfLine(Boundary::Absorbing) => ChebKind::Second,
            Geometry::HalfLine(Boundary::Reflecting) => ChebKind::Third,
            Geometry::Segment { left: Boundary::Absorbing, .. } => ChebKind::Second,
            Geometry::Segment { left: Boundary::Reflecting, .. } => ChebKind::Third,
            Geometry::Line => ChebKind::Second,
        }
    }

    pub fn eval(&self, n: i64, x: f64) -> Result<PolyValue> {
        self.geometry.check_site(n)?;
        let u = cheb_argument(self.lambda, x);
        Ok(match self.geometry {
            Geometry::Line => PolyValue::Pair(line_first(n, u), line_second(n, u)),
            _ => PolyValue::Single(cheb_eval(self.kind(), n as usize, u)),
        })
    }

    /// `Q_0(x), ..., Q_{len-1}(x)` for the half-line and segment families.
    pub fn eval_all(&self, x: f64, len: usize) -> Vec<f64> {
        let u = cheb_argument(self.lambda, x);
        let mut out = vec![0.0; len];
        crate::specfun::cheb_eval_all(self.kind(), u, &mut out);
        out
    }
}

/// `Q_n(x)` for geometry `g`; the line returns both families.
pub fn polynomials(g: &Geometry, lambda: f64, n: i64, x: f64) -> Result<PolyValue> {
    PolynomialFamily::new(*g, lambda)?.eval(n, x)
}
