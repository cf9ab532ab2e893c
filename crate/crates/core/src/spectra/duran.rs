use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, hermitian_pd_function, DenseMatrix, HERMITIAN_TOL};
use crate::specfun::gauss_legendre;

/// Smallest eigenvalue accepted for the off-diagonal block.
pub const PD_FLOOR: f64 = 1e-12;

/// Gauss-Legendre points per piece between consecutive breakpoints.
pub const DURAN_POINTS: usize = 96;

/// Matrix-valued orthogonality measure of the half-line block Jacobi operator
/// with diagonal blocks `-G` and off-diagonal blocks `T`, for `T` positive
/// definite and `G` Hermitian but not necessarily commuting.
///
/// With `M(x) = T^{-1/2} (G + x) T^{-1/2}` and `H = M^2 - 4`, the density is
/// `T^{-1/2} sqrt((-H)^+) T^{-1/2} / (2 pi)`.
#[derive(Debug, Clone)]
pub struct DuranMeasure {
    g_block: DenseMatrix,
    t_inv_sqrt: DenseMatrix,
    /// Sorted eigenvalues of `-G + 2T` and `-G - 2T`.
    breakpoints: Vec<f64>,
}

impl DuranMeasure {
    pub fn new(t_rep: &DenseMatrix, g_block: &DenseMatrix) -> Result<Self> {
        if !t_rep.is_square() || t_rep.rows() != g_block.rows() || !g_block.is_square() {
            return Err(Error::Shape("blocks must be square and of equal size".into()));
        }
        if !g_block.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::Validation("diagonal block must be Hermitian".into()));
        }
        if !t_rep.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::Validation("off-diagonal block must be Hermitian".into()));
        }
        let t_inv_sqrt = hermitian_pd_function(t_rep, PD_FLOOR, |v| 1.0 / v.sqrt())?;
        let minus_g = g_block.scale_real(-1.0);
        let two_t = t_rep.scale_real(2.0);
        let mut breakpoints = hermitian_eig(&(&minus_g + &two_t))?.eigenvalues;
        breakpoints.extend(hermitian_eig(&(&minus_g - &two_t))?.eigenvalues);
        breakpoints.sort_by(f64::total_cmp);
        breakpoints.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * (1.0 + b.abs()));
        Ok(Self { g_block: g_block.clone(), t_inv_sqrt, breakpoints })
    }

    /// Smallest interval containing the support.
    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().expect("nonempty"))
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn density(&self, x: f64) -> DenseMatrix {
        let n = self.g_block.rows();
        let shifted = &self.g_block + &DenseMatrix::identity(n).scale_real(x);
        let m = &(&self.t_inv_sqrt * &shifted) * &self.t_inv_sqrt;
        let minus_h = &DenseMatrix::identity(n).scale_real(4.0) - &(&m * &m);
        // Round-off can leave a tiny anti-Hermitian part.
        let minus_h = (&minus_h + &minus_h.adjoint()).scale_real(0.5);
        let root = hermitian_eig(&minus_h).expect("Hermitian by construction").map(|d| d.max(0.0).sqrt());
        (&(&self.t_inv_sqrt * &root) * &self.t_inv_sqrt).scale_real(1.0 / (2.0 * PI))
    }

    /// `int f(x) dW(x)`, piecewise between breakpoints with
    /// `x = a + (b - a)(1 - cos theta)/2` absorbing the square-root edges.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        self.integrate_with(DURAN_POINTS, f)
    }

    pub fn integrate_with(&self, points: usize, f: impl Fn(f64) -> f64) -> DenseMatrix {
        let n = self.g_block.rows();
        let (nodes, weights) = gauss_legendre(points);
        let mut acc = DenseMatrix::zeros(n, n);
        for piece in self.breakpoints.windows(2) {
            let (a, b) = (piece[0], piece[1]);
            for (&s, &w) in nodes.iter().zip(&weights) {
                // s in [-1, 1] maps to theta in [0, pi].
                let th = (s + 1.0) * PI / 2.0;
                let x = a + (b - a) * (1.0 - th.cos()) / 2.0;
                let jac = (b - a) / 2.0 * th.sin() * PI / 2.0;
                acc = &acc + &self.density(x).scale_real(w * jac * f(x));
            }
        }
        acc
    }

    pub fn moment(&self, k: u32) -> DenseMatrix {
        self.integrate(|x| x.powi(k as i32))
    }
}

pub fn duran_density(t_rep: &DenseMatrix, g_block: &DenseMatrix, x: f64) -> Result<DenseMatrix> {
    Ok(DuranMeasure::new(t_rep, g_block)?.density(x))
}

/// `(J^k)_{00}` for `k = 0..=kmax`, where `J` is the half-line block Jacobi
/// matrix with diagonal `-G` and off-diagonal `T`.
pub fn block_jacobi_moments(t_rep: &DenseMatrix, g_block: &DenseMatrix, kmax: usize) -> Vec<DenseMatrix> {
    let b = t_rep.rows();
    // (J^k)_{00} only sees the first k/2 + 1 blocks.
    let sites = kmax / 2 + 2;
    let mut j = DenseMatrix::zeros(b * sites, b * sites);
    let minus_g = g_block.scale_real(-1.0);
    for s in 0..sites {
        j.set_block(s * b, s * b, &minus_g);
        if s + 1 < sites {
            j.set_block(s * b, (s + 1) * b, t_rep);
            j.set_block((s + 1) * b, s * b, t_rep);
        }
    }
    let mut power = DenseMatrix::identity(b * sites);
    let mut out = Vec::with_capacity(kmax + 1);
    for _ in 0..=kmax {
        out.push(power.block(0, 0, b, b));
        power = &power * &j;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{eigenbasis, superop_of, KrausChannel};
    use crate::generators::{Boundary, Geometry};
    use crate::spectra::scalar_measure;

    /// Non-commuting pair from `V1 = diag(a, b)`, `V2 = [[0, c], [d, 0]]`.
    fn noncommuting(a: f64, b: f64, c: f64, d: f64) -> (DenseMatrix, DenseMatrix) {
        let t = DenseMatrix::from_real(
            4,
            4,
            &[a * a, 0.0, 0.0, c * c, 0.0, a * b, c * d, 0.0, 0.0, c * d, a * b, 0.0, d * d, 0.0, 0.0, b * b],
        )
        .unwrap();
        let s = a * a + b * b + c * c + d * d;
        let g = DenseMatrix::from_diag_real(&[-2.0 * (a * a + d * d), -s, -s, -2.0 * (b * b + c * c)]);
        (t, g)
    }

    #[test]
    fn commuting_case_matches_eigenbasis() {
        let s = superop_of(&KrausChannel::depolarizing(1.0 / 3.0).unwrap()).unwrap();
        let basis = eigenbasis(&s).unwrap();
        let minus_i = DenseMatrix::identity(4).scale_real(-1.0);
        let w = DuranMeasure::new(&s.rep, &minus_i).unwrap();
        let measures: Vec<_> = basis
            .lambdas
            .iter()
            .map(|&l| scalar_measure(&Geometry::HalfLine(Boundary::Absorbing), l).unwrap())
            .collect();
        for k in 0..50 {
            let x = 0.0 + 2.0 * (k as f64 + 0.5) / 50.0;
            let d: Vec<f64> = measures.iter().map(|m| m.density(x)).collect();
            let expect = &(&basis.basis * &DenseMatrix::from_diag_real(&d)) * &basis.basis.adjoint();
            assert!(w.density(x).max_abs_diff(&expect) <= 1e-10, "x={x}");
        }
    }

    #[test]
    fn noncommuting_example_is_psd_with_matching_moments() {
        let (t, g) = noncommuting(0.6, 0.4, 0.3, 0.3);
        let comm = &(&t * &g) - &(&g * &t);
        assert!(comm.max_abs() > 1e-3);
        let w = DuranMeasure::new(&t, &g).unwrap();
        let (lo, hi) = w.support();
        for k in 0..50 {
            let x = lo + (hi - lo) * (k as f64 + 0.5) / 50.0;
            let eig = hermitian_eig(&w.density(x)).unwrap();
            assert!(*eig.eigenvalues.last().unwrap() >= -1e-12);
        }
        let exact = block_jacobi_moments(&t, &g, 4);
        for (k, e) in exact.iter().enumerate() {
            let m = w.moment(k as u32);
            assert!(m.max_abs_diff(e) <= 1e-8, "k={k}: {}", m.max_abs_diff(e));
        }
    }

    #[test]
    fn rejects_indefinite_block() {
        let t = DenseMatrix::from_diag_real(&[1.0, -1.0]);
        let g = DenseMatrix::identity(2);
        assert!(matches!(DuranMeasure::new(&t, &g), Err(Error::Validation(_))));
    }
}
