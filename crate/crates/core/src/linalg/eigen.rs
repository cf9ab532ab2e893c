use super::matrix::{c, r, DenseMatrix, C64};
use crate::error::{Error, Result};

/// Precondition tolerance on the Hermitian symmetry of eigensolver input.
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Unitary eigendecomposition `h = basis * diag(eigenvalues) * basis^*`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub basis: DenseMatrix,
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
}

impl HermitianEigen {
    pub fn reconstruct(&self) -> DenseMatrix {
        let d = DenseMatrix::from_diag_real(&self.eigenvalues);
        &(&self.basis * &d) * &self.basis.adjoint()
    }

    /// Applies `f` to the spectrum: `basis * diag(f(eigenvalues)) * basis^*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        let d: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        let bd = &self.basis * &DenseMatrix::from_diag_real(&d);
        &bd * &self.basis.adjoint()
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation is `G = D P`, where `D = diag(1, e^{-i phi})` removes the phase
/// of the pivot and `P` is the real rotation zeroing the resulting real pivot.
pub fn hermitian_eig(h: &DenseMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::Shape(format!("eigensolver needs a square matrix, got {}x{}", h.rows(), h.cols())));
    }
    let deviation = h.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = h.rows();
    // Symmetrize exactly so the rotations act on a Hermitian matrix.
    let mut a = DenseMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = DenseMatrix::identity(n);
    let scale = a.frobenius().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                // G restricted to (p, q).
                let gpp = r(cs);
                let gpq = r(sn);
                let gqp = -phase.conj() * sn;
                let gqq = phase.conj() * cs;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = c(0.0, 0.0);
                a[(q, p)] = c(0.0, 0.0);
                a[(p, p)] = r(a[(p, p)].re);
                a[(q, q)] = r(a[(q, q)].re);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut basis = DenseMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut vk = v.column(k);
        normalize_phase(&mut vk);
        for (i, z) in vk.into_iter().enumerate() {
            basis[(i, col)] = z;
        }
    }
    Ok(HermitianEigen { basis, eigenvalues })
}

/// Rotates the vector so its first non-negligible component is real positive.
fn normalize_phase(v: &mut [C64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if let Some(lead) = v.iter().find(|z| z.norm() > 1e-12 * norm.max(1e-300)).copied() {
        let ph = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= ph;
        }
    }
}

/// Matrix function of a Hermitian positive-definite argument, e.g. the
/// inverse square root. Fails when an eigenvalue is at most `floor`.
pub fn hermitian_pd_function(h: &DenseMatrix, floor: f64, f: impl Fn(f64) -> f64) -> Result<DenseMatrix> {
    let eig = hermitian_eig(h)?;
    if let Some(&min) = eig.eigenvalues.last() {
        if min <= floor {
            return Err(Error::Validation(format!("matrix is not positive definite (smallest eigenvalue {min:.3e})")));
        }
    }
    Ok(eig.map(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(h: &DenseMatrix, eig: &HermitianEigen) {
        let n = h.rows();
        let u = &eig.basis;
        assert!((&u.adjoint() * u).max_abs_diff(&DenseMatrix::identity(n)) <= 1e-12);
        assert!(eig.reconstruct().max_abs_diff(h) <= 1e-12 * h.max_abs().max(1.0));
        for w in eig.eigenvalues.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn diagonal_input() {
        let h = DenseMatrix::from_diag_real(&[3.0, 1.0]);
        let e = hermitian_eig(&h).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 1.0]);
        assert_eq!(e.basis, DenseMatrix::identity(2));
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let h = DenseMatrix::from_diag_real(&[1.0, 3.0]);
        let e = hermitian_eig(&h).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 1.0]);
        check(&h, &e);
    }

    #[test]
    fn pauli_x() {
        let h = DenseMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let e = hermitian_eig(&h).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] + 1.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expect = DenseMatrix::from_real(2, 2, &[s, s, s, -s]).unwrap();
        assert!(e.basis.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn complex_entries() {
        let h = DenseMatrix::new(
            3,
            3,
            vec![
                r(2.0),
                c(1.0, 1.0),
                c(0.0, -0.5),
                c(1.0, -1.0),
                r(-1.0),
                c(0.3, 0.2),
                c(0.0, 0.5),
                c(0.3, -0.2),
                r(0.5),
            ],
        )
        .unwrap();
        let e = hermitian_eig(&h).unwrap();
        check(&h, &e);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = DenseMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        match hermitian_eig(&h) {
            Err(Error::NotHermitian { deviation }) => assert_eq!(deviation, 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let h = DenseMatrix::from_real(
            4,
            4,
            &[1.0, 1.0, 1.0, 2.0, 1.0, 0.0, 2.0, -1.0, 1.0, 2.0, 0.0, -1.0, 2.0, -1.0, -1.0, 1.0],
        )
        .unwrap()
        .scale_real(1.0 / 3.0);
        let e = hermitian_eig(&h).unwrap();
        check(&h, &e);
    }

    proptest! {
        #[test]
        fn random_hermitian(entries in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 16)) {
            let m = DenseMatrix::new(4, 4, entries.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap();
            let h = (&m + &m.adjoint()).scale_real(0.5);
            let e = hermitian_eig(&h).unwrap();
            let u = &e.basis;
            prop_assert!((&u.adjoint() * u).max_abs_diff(&DenseMatrix::identity(4)) <= 1e-12);
            prop_assert!(e.reconstruct().max_abs_diff(&h) <= 1e-12);
        }
    }
}
