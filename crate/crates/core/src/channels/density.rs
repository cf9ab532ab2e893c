use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eig, r, vec, DenseMatrix, C64};

/// Qubit density matrix `rho = 1/2 [[1+X, Y+iZ], [Y-iZ, 1-X]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitDensity {
    matrix: DenseMatrix,
    bloch: [f64; 3],
}

fn bloch_matrix([x, y, z]: [f64; 3]) -> DenseMatrix {
    DenseMatrix::new(2, 2, vec![r(0.5 * (1.0 + x)), c(0.5 * y, 0.5 * z), c(0.5 * y, -0.5 * z), r(0.5 * (1.0 - x))])
        .expect("2x2")
}

impl QubitDensity {
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::Validation("Bloch coordinates must be finite".into()));
        }
        let n2 = x * x + y * y + z * z;
        if n2 > 1.0 + 1e-12 {
            return Err(Error::Validation(format!("Bloch vector norm^2 {n2} exceeds 1")));
        }
        Ok(Self { matrix: bloch_matrix([x, y, z]), bloch: [x, y, z] })
    }

    pub fn from_matrix(m: &DenseMatrix) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Shape("density must be 2x2".into()));
        }
        let dev = m.hermitian_deviation();
        if dev > 1e-12 {
            return Err(Error::Validation(format!("density is not Hermitian (deviation {dev:.3e})")));
        }
        let tr = m.trace();
        if (tr - r(1.0)).norm() > 1e-12 {
            return Err(Error::Validation(format!("density trace {} differs from 1", tr.re)));
        }
        let eig = hermitian_eig(m)?;
        let min = eig.eigenvalues[1];
        if min < -1e-12 {
            return Err(Error::Validation(format!("density has negative eigenvalue {min:.3e}")));
        }
        let x = (m[(0, 0)] - m[(1, 1)]).re;
        let off = m[(0, 1)];
        let (y, z) = (2.0 * off.re, 2.0 * off.im);
        Ok(Self { matrix: m.clone(), bloch: [x, y, z] })
    }

    /// `E_11 = |0><0|`.
    pub fn e11() -> Self {
        Self::from_bloch(1.0, 0.0, 0.0).expect("pure state")
    }

    /// `E_22 = |1><1|`.
    pub fn e22() -> Self {
        Self::from_bloch(-1.0, 0.0, 0.0).expect("pure state")
    }

    /// `1/2 [[1, 1], [1, 1]]`.
    pub fn uniform_plus() -> Self {
        Self::from_bloch(0.0, 1.0, 0.0).expect("pure state")
    }

    pub fn maximally_mixed() -> Self {
        Self::from_bloch(0.0, 0.0, 0.0).expect("center")
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.bloch
    }

    pub fn bloch_norm(&self) -> f64 {
        self.bloch.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Row-stacked vectorization.
    pub fn vec(&self) -> Vec<C64> {
        vec(&self.matrix)
    }
}

/// Density-like 2x2 matrix for arbitrary Bloch coordinates, without the
/// positivity check. Used for affine coefficient extraction.
pub fn bloch_affine_matrix(x: f64, y: f64, z: f64) -> DenseMatrix {
    bloch_matrix([x, y, z])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        assert_eq!(QubitDensity::e11().matrix(), &DenseMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap());
        assert_eq!(QubitDensity::e22().matrix(), &DenseMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0]).unwrap());
        assert_eq!(
            QubitDensity::uniform_plus().matrix(),
            &DenseMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap()
        );
    }

    #[test]
    fn matrix_and_bloch_agree() {
        let d = QubitDensity::from_bloch(0.3, -0.4, 0.5).unwrap();
        let back = QubitDensity::from_matrix(d.matrix()).unwrap();
        for (a, b) in d.bloch().iter().zip(back.bloch()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((d.matrix().trace() - r(1.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_invalid() {
        assert!(QubitDensity::from_bloch(1.0, 0.1, 0.0).is_err());
        let not_psd = DenseMatrix::from_real(2, 2, &[1.5, 0.0, 0.0, -0.5]).unwrap();
        assert!(QubitDensity::from_matrix(&not_psd).is_err());
        let bad_trace = DenseMatrix::from_real(2, 2, &[0.5, 0.0, 0.0, 0.4]).unwrap();
        assert!(QubitDensity::from_matrix(&bad_trace).is_err());
    }
}
