use super::matrix::{r, DenseMatrix, C64};
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: DenseMatrix,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// Returns `None` when a pivot is below `tol` relative to the matrix scale.
    pub fn new(a: &DenseMatrix, tol: f64) -> Option<Self> {
        assert!(a.is_square(), "LU needs a square matrix");
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let (piv, pmag) =
                (k..n)
                    .map(|i| (i, lu[(i, k)].norm()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmag <= tol * scale {
                return None;
            }
            if piv != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(piv, j)];
                    lu[(piv, j)] = tmp;
                }
                perm.swap(k, piv);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Some(Self { lu, perm, sign })
    }

    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.rows();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                x[i] = x[i] - l * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[(i, k)];
                x[i] = x[i] - u * x[k];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn solve(&self, b: &DenseMatrix) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            let col = self.solve_vec(&b.column(j));
            for (i, z) in col.into_iter().enumerate() {
                out[(i, j)] = z;
            }
        }
        out
    }

    pub fn inverse(&self) -> DenseMatrix {
        self.solve(&DenseMatrix::identity(self.lu.rows()))
    }

    pub fn determinant(&self) -> C64 {
        (0..self.lu.rows()).fold(r(self.sign), |acc, i| acc * self.lu[(i, i)])
    }
}

/// Inverse, or `None` for numerically singular input.
pub fn inverse(a: &DenseMatrix) -> Option<DenseMatrix> {
    Lu::new(a, 1e-14).map(|lu| lu.inverse())
}

/// Lower-triangular Cholesky factor `L` with `A = L L^*`.
///
/// Input must be Hermitian within `1e-10` relative; fails unless every pivot
/// exceeds `1e-14` times the matrix scale.
pub fn cholesky(a: &DenseMatrix) -> Result<DenseMatrix> {
    if !a.is_square() {
        return Err(Error::Shape("Cholesky needs a square matrix".into()));
    }
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let deviation = a.hermitian_deviation();
    if deviation > 1e-10 * scale {
        return Err(Error::NotHermitian { deviation });
    }
    let n = a.rows();
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= 1e-14 * scale {
            return Err(Error::Validation(format!("matrix is not positive definite (pivot {j} = {d:.3e})")));
        }
        let djj = d.sqrt();
        l[(j, j)] = r(djj);
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}
