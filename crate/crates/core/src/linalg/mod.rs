//! Dense complex linear algebra for small matrices.

mod eigen;
mod expm;
mod factor;
mod matrix;

pub use eigen::{hermitian_eig, hermitian_pd_function, HermitianEigen, HERMITIAN_TOL};
pub use expm::{expm, expm_action, LinearOperator};
pub use factor::{cholesky, inverse, Lu};
pub use matrix::{c, dot, kron, norm2, r, unvec, vec, DenseMatrix, C64};
