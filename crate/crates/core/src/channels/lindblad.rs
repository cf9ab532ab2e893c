use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eig, kron, norm2, DenseMatrix, C64};

/// Hamiltonian and dissipative parts of `Phi - I` for a trace-preserving `Phi`.
#[derive(Debug, Clone)]
pub struct LindbladDecomposition {
    pub hamiltonian: DenseMatrix,
    pub dissipator_kraus: Vec<DenseMatrix>,
    pub kappa: DenseMatrix,
}

impl LindbladDecomposition {
    /// `psi(rho) = sum A rho A^*`.
    pub fn dissipator(&self, rho: &DenseMatrix) -> DenseMatrix {
        let mut acc = DenseMatrix::zeros(rho.rows(), rho.cols());
        for a in &self.dissipator_kraus {
            acc = &acc + &(&(a * rho) * &a.adjoint());
        }
        acc
    }

    /// `psi^*(I) = sum A^* A`.
    pub fn dual_dissipator_identity(&self) -> DenseMatrix {
        let n = self.kappa.rows();
        let mut acc = DenseMatrix::zeros(n, n);
        for a in &self.dissipator_kraus {
            acc = &acc + &(&a.adjoint() * a);
        }
        acc
    }

    /// `i [rho, H] + psi(rho) - 1/2 {psi^*(I), rho}`.
    pub fn generator(&self, rho: &DenseMatrix) -> DenseMatrix {
        let h = &self.hamiltonian;
        let comm = &(rho * h) - &(h * rho);
        let g = self.dual_dissipator_identity();
        let anti = &(&g * rho) + &(rho * &g);
        &(&comm.scale(c(0.0, 1.0)) + &self.dissipator(rho)) - &anti.scale_real(0.5)
    }
}

/// Splits `Phi - I` with `A_j = K_j - x_j I`, `kappa = sum conj(x_j) A_j` and
/// `H = i (kappa - kappa^*) / 2`.
pub fn lindblad_decompose(kraus: &[DenseMatrix], x: &[C64]) -> Result<LindbladDecomposition> {
    if kraus.is_empty() {
        return Err(Error::Validation("need at least one Kraus matrix".into()));
    }
    if kraus.len() != x.len() {
        return Err(Error::Shape(format!("{} Kraus matrices but unit vector of length {}", kraus.len(), x.len())));
    }
    let n = kraus[0].rows();
    let id = DenseMatrix::identity(n);
    let mut tp = DenseMatrix::zeros(n, n);
    for k in kraus {
        if k.rows() != n || k.cols() != n {
            return Err(Error::Shape("Kraus matrices must share a square shape".into()));
        }
        tp = &tp + &(&k.adjoint() * k);
    }
    let res = tp.max_abs_diff(&id);
    if res > 1e-10 {
        return Err(Error::Validation(format!("channel is not trace preserving (sum K^*K - I = {res:.3e})")));
    }
    let xn = norm2(x);
    if (xn - 1.0).abs() > 1e-12 {
        return Err(Error::Validation(format!("x must be a unit vector, norm is {xn}")));
    }
    let dissipator_kraus: Vec<DenseMatrix> = kraus.iter().zip(x).map(|(k, &xj)| k - &id.scale(xj)).collect();
    let mut kappa = DenseMatrix::zeros(n, n);
    for (a, &xj) in dissipator_kraus.iter().zip(x) {
        kappa = &kappa + &a.scale(xj.conj());
    }
    let hamiltonian = (&kappa - &kappa.adjoint()).scale(c(0.0, 0.5));
    Ok(LindbladDecomposition { hamiltonian, dissipator_kraus, kappa })
}

/// First standard basis vector of length `m`.
pub fn default_unit_vector(m: usize) -> Vec<C64> {
    let mut x = vec![c(0.0, 0.0); m];
    if m > 0 {
        x[0] = c(1.0, 0.0);
    }
    x
}

/// `-i (H (x) I - I (x) conj(H))`, the vectorized `rho -> -i [H, rho]`.
pub fn hamiltonian_block(h: &DenseMatrix) -> DenseMatrix {
    let id = DenseMatrix::identity(h.rows());
    (&kron(h, &id) - &kron(&id, &h.conj())).scale(c(0.0, -1.0))
}

/// Whether `G (x) I + I (x) conj(G)` with `G = -iH - R` is Hermitian, which
/// holds exactly when `H` is a multiple of the identity.
pub fn hamiltonian_admissibility(h: &DenseMatrix, r: &DenseMatrix) -> Result<bool> {
    if h.rows() != 2 || h.cols() != 2 || r.rows() != 2 || r.cols() != 2 {
        return Err(Error::Shape("H and R must be 2x2".into()));
    }
    let hd = h.hermitian_deviation();
    if hd > 1e-10 {
        return Err(Error::Validation(format!("H is not Hermitian (deviation {hd:.3e})")));
    }
    let rd = r.hermitian_deviation();
    if rd > 1e-10 {
        return Err(Error::Validation(format!("R is not Hermitian (deviation {rd:.3e})")));
    }
    let min = hermitian_eig(r)?.eigenvalues[1];
    if min <= 1e-12 {
        return Err(Error::Validation(format!("R is not positive definite (smallest eigenvalue {min:.3e})")));
    }
    let g = &h.scale(c(0.0, -1.0)) - r;
    let id = DenseMatrix::identity(2);
    let big = &kron(&g, &id) + &kron(&id, &g.conj());
    Ok(big.hermitian_deviation() <= 1e-12)
}
