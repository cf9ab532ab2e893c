use crate::error::{Error, Result};
use crate::linalg::{cholesky, inverse, DenseMatrix};

const SYM_TOL: f64 = 1e-10;

/// Result of the symmetrizability test for a block tridiagonal matrix with
/// `B_n` on the diagonal, `A_n` below it and `C_{n+1}` above it.
#[derive(Debug, Clone)]
pub struct SymmetrizerSequence {
    /// `R_0 = I, R_1, ...` up to the first failure or `max_index`.
    pub r_matrices: Vec<DenseMatrix>,
    pub max_index: usize,
    pub verdict: bool,
    /// Index at which the test failed, if it did.
    pub failed_at: Option<usize>,
}

fn relative_hermitian_deviation(m: &DenseMatrix) -> f64 {
    m.hermitian_deviation() / m.max_abs().max(1.0)
}

/// Looks for `R_n` with `R_n^* R_n = (A_0^* ... A_{n-1}^*)^{-1} C_1 ... C_n`
/// and `R_n B_n R_n^{-1}` Hermitian, taking `R_0 = I`.
///
/// Both tests use a tolerance of `1e-10`, widened to the rounding error that
/// the recursion for `S_n` can propagate when the blocks are ill-conditioned.
///
/// Sequences shorter than needed are extended by repeating their last element.
/// `a_seq[n]` is `A_n`, `b_seq[n]` is `B_n` and `c_seq[n]` is `C_{n+1}`.
pub fn check_symmetrizable(
    a_seq: &[DenseMatrix],
    b_seq: &[DenseMatrix],
    c_seq: &[DenseMatrix],
    n_max: usize,
) -> Result<SymmetrizerSequence> {
    if a_seq.is_empty() || b_seq.is_empty() || c_seq.is_empty() {
        return Err(Error::Validation("block sequences must be non-empty".into()));
    }
    let pick = |s: &[DenseMatrix], n: usize| s[n.min(s.len() - 1)].clone();
    let dim = b_seq[0].rows();
    let mut r_matrices = vec![DenseMatrix::identity(dim)];
    let mut s = DenseMatrix::identity(dim);
    let mut failed_at = None;
    // Bound on how much a unit rounding error in S_0 can grow by step n.
    let mut growth = 1.0;

    if relative_hermitian_deviation(&pick(b_seq, 0)) > SYM_TOL {
        failed_at = Some(0);
    }
    let mut n = 1;
    while failed_at.is_none() && n <= n_max {
        let a = pick(a_seq, n - 1);
        let c = pick(c_seq, n - 1);
        let a_adj_inv = inverse(&a.adjoint()).ok_or(Error::Singular { which: "A", index: n - 1 })?;
        if inverse(&c).is_none() {
            return Err(Error::Singular { which: "C", index: n });
        }
        s = &(&a_adj_inv * &s) * &c;
        growth *= a_adj_inv.norm_one() * c.norm_one();
        let tol = SYM_TOL.max(64.0 * f64::EPSILON * growth);
        if relative_hermitian_deviation(&s) > tol {
            failed_at = Some(n);
            break;
        }
        // Symmetrize away rounding before factoring.
        s = (&s + &s.adjoint()).scale_real(0.5);
        let rn = match cholesky(&s) {
            Ok(l) => l.adjoint(),
            Err(_) => {
                failed_at = Some(n);
                break;
            }
        };
        let rn_inv = inverse(&rn).ok_or(Error::Singular { which: "R", index: n })?;
        let sym = &(&rn * &pick(b_seq, n)) * &rn_inv;
        r_matrices.push(rn);
        if relative_hermitian_deviation(&sym) > tol {
            failed_at = Some(n);
            break;
        }
        n += 1;
    }
    Ok(SymmetrizerSequence { r_matrices, max_index: n_max, verdict: failed_at.is_none(), failed_at })
}
