use super::kraus::{normalization_residual, KrausChannel, NORMALIZATION_TOL};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, r, DenseMatrix};

const FLAG_TOL: f64 = 1e-10;
const PQ_TOL: f64 = 1e-12;

/// Positions (0-based) allowed to be nonzero in a PQ representation.
const PQ_PATTERN: [(usize, usize); 8] = [(0, 0), (0, 3), (3, 0), (3, 3), (1, 1), (1, 2), (2, 1), (2, 2)];

/// 4x4 representation `sum V (x) conj(V)` acting on row-stacked 2x2 matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperator {
    pub rep: DenseMatrix,
    pub is_hermitian: bool,
    pub is_pq: bool,
}

impl SuperOperator {
    /// Wraps an arbitrary 4x4 representation and computes its flags.
    pub fn from_rep(rep: DenseMatrix) -> Result<Self> {
        if rep.rows() != 4 || rep.cols() != 4 {
            return Err(Error::Shape(format!("superoperator must be 4x4, got {}x{}", rep.rows(), rep.cols())));
        }
        let is_hermitian = rep.hermitian_deviation() <= FLAG_TOL;
        let is_pq = has_pq_pattern(&rep, FLAG_TOL);
        Ok(Self { rep, is_hermitian, is_pq })
    }
}

/// `sum V (x) conj(V)` without normalization checks.
pub fn superop_of_matrices(kraus: &[DenseMatrix]) -> DenseMatrix {
    let mut rep = DenseMatrix::zeros(4, 4);
    for v in kraus {
        rep = &rep + &kron(v, &v.conj());
    }
    rep
}

/// Representation of a normalized channel with structure flags.
pub fn superop_of(ch: &KrausChannel) -> Result<SuperOperator> {
    let res = normalization_residual(ch.kraus());
    if res > NORMALIZATION_TOL {
        return Err(Error::Validation(format!("sum V^*V differs from I/2 by {res:.3e}")));
    }
    SuperOperator::from_rep(superop_of_matrices(ch.kraus()))
}

fn has_pq_pattern(rep: &DenseMatrix, tol: f64) -> bool {
    (0..4).all(|i| (0..4).all(|j| PQ_PATTERN.contains(&(i, j)) || rep[(i, j)].norm() <= tol))
}

/// The blocks of a PQ representation on coordinates `{0, 3}` and `{1, 2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PqParts {
    pub p_part: DenseMatrix,
    pub q_part: DenseMatrix,
}

impl PqParts {
    /// Reassembles the 4x4 representation.
    pub fn reassemble(&self) -> DenseMatrix {
        let mut rep = DenseMatrix::zeros(4, 4);
        let (p, q) = (&self.p_part, &self.q_part);
        rep[(0, 0)] = p[(0, 0)];
        rep[(0, 3)] = p[(0, 1)];
        rep[(3, 0)] = p[(1, 0)];
        rep[(3, 3)] = p[(1, 1)];
        rep[(1, 1)] = q[(0, 0)];
        rep[(1, 2)] = q[(0, 1)];
        rep[(2, 1)] = q[(1, 0)];
        rep[(2, 2)] = q[(1, 1)];
        rep
    }
}

/// Splits the representation into P and Q parts when it has the PQ pattern.
pub fn detect_pq(s: &SuperOperator) -> Option<PqParts> {
    let rep = &s.rep;
    if !has_pq_pattern(rep, PQ_TOL) {
        return None;
    }
    let p_part = DenseMatrix::new(2, 2, vec![rep[(0, 0)], rep[(0, 3)], rep[(3, 0)], rep[(3, 3)]]).ok()?;
    let q_part = DenseMatrix::new(2, 2, vec![rep[(1, 1)], rep[(1, 2)], rep[(2, 1)], rep[(2, 2)]]).ok()?;
    Some(PqParts { p_part, q_part })
}

/// How the eigenbasis was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisOrigin {
    /// Closed-form PQ basis; eigenvalues in the order `1/2, p-1/2, (q+r)/2, (q-r)/2`.
    PqLabeled,
    /// Generic Hermitian eigensolver; eigenvalues descending.
    Numeric,
}

/// Unitary `B` and eigenvalues with `rep = B diag(lambdas) B^*`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenChannelBasis {
    pub basis: DenseMatrix,
    pub lambdas: [f64; 4],
    pub origin: BasisOrigin,
}

impl EigenChannelBasis {
    pub fn reconstruct(&self) -> DenseMatrix {
        let d = DenseMatrix::from_diag_real(&self.lambdas);
        &(&self.basis * &d) * &self.basis.adjoint()
    }
}

fn symmetric_real_pair(m: &DenseMatrix) -> Option<(f64, f64)> {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let real = [a, b, c, d].iter().all(|z| z.im.abs() <= PQ_TOL);
    if real && (a.re - d.re).abs() <= PQ_TOL && (b.re - c.re).abs() <= PQ_TOL {
        Some((0.5 * (a.re + d.re), 0.5 * (b.re + c.re)))
    } else {
        None
    }
}

/// Diagonalizes a Hermitian representation.
///
/// PQ representations with blocks of the form `[[a, b], [b, a]]` (real) use the
/// basis `(1,0,0,1)`, `(1,0,0,-1)`, `(0,1,1,0)`, `(0,1,-1,0)` over `sqrt 2`;
/// everything else goes through the Jacobi solver.
pub fn eigenbasis(s: &SuperOperator) -> Result<EigenChannelBasis> {
    let dev = s.rep.hermitian_deviation();
    if dev > FLAG_TOL {
        return Err(Error::Unsupported(format!(
            "representation is not Hermitian (deviation {dev:.3e}); non-Hermitian transitions are not handled"
        )));
    }
    if let Some(parts) = detect_pq(s) {
        if let (Some((pa, pb)), Some((qa, qb))) =
            (symmetric_real_pair(&parts.p_part), symmetric_real_pair(&parts.q_part))
        {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let basis =
                DenseMatrix::from_real(4, 4, &[h, h, 0.0, 0.0, 0.0, 0.0, h, h, 0.0, 0.0, h, -h, h, -h, 0.0, 0.0])
                    .expect("4x4");
            return Ok(EigenChannelBasis {
                basis,
                lambdas: [pa + pb, pa - pb, qa + qb, qa - qb],
                origin: BasisOrigin::PqLabeled,
            });
        }
    }
    let eig = hermitian_eig(&s.rep)?;
    let lambdas = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2], eig.eigenvalues[3]];
    Ok(EigenChannelBasis { basis: eig.basis, lambdas, origin: BasisOrigin::Numeric })
}

/// `vec(I)` as a row functional; `Tr X = vec(I)^T vec(X)`.
pub fn trace_functional() -> [f64; 4] {
    [1.0, 0.0, 0.0, 1.0]
}

/// Checks that `1/2` is an eigenvalue with eigenvector `vec(I)/sqrt 2`.
pub fn half_identity_residual(rep: &DenseMatrix) -> f64 {
    let v = [r(1.0), r(0.0), r(0.0), r(1.0)];
    let w = rep.matvec(&v);
    w.iter().zip(&v).map(|(a, b)| (a - b * 0.5).norm()).fold(0.0, f64::max)
}
