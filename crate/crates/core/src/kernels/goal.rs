use crate::channels::QubitDensity;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, C64};

/// Pure target state given by the pair `psi = (psi_1, psi_2)`.
///
/// The ket is `(conj psi_1, conj psi_2)`, so the projector has entries
/// `gamma_ab = conj(psi_a) psi_b`. With this convention the Bloch expansion
/// of the state probability carries `+Z Im(conj(psi_1) psi_2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GoalState {
    pub psi: [C64; 2],
    pub gamma: DenseMatrix,
}

impl GoalState {
    pub fn new(psi: [C64; 2]) -> Result<Self> {
        let n2 = psi[0].norm_sqr() + psi[1].norm_sqr();
        if (n2 - 1.0).abs() > 1e-12 {
            return Err(Error::Validation(format!("goal state must be a unit vector, |psi|^2 = {n2}")));
        }
        let gamma = DenseMatrix::from_fn(2, 2, |a, b| psi[a].conj() * psi[b]);
        Ok(Self { psi, gamma })
    }

    /// Rescales `psi` to unit length first.
    pub fn normalized(psi: [C64; 2]) -> Result<Self> {
        let n = (psi[0].norm_sqr() + psi[1].norm_sqr()).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Validation("goal state must be nonzero".into()));
        }
        Self::new([psi[0] / n, psi[1] / n])
    }

    /// The orthogonal pure state.
    pub fn antipodal(&self) -> Self {
        Self::new([-self.psi[1].conj(), self.psi[0].conj()]).expect("unit vector")
    }

    pub fn density(&self) -> QubitDensity {
        QubitDensity::from_matrix(&self.gamma).expect("pure state")
    }

    /// `conj(psi_a) psi_b`, the combination entering the Bloch expansion.
    pub fn coherence(&self) -> C64 {
        self.psi[0].conj() * self.psi[1]
    }
}
