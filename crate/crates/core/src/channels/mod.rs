//! Qubit channels, their superoperator representation and Lindblad structure.

mod density;
mod kraus;
mod lindblad;
mod superop;

pub use density::{bloch_affine_matrix, QubitDensity};
pub use kraus::{normalization_residual, KrausChannel, NORMALIZATION_TOL};
pub use lindblad::{
    default_unit_vector, hamiltonian_admissibility, hamiltonian_block, lindblad_decompose, LindbladDecomposition,
};
pub use superop::{
    detect_pq, eigenbasis, half_identity_residual, superop_of, superop_of_matrices, trace_functional, BasisOrigin,
    EigenChannelBasis, PqParts, SuperOperator,
};
