//! Transition probabilities, spectral measures and recurrence for
//! one-dimensional continuous-time quantum Markov chains on qubits.
//!
//! A homogeneous chain is driven by a qubit map `T = sum V . V^*` with
//! `sum V^* V = I/2`. When its 4x4 representation is Hermitian, the block
//! generator splits into four scalar birth-death chains, one per eigenvalue,
//! and every probability reduces to Karlin-McGregor integrals of Chebyshev
//! polynomials. Closed forms in terms of modified Bessel functions are
//! provided alongside quadrature and matrix-exponential oracles.

pub mod analysis;
pub mod channels;
pub mod error;
pub mod generators;
pub mod kernels;
pub mod linalg;
pub mod specfun;
pub mod spectra;

#[cfg(test)]
mod properties;

pub use channels::{eigenbasis, superop_of, EigenChannelBasis, KrausChannel, QubitDensity, SuperOperator};
pub use error::{Error, Result};
pub use generators::{Boundary, Geometry};
pub use kernels::{GoalState, KernelRequest};
pub use linalg::{DenseMatrix, C64};
