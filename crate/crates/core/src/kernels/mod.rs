//! Scalar transition kernels and the qubit-level probabilities built on them.

mod goal;
mod oracle;
mod qmc;
mod scalar;

pub use goal::GoalState;
pub use oracle::km_quadrature_oracle;
pub(crate) use qmc::site_block_vec;
pub use qmc::{evolve_oracle, site_block, site_probability, state_probability, total_trace, SiteBlock};
pub use scalar::{kernels_for, scalar_kernel, KernelRequest, LAMBDA_BOUND};
