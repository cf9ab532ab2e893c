//! Lattice geometries, block generators and their scalar reductions.

mod assemble;
mod geometry;
mod symmetrize;
mod window;

pub use assemble::{assemble_from_rep, assemble_generator, scalar_reduction, BlockTridiagonalOperator, ScalarJacobi};
pub use geometry::{Boundary, Geometry};
pub use symmetrize::{check_symmetrizable, SymmetrizerSequence};
pub use window::{check_window, default_truncation, line_tail, required_margin, EDGE_MASS_TOL};
