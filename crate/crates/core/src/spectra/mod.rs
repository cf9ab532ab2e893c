//! Spectral measures, orthogonal polynomials and Stieltjes transforms of the
//! scalar generators, plus the matrix-valued measure for non-commuting blocks.

mod duran;
mod line;
mod measure;
mod polynomials;

pub use duran::{block_jacobi_moments, duran_density, DuranMeasure, DURAN_POINTS, PD_FLOOR};
pub use line::{spectral_matrix_line, SpectralMatrix2};
pub use measure::{scalar_measure, stieltjes_closed_form, MeasureForm, ScalarMeasure};
pub use polynomials::{cheb_argument, line_first, line_second, polynomials, PolyValue, PolynomialFamily};
