use super::geometry::{Boundary, Geometry};
use crate::channels::{hamiltonian_block, superop_of, EigenChannelBasis, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{r, DenseMatrix, LinearOperator, C64};

/// Truncated block-tridiagonal generator with homogeneous off-diagonal blocks.
#[derive(Debug, Clone)]
pub struct BlockTridiagonalOperator {
    pub diag_blocks: Vec<DenseMatrix>,
    pub off_block: DenseMatrix,
    /// Inclusive site range.
    pub window: (i64, i64),
}

impl BlockTridiagonalOperator {
    pub fn block_size(&self) -> usize {
        self.off_block.rows()
    }

    pub fn sites(&self) -> usize {
        self.diag_blocks.len()
    }

    pub fn site_index(&self, site: i64) -> Option<usize> {
        (site >= self.window.0 && site <= self.window.1).then(|| (site - self.window.0) as usize)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let b = self.block_size();
        let n = self.sites();
        let mut m = DenseMatrix::zeros(n * b, n * b);
        for (k, d) in self.diag_blocks.iter().enumerate() {
            m.set_block(k * b, k * b, d);
            if k + 1 < n {
                m.set_block(k * b, (k + 1) * b, &self.off_block);
                m.set_block((k + 1) * b, k * b, &self.off_block);
            }
        }
        m
    }

    /// Adds `-i (H (x) I - I (x) conj(H))` to every diagonal block.
    pub fn with_hamiltonian(mut self, h: &DenseMatrix) -> Self {
        let hb = hamiltonian_block(h);
        for d in &mut self.diag_blocks {
            *d = &*d + &hb;
        }
        self
    }
}

impl LinearOperator for BlockTridiagonalOperator {
    fn dim(&self) -> usize {
        self.sites() * self.block_size()
    }

    fn apply(&self, v: &[C64]) -> Vec<C64> {
        let b = self.block_size();
        let n = self.sites();
        let mut out = vec![r(0.0); n * b];
        for k in 0..n {
            let dst = &mut out[k * b..(k + 1) * b];
            accumulate(dst, &self.diag_blocks[k], &v[k * b..(k + 1) * b]);
            if k > 0 {
                accumulate(dst, &self.off_block, &v[(k - 1) * b..k * b]);
            }
            if k + 1 < n {
                accumulate(dst, &self.off_block, &v[(k + 1) * b..(k + 2) * b]);
            }
        }
        out
    }

    fn norm_bound(&self) -> f64 {
        let diag = self.diag_blocks.iter().map(|d| d.norm_one()).fold(0.0, f64::max);
        diag + 2.0 * self.off_block.norm_one()
    }
}

fn accumulate(dst: &mut [C64], m: &DenseMatrix, x: &[C64]) {
    for (i, d) in dst.iter_mut().enumerate() {
        *d += m.row(i).iter().zip(x).map(|(a, b)| a * b).sum::<C64>();
    }
}

fn check_truncation(g: &Geometry, truncation: usize) -> Result<()> {
    if !g.is_finite() && truncation < 2 {
        return Err(Error::Validation(format!("truncation must be at least 2, got {truncation}")));
    }
    Ok(())
}

/// Assembles the generator `Phi - I` from a 4x4 representation.
///
/// Interior diagonal blocks are `-I`; reflecting ends carry `rep - I`. The far
/// edge of a truncated half-line or line window is a hard cutoff.
pub fn assemble_from_rep(rep: &DenseMatrix, g: &Geometry, truncation: usize) -> Result<BlockTridiagonalOperator> {
    check_truncation(g, truncation)?;
    let b = rep.rows();
    let window = g.window(truncation);
    let n = (window.1 - window.0 + 1) as usize;
    let minus_i = DenseMatrix::identity(b).scale_real(-1.0);
    let reflect = rep - &DenseMatrix::identity(b);
    let mut diag_blocks = vec![minus_i; n];
    match *g {
        Geometry::Line => {}
        Geometry::HalfLine(Boundary::Reflecting) => diag_blocks[0] = reflect,
        Geometry::HalfLine(Boundary::Absorbing) => {}
        Geometry::Segment { left, right, .. } => {
            if left == Boundary::Reflecting {
                diag_blocks[0] = reflect.clone();
            }
            if right == Boundary::Reflecting {
                diag_blocks[n - 1] = reflect;
            }
        }
    }
    Ok(BlockTridiagonalOperator { diag_blocks, off_block: rep.clone(), window })
}

pub fn assemble_generator(ch: &KrausChannel, g: &Geometry, truncation: usize) -> Result<BlockTridiagonalOperator> {
    assemble_from_rep(&superop_of(ch)?.rep, g, truncation)
}

/// Scalar Jacobi generator for one eigenvalue: off-diagonal `lambda`,
/// diagonal `-1`, or `lambda - 1` at reflecting ends.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarJacobi {
    pub lambda: f64,
    pub diag: Vec<f64>,
    pub off: f64,
    pub window: (i64, i64),
}

impl ScalarJacobi {
    pub fn new(lambda: f64, g: &Geometry, truncation: usize) -> Result<Self> {
        check_truncation(g, truncation)?;
        let window = g.window(truncation);
        let n = (window.1 - window.0 + 1) as usize;
        let mut diag = vec![-1.0; n];
        match *g {
            Geometry::HalfLine(Boundary::Reflecting) => diag[0] = lambda - 1.0,
            Geometry::Segment { left, right, .. } => {
                if left == Boundary::Reflecting {
                    diag[0] = lambda - 1.0;
                }
                if right == Boundary::Reflecting {
                    diag[n - 1] = lambda - 1.0;
                }
            }
            _ => {}
        }
        Ok(Self { lambda, diag, off: lambda, window })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.len();
        DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                r(self.diag[i])
            } else if i.abs_diff(j) == 1 {
                r(self.off)
            } else {
                r(0.0)
            }
        })
    }
}

/// The four scalar generators obtained by conjugating with `diag(B, B, ...)`.
pub fn scalar_reduction(basis: &EigenChannelBasis, g: &Geometry, truncation: usize) -> Result<Vec<ScalarJacobi>> {
    basis.lambdas.iter().map(|&l| ScalarJacobi::new(l, g, truncation)).collect()
}
