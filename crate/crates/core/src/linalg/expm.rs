use super::matrix::{r, DenseMatrix, C64};

/// `e^{t a}` by scaling and squaring of a truncated Taylor series.
///
/// The squaring count brings `||t a||_1 / 2^s` below 1/2; the series runs
/// until the next term drops below `1e-17` relative to the partial sum.
pub fn expm(a: &DenseMatrix, t: f64) -> DenseMatrix {
    assert!(a.is_square(), "expm needs a square matrix");
    assert!(t >= 0.0, "expm needs t >= 0");
    let n = a.rows();
    let b = a.scale_real(t);
    let norm = b.norm_one();
    let mut s = 0u32;
    while norm / 2f64.powi(s as i32) > 0.5 {
        s += 1;
    }
    let b = b.scale_real(1.0 / 2f64.powi(s as i32));

    let mut sum = DenseMatrix::identity(n);
    let mut term = DenseMatrix::identity(n);
    for k in 1..=40 {
        term = (&term * &b).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.norm_one() <= 1e-17 * sum.norm_one() {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Linear operator with a matrix-vector product, for `expm_action`.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, v: &[C64]) -> Vec<C64>;
    /// Upper bound on the induced 1-norm.
    fn norm_bound(&self) -> f64;
}

impl LinearOperator for DenseMatrix {
    fn dim(&self) -> usize {
        self.rows()
    }
    fn apply(&self, v: &[C64]) -> Vec<C64> {
        self.matvec(v)
    }
    fn norm_bound(&self) -> f64 {
        self.norm_one()
    }
}

/// `e^{t A} v` by Taylor substeps of size `h` with `h ||A|| <= 1`.
pub fn expm_action<A: LinearOperator + ?Sized>(a: &A, v: &[C64], t: f64) -> Vec<C64> {
    assert_eq!(a.dim(), v.len(), "expm_action shape mismatch");
    assert!(t >= 0.0, "expm_action needs t >= 0");
    let norm = a.norm_bound() * t;
    let steps = norm.ceil().max(1.0) as usize;
    let h = t / steps as f64;
    let mut x = v.to_vec();
    for _ in 0..steps {
        let mut term = x.clone();
        let mut sum = x.clone();
        for k in 1..=60 {
            term = a.apply(&term);
            let f = r(h / k as f64);
            let mut tnorm = 0.0f64;
            for (s, z) in sum.iter_mut().zip(term.iter_mut()) {
                *z *= f;
                *s += *z;
                tnorm = tnorm.max(z.norm());
            }
            let snorm = sum.iter().fold(0.0f64, |m, z| m.max(z.norm()));
            if tnorm <= 1e-18 * snorm.max(f64::MIN_POSITIVE) {
                break;
            }
        }
        x = sum;
    }
    x
}
