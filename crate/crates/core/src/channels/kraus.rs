use crate::error::{Error, Result};
use crate::linalg::{r, DenseMatrix};

/// Normalization tolerance for `sum V^* V = I/2`.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Completely positive map `X -> sum V X V^*` on 2x2 matrices with
/// `sum V^* V = I/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kraus: Vec<DenseMatrix>,
}

/// `sum V^* V - I/2`, max entry modulus.
pub fn normalization_residual(kraus: &[DenseMatrix]) -> f64 {
    let mut acc = DenseMatrix::zeros(2, 2);
    for v in kraus {
        acc = &acc + &(&v.adjoint() * v);
    }
    acc.max_abs_diff(&DenseMatrix::identity(2).scale_real(0.5))
}

impl KrausChannel {
    pub fn new(kraus: Vec<DenseMatrix>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::Validation("channel needs at least one Kraus matrix".into()));
        }
        for (k, v) in kraus.iter().enumerate() {
            if v.rows() != 2 || v.cols() != 2 {
                return Err(Error::Shape(format!("Kraus matrix {k} is {}x{}, expected 2x2", v.rows(), v.cols())));
            }
            if !v.is_finite() {
                return Err(Error::Validation(format!("Kraus matrix {k} has non-finite entries")));
            }
        }
        let res = normalization_residual(&kraus);
        if res > NORMALIZATION_TOL {
            return Err(Error::Validation(format!("sum V^*V differs from I/2 by {res:.3e}")));
        }
        Ok(Self { kraus })
    }

    pub fn kraus(&self) -> &[DenseMatrix] {
        &self.kraus
    }

    pub fn normalization_residual(&self) -> f64 {
        normalization_residual(&self.kraus)
    }

    /// Applies `X -> sum V X V^*`.
    pub fn apply(&self, x: &DenseMatrix) -> DenseMatrix {
        let mut acc = DenseMatrix::zeros(2, 2);
        for v in &self.kraus {
            acc = &acc + &(&(v * x) * &v.adjoint());
        }
        acc
    }

    /// PQ-channel with representation `1/2 [[p,0,0,1-p],[0,q,r,0],[0,r,q,0],[1-p,0,0,p]]`,
    /// built from `I`, `sigma_z`, `sigma_x` and `[[0,1],[-1,0]]`.
    ///
    /// Needs `0 <= p <= 1`, `|q| <= p` and `|r| <= 1-p`.
    pub fn pq(p: f64, q: f64, rr: f64) -> Result<Self> {
        let ok = (0.0..=1.0).contains(&p) && q.abs() <= p + 1e-15 && rr.abs() <= 1.0 - p + 1e-15;
        if !ok || !q.is_finite() || !rr.is_finite() {
            return Err(Error::Validation(format!(
                "PQ parameters need 0<=p<=1, |q|<=p, |r|<=1-p (got p={p}, q={q}, r={rr})"
            )));
        }
        let a = ((p + q) / 4.0).max(0.0).sqrt();
        let b = ((p - q) / 4.0).max(0.0).sqrt();
        let cc = ((1.0 - p + rr) / 4.0).max(0.0).sqrt();
        let d = ((1.0 - p - rr) / 4.0).max(0.0).sqrt();
        let mats = [
            (a, [1.0, 0.0, 0.0, 1.0]),
            (b, [1.0, 0.0, 0.0, -1.0]),
            (cc, [0.0, 1.0, 1.0, 0.0]),
            (d, [0.0, 1.0, -1.0, 0.0]),
        ];
        let kraus = mats
            .iter()
            .filter(|(s, _)| *s > 0.0)
            .map(|(s, e)| DenseMatrix::from_real(2, 2, e).expect("2x2").scale_real(*s))
            .collect();
        Self::new(kraus)
    }

    /// Depolarizing channel, `p = 1 - s/2`, `q = 1 - s`, `r = 0`.
    pub fn depolarizing(s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Validation(format!("depolarizing strength must lie in [0, 1], got {s}")));
        }
        Self::pq(1.0 - s / 2.0, 1.0 - s, 0.0)
    }

    /// Single Kraus matrix `I / sqrt(2)`.
    pub fn identity_half() -> Self {
        Self::new(vec![DenseMatrix::identity(2).scale_real(std::f64::consts::FRAC_1_SQRT_2)]).expect("normalized")
    }

    /// Non-PQ unital example with Hermitian Kraus matrices
    /// `B = [[1,1],[1,0]]/sqrt(3)`, `C = [[0,-1],[-1,1]]/sqrt(3)`, scaled by `1/sqrt(2)`.
    pub fn segment_example() -> Self {
        let s = 1.0 / 6f64.sqrt();
        let b = DenseMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 0.0]).expect("2x2").scale_real(s);
        let cm = DenseMatrix::from_real(2, 2, &[0.0, -1.0, -1.0, 1.0]).expect("2x2").scale_real(s);
        Self::new(vec![b, cm]).expect("normalized")
    }

    /// Amplitude damping with decay `gamma`, scaled by `1/sqrt(2)`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::Validation(format!("damping must lie in [0, 1], got {gamma}")));
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let k0 = DenseMatrix::new(2, 2, vec![r(h), r(0.0), r(0.0), r(h * (1.0 - gamma).sqrt())]).expect("2x2");
        let k1 = DenseMatrix::new(2, 2, vec![r(0.0), r(h * gamma.sqrt()), r(0.0), r(0.0)]).expect("2x2");
        Self::new(vec![k0, k1])
    }
}
