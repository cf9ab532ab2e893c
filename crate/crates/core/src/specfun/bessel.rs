use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Arguments up to this value use the power series.
const SERIES_LIMIT: f64 = 20.0;

fn check_arg(x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("Bessel argument must be >= 0, got {x}")));
    }
    Ok(())
}

fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Power series for `I_n(x)`, `n >= 0`.
fn series(n: u64, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * x;
    let lead = (n as f64 * half.ln() - ln_factorial(n)).exp();
    if lead == 0.0 {
        return 0.0;
    }
    let q = half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1u64;
    loop {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
        k += 1;
    }
    lead * sum
}

/// `e^{-x} I_n(x)` by Miller's downward recurrence, normalized with
/// `I_0 + 2 sum_{k>=1} I_k = e^x`.
fn miller_scaled(n: u64, x: f64) -> f64 {
    let top = (n as f64).max(x);
    let start = (top + 60.0 + 12.0 * top.sqrt()).ceil() as u64;
    let mut next = 0.0f64; // I_{k+1}
    let mut cur = 1e-280f64; // I_k
    let mut norm = 0.0f64;
    let mut want = 0.0f64;
    let mut k = start;
    loop {
        if k == n {
            want = cur;
        }
        if k == 0 {
            norm += cur;
            break;
        }
        norm += 2.0 * cur;
        let prev = next + (2.0 * k as f64 / x) * cur;
        next = cur;
        cur = prev;
        k -= 1;
        if cur > 1e250 {
            next *= 1e-250;
            cur *= 1e-250;
            norm *= 1e-250;
            want *= 1e-250;
        }
    }
    want / norm
}

/// Exponentially scaled `e^{-x} I_n(x)` for `x >= 0`.
pub fn bessel_i_scaled(n: i64, x: f64) -> Result<f64> {
    check_arg(x)?;
    let n = n.unsigned_abs();
    if x <= SERIES_LIMIT {
        Ok(series(n, x) * (-x).exp())
    } else {
        Ok(miller_scaled(n, x))
    }
}

/// Modified Bessel function of the first kind, `I_n(x)` for `x >= 0`.
pub fn bessel_i(n: i64, x: f64) -> Result<f64> {
    check_arg(x)?;
    let n = n.unsigned_abs();
    if x <= SERIES_LIMIT {
        Ok(series(n, x))
    } else {
        Ok(miller_scaled(n, x) * x.exp())
    }
}

/// `e^{-|y|} I_n(y)` for signed `y`, using `I_n(-y) = (-1)^n I_n(y)`.
pub fn bessel_i_scaled_signed(n: i64, y: f64) -> f64 {
    let v = bessel_i_scaled(n, y.abs()).expect("finite argument");
    if y < 0.0 && n.rem_euclid(2) == 1 {
        -v
    } else {
        v
    }
}

/// `(1/pi) int_0^pi e^{x cos t} cos(n t) dt` by the composite trapezoid rule,
/// computed on the scaled integrand `e^{x (cos t - 1)}`.
///
/// The integrand is smooth and periodic, so the trapezoid rule converges
/// geometrically; the panel count grows with `x` and `n`.
pub fn bessel_i_quadrature_scaled(n: i64, x: f64) -> Result<f64> {
    check_arg(x)?;
    let nn = n.unsigned_abs() as f64;
    let panels = (64.0 + 4.0 * nn + 8.0 * x + 20.0 * x.sqrt()).ceil() as usize;
    let h = PI / panels as f64;
    let f = |t: f64| (x * (t.cos() - 1.0)).exp() * (nn * t).cos();
    let mut sum = 0.5 * (f(0.0) + f(PI));
    for k in 1..panels {
        sum += f(k as f64 * h);
    }
    Ok(sum * h / PI)
}

/// Quadrature oracle for [`bessel_i`].
pub fn bessel_i_quadrature(n: i64, x: f64) -> Result<f64> {
    Ok(bessel_i_quadrature_scaled(n, x)? * x.exp())
}

/// Hankel asymptotic expansion `e^x / sqrt(2 pi x) sum_k (-1)^k a_k(n) / x^k`
/// truncated after `terms` terms.
pub fn bessel_i_hankel(n: i64, x: f64, terms: usize) -> f64 {
    let mu = 4.0 * (n as f64) * (n as f64);
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 0..terms {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            term *= -(mu - odd * odd) / (k as f64 * 8.0 * x);
        }
        sum += term;
    }
    x.exp() / (2.0 * PI * x).sqrt() * sum
}

/// Result of a Laplace transform that may diverge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LaplaceValue {
    Finite(f64),
    Divergent,
}

impl LaplaceValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            LaplaceValue::Finite(v) => Some(v),
            LaplaceValue::Divergent => None,
        }
    }
}

/// `int_0^inf e^{-s t} I_nu(alpha t) dt = (s^2-alpha^2)^{-1/2} ((s - sqrt(s^2-alpha^2))/alpha)^nu`
/// for `s > |alpha|`; divergent otherwise.
pub fn bessel_laplace(nu: u32, alpha: f64, s: f64) -> LaplaceValue {
    if alpha == 0.0 {
        return if s > 0.0 {
            LaplaceValue::Finite(if nu == 0 { 1.0 / s } else { 0.0 })
        } else {
            LaplaceValue::Divergent
        };
    }
    if s <= alpha.abs() {
        return LaplaceValue::Divergent;
    }
    let root = (s * s - alpha * alpha).sqrt();
    // (s - root)/alpha written without cancellation.
    let ratio = alpha / (s + root);
    LaplaceValue::Finite(ratio.powi(nu as i32) / root)
}
