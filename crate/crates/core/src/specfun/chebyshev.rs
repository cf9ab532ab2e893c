use std::f64::consts::PI;

/// Chebyshev polynomial families used by the spectral measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChebKind {
    /// `T_n(cos t) = cos(n t)`
    First,
    /// `U_n(cos t) = sin((n+1) t) / sin t`
    Second,
    /// `V_n(cos t) = cos((n+1/2) t) / cos(t/2)`
    Third,
}

/// Evaluates `T_n`, `U_n` or `V_n` at `x` with the three-term recurrence
/// `2x P_n = P_{n+1} + P_{n-1}`.
pub fn cheb_eval(kind: ChebKind, n: usize, x: f64) -> f64 {
    let p1 = match kind {
        ChebKind::First => x,
        ChebKind::Second => 2.0 * x,
        ChebKind::Third => 2.0 * x - 1.0,
    };
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, p1);
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_m` extended to `m = -1` (where it vanishes), as used by the line families.
pub fn cheb_u_ext(m: i64, x: f64) -> f64 {
    match m {
        m if m < -1 => panic!("U_m is only defined here for m >= -1, got {m}"),
        -1 => 0.0,
        m => cheb_eval(ChebKind::Second, m as usize, x),
    }
}

/// Fills `out[k] = P_k(x)` for `k < out.len()`.
pub fn cheb_eval_all(kind: ChebKind, x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = match kind {
        ChebKind::First => x,
        ChebKind::Second => 2.0 * x,
        ChebKind::Third => 2.0 * x - 1.0,
    };
    for k in 2..out.len() {
        out[k] = 2.0 * x * out[k - 1] - out[k - 2];
    }
}

/// Zeros of `U_n`, `cos(k pi / (n+1))` for `k = 1..n`, ascending.
pub fn cheb_zeros(n: usize) -> Vec<f64> {
    (1..=n).rev().map(|k| (k as f64 * PI / (n + 1) as f64).cos()).collect()
}
