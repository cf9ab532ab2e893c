use crate::channels::{trace_functional, EigenChannelBasis, QubitDensity};
use crate::error::{Error, Result};
use crate::generators::{required_margin, Boundary, Geometry};
use crate::kernels::{scalar_kernel, GoalState, KernelRequest, LAMBDA_BOUND};
use crate::linalg::{r, vec, C64};
use crate::specfun::{bessel_laplace, LaplaceValue};
use crate::spectra::scalar_measure;

/// Weights below this are treated as rounding noise.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Eigenvalues this close to `+-1/2` are snapped onto the edge of the range.
pub const EDGE_TOL: f64 = 1e-12;

/// Atoms closer than this to the origin count as sitting at zero.
const ZERO_ATOM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Recurrent,
    Transient,
}

/// `int_0^inf P_ii(t) dt`, possibly divergent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntegralValue {
    Finite(f64),
    Infinite,
}

impl IntegralValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            IntegralValue::Finite(v) => Some(v),
            IntegralValue::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == IntegralValue::Infinite
    }
}

impl From<LaplaceValue> for IntegralValue {
    fn from(v: LaplaceValue) -> Self {
        match v {
            LaplaceValue::Finite(x) => IntegralValue::Finite(x),
            LaplaceValue::Divergent => IntegralValue::Infinite,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceVerdict {
    pub site: i64,
    pub classification: Classification,
    pub integral: IntegralValue,
    /// `(lambda_k, w_k)` for every eigencomponent with a nonnegligible weight.
    pub contributing_lambdas: Vec<(f64, f64)>,
}

/// `sqrt(1 - 4 lambda^2)`, factored to keep accuracy near `|lambda| = 1/2`.
fn gap(lambda: f64) -> f64 {
    ((1.0 - 2.0 * lambda) * (1.0 + 2.0 * lambda)).max(0.0).sqrt()
}

/// `int_0^inf P^lambda_ii(t) dt` for the scalar chain.
///
/// Absorbing half-line: `(1 - r^{2i+2}) / sqrt(1-4 lambda^2)` with
/// `r^2 = (1-e)/(1+e)`, which tends to `2i+2` at `|lambda| = 1/2`.
/// Reflecting half-line: `L_0 + L_{2i+1}`; line: `L_0`, where `L_nu` is the
/// Laplace transform of `e^{-t} I_nu(2 lambda t)` at zero. Segments sum
/// `Q_i(x)^2 w / x` over the atoms.
pub fn scalar_return_integral(g: &Geometry, lambda: f64, i: i64) -> Result<IntegralValue> {
    if !lambda.is_finite() || lambda.abs() > LAMBDA_BOUND {
        return Err(Error::Validation(format!("need |lambda| <= 1/2, got {lambda}")));
    }
    g.check_site(i)?;
    // Eigenvalues of `1/2` come out of the solver with rounding noise.
    let lambda = if (lambda.abs() - 0.5).abs() <= EDGE_TOL { 0.5f64.copysign(lambda) } else { lambda };
    if lambda == 0.0 {
        return Ok(IntegralValue::Finite(1.0));
    }
    let laplace = |nu: i64| bessel_laplace(nu as u32, 2.0 * lambda, 1.0);
    Ok(match g {
        Geometry::HalfLine(Boundary::Absorbing) => {
            let e = gap(lambda);
            let n = (i + 1) as f64;
            if e == 0.0 {
                IntegralValue::Finite(2.0 * n)
            } else {
                let log_r2 = (-e).ln_1p() - e.ln_1p();
                IntegralValue::Finite(-(n * log_r2).exp_m1() / e)
            }
        }
        Geometry::HalfLine(Boundary::Reflecting) => match (laplace(0), laplace(2 * i + 1)) {
            (LaplaceValue::Finite(a), LaplaceValue::Finite(b)) => IntegralValue::Finite(a + b),
            _ => IntegralValue::Infinite,
        },
        Geometry::Line => laplace(0).into(),
        Geometry::Segment { .. } => {
            let m = scalar_measure(g, lambda)?;
            let fam = m.family();
            let mut sum = 0.0;
            for &(x, w) in &m.atoms {
                let q = fam.eval_all(x, i as usize + 1)[i as usize];
                let mass = q * q * w;
                if x.abs() <= ZERO_ATOM_TOL {
                    if mass > WEIGHT_TOL {
                        return Ok(IntegralValue::Infinite);
                    }
                    continue;
                }
                sum += mass / x;
            }
            IntegralValue::Finite(sum)
        }
    })
}

/// `w_k = (vec(I)^T B)_k (B^* vec(rho))_k`, so that the site-return
/// probability is `sum_k w_k P^{lambda_k}_ii(t)`.
pub fn eigencomponent_weights(basis: &EigenChannelBasis, rho: &QubitDensity) -> [f64; 4] {
    let b = &basis.basis;
    let coords = b.adjoint().matvec(&rho.vec());
    let tf = trace_functional();
    let mut w = [0.0; 4];
    for (k, wk) in w.iter_mut().enumerate() {
        let left: C64 = (0..4).map(|a| r(tf[a]) * b[(a, k)]).sum();
        *wk = (left * coords[k]).re;
    }
    w
}

/// Weights of the state-return probability `Tr(gamma X)`, with
/// `vec(gamma^T)` in place of `vec(I)`.
fn goal_weights(basis: &EigenChannelBasis, rho: &QubitDensity, goal: &GoalState) -> [f64; 4] {
    let b = &basis.basis;
    let coords = b.adjoint().matvec(&rho.vec());
    let left = vec(&goal.gamma.transpose());
    let mut w = [0.0; 4];
    for (k, wk) in w.iter_mut().enumerate() {
        let l: C64 = (0..4).map(|a| left[a] * b[(a, k)]).sum();
        *wk = (l * coords[k]).re;
    }
    w
}

/// `int_0^inf` of the probability of returning to `i` in the goal state,
/// having started there in `rho`.
///
/// Components whose scalar integral diverges count only when their weight
/// exceeds [`WEIGHT_TOL`] in absolute value.
pub fn state_return_integral(
    basis: &EigenChannelBasis,
    g: &Geometry,
    i: i64,
    rho: &QubitDensity,
    goal: &GoalState,
) -> Result<IntegralValue> {
    g.check_site(i)?;
    let mut total = 0.0;
    for (&l, &wk) in basis.lambdas.iter().zip(&goal_weights(basis, rho, goal)) {
        if wk.abs() <= WEIGHT_TOL {
            continue;
        }
        match scalar_return_integral(g, l, i)? {
            IntegralValue::Finite(v) => total += wk * v,
            IntegralValue::Infinite => return Ok(IntegralValue::Infinite),
        }
    }
    Ok(IntegralValue::Finite(total))
}

/// Decides whether site `i` is `rho`-recurrent.
///
/// The return integral diverges iff the total weight on eigencomponents with
/// a divergent scalar integral exceeds [`WEIGHT_TOL`].
pub fn recurrence_classify(
    basis: &EigenChannelBasis,
    g: &Geometry,
    i: i64,
    rho: &QubitDensity,
) -> Result<RecurrenceVerdict> {
    g.check_site(i)?;
    let w = eigencomponent_weights(basis, rho);
    let mut divergent = 0.0;
    let mut total = 0.0;
    let mut contributing = Vec::new();
    for (&l, &wk) in basis.lambdas.iter().zip(&w) {
        if wk.abs() <= WEIGHT_TOL {
            continue;
        }
        contributing.push((l, wk));
        match scalar_return_integral(g, l, i)? {
            IntegralValue::Finite(v) => total += wk * v,
            IntegralValue::Infinite => divergent += wk,
        }
    }
    let (classification, integral) = if divergent > WEIGHT_TOL {
        (Classification::Recurrent, IntegralValue::Infinite)
    } else {
        (Classification::Transient, IntegralValue::Finite(total))
    };
    Ok(RecurrenceVerdict { site: i, classification, integral, contributing_lambdas: contributing })
}

/// Mass lost through absorbing barriers by time `t` from site `j`:
/// `1 - sum_i P_ij(t)`.
///
/// Half-lines sum over `0..=j + required_margin(t)`, which leaves less
/// than `1e-10` outside the window.
pub fn absorption_deficit(g: &Geometry, lambda: f64, j: i64, t: f64) -> Result<f64> {
    let hi = match g {
        Geometry::HalfLine(Boundary::Absorbing) => j + required_margin(t) as i64,
        Geometry::Segment { sites, left, right } if *left == Boundary::Absorbing || *right == Boundary::Absorbing => {
            *sites as i64 - 1
        }
        _ => return Err(Error::Validation(format!("absorption deficit needs an absorbing geometry, got {g}"))),
    };
    g.check_site(j)?;
    let mut kept = 0.0;
    for i in (0..=hi).rev() {
        kept += scalar_kernel(&KernelRequest::new(*g, lambda, i, j, t)?);
    }
    Ok(1.0 - kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{eigenbasis, superop_of, KrausChannel};
    use crate::generators::default_truncation;
    use crate::kernels::{evolve_oracle, total_trace};
    use crate::specfun::gauss_legendre;

    fn absorbing() -> Geometry {
        Geometry::HalfLine(Boundary::Absorbing)
    }

    fn reflecting() -> Geometry {
        Geometry::HalfLine(Boundary::Reflecting)
    }

    /// `int_0^inf P_ii` by Gauss-Legendre on `t = u/(1-u)`, split into panels.
    fn numeric_integral(g: Geometry, l: f64, i: i64) -> f64 {
        let (x, w) = gauss_legendre(64);
        let panels = 200;
        let mut sum = 0.0;
        for p in 0..panels {
            let (a, b) = (p as f64 / panels as f64, (p + 1) as f64 / panels as f64);
            for (xk, wk) in x.iter().zip(&w) {
                let u = 0.5 * (a + b) + 0.5 * (b - a) * xk;
                let t = u / (1.0 - u);
                let jac = 1.0 / ((1.0 - u) * (1.0 - u));
                let k = scalar_kernel(&KernelRequest::new(g, l, i, i, t).unwrap());
                sum += 0.5 * (b - a) * wk * k * jac;
            }
        }
        sum
    }

    #[test]
    fn absorbing_returns_two_i_plus_two() {
        for i in 0..6 {
            let v = scalar_return_integral(&absorbing(), 0.5, i).unwrap();
            assert_eq!(v, IntegralValue::Finite((2 * i + 2) as f64));
            let v = scalar_return_integral(&absorbing(), -0.5, i).unwrap();
            assert_eq!(v, IntegralValue::Finite((2 * i + 2) as f64));
        }
    }

    #[test]
    fn absorbing_continuous_at_the_edge() {
        let near = scalar_return_integral(&absorbing(), 0.5 - 1e-9, 3).unwrap().finite().unwrap();
        // 2n - 2n^2 e + O(e^2) with e = sqrt(1 - 4 lambda^2)
        let e = (4e-9f64 * (1.0 - 1e-9)).sqrt();
        assert!((near - (8.0 - 32.0 * e)).abs() < 1e-6, "{near}");
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for g in [absorbing(), reflecting(), Geometry::Line] {
            for &l in &[0.2, -1.0 / 3.0, 0.3] {
                for i in [0, 2, 4] {
                    let closed = scalar_return_integral(&g, l, i).unwrap().finite().unwrap();
                    let num = numeric_integral(g, l, i);
                    assert!((closed - num).abs() < 1e-9, "{g} l={l} i={i}: {closed} vs {num}");
                }
            }
        }
    }

    #[test]
    fn reflecting_third_value() {
        // 1/e (1 + r^5), e = sqrt(5)/3, r = (1 - e)/(2/3)
        let e = 5f64.sqrt() / 3.0;
        let r = (1.0 - e) * 1.5;
        let expect = (1.0 + r.powi(5)) / e;
        let v = scalar_return_integral(&reflecting(), 1.0 / 3.0, 2).unwrap().finite().unwrap();
        assert!((v - expect).abs() < 1e-14);
        assert!((v - 1.352_549_156_242_1).abs() < 1e-12);
    }

    #[test]
    fn divergent_at_half() {
        assert!(scalar_return_integral(&reflecting(), 0.5, 3).unwrap().is_infinite());
        assert!(scalar_return_integral(&Geometry::Line, -0.5, 0).unwrap().is_infinite());
        let seg = Geometry::segment(4, Boundary::Reflecting, Boundary::Reflecting).unwrap();
        assert!(scalar_return_integral(&seg, 0.5, 1).unwrap().is_infinite());
        let seg = Geometry::segment(4, Boundary::Absorbing, Boundary::Reflecting).unwrap();
        assert!(!scalar_return_integral(&seg, 0.5, 1).unwrap().is_infinite());
    }

    #[test]
    fn segment_integral_matches_inverse() {
        use crate::generators::ScalarJacobi;
        use crate::linalg::inverse;
        let g = Geometry::segment(5, Boundary::Absorbing, Boundary::Reflecting).unwrap();
        let a = ScalarJacobi::new(0.4, &g, 0).unwrap().to_dense();
        // int e^{At} = -A^{-1}
        let inv = inverse(&a).unwrap();
        for i in 0..5 {
            let v = scalar_return_integral(&g, 0.4, i).unwrap().finite().unwrap();
            assert!((v + inv[(i as usize, i as usize)].re).abs() < 1e-10);
        }
    }

    #[test]
    fn weights_sum_to_trace() {
        let ch = KrausChannel::segment_example();
        let basis = eigenbasis(&superop_of(&ch).unwrap()).unwrap();
        let rho = QubitDensity::from_bloch(0.2, -0.3, 0.4).unwrap();
        let w = eigencomponent_weights(&basis, &rho);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pq_geometry_statements() {
        let ch = KrausChannel::pq(5.0 / 6.0, 2.0 / 3.0, 0.0).unwrap();
        let basis = eigenbasis(&superop_of(&ch).unwrap()).unwrap();
        for rho in
            [QubitDensity::e11(), QubitDensity::uniform_plus(), QubitDensity::from_bloch(0.0, 0.0, -1.0).unwrap()]
        {
            let v = recurrence_classify(&basis, &absorbing(), 3, &rho).unwrap();
            assert_eq!(v.classification, Classification::Transient);
            assert!((v.integral.finite().unwrap() - 8.0).abs() < 1e-12);
            for g in [reflecting(), Geometry::Line] {
                let v = recurrence_classify(&basis, &g, 3, &rho).unwrap();
                assert_eq!(v.classification, Classification::Recurrent);
                assert!(v.integral.is_infinite());
            }
        }
    }

    #[test]
    fn state_return_splits_site_return() {
        let ch = KrausChannel::pq(0.7, 0.4, -0.2).unwrap();
        let basis = eigenbasis(&superop_of(&ch).unwrap()).unwrap();
        let goal = GoalState::new([r(0.6), crate::linalg::c(0.0, 0.8)]).unwrap();
        let rho = QubitDensity::from_bloch(0.3, -0.2, 0.5).unwrap();
        let g = absorbing();
        let a = state_return_integral(&basis, &g, 2, &rho, &goal).unwrap().finite().unwrap();
        let b = state_return_integral(&basis, &g, 2, &rho, &goal.antipodal()).unwrap().finite().unwrap();
        let site = recurrence_classify(&basis, &g, 2, &rho).unwrap().integral.finite().unwrap();
        assert!((a + b - site).abs() < 1e-12);
        assert!(a > 0.0 && b > 0.0);
        assert!(state_return_integral(&basis, &reflecting(), 2, &rho, &goal).unwrap().is_infinite());
    }

    #[test]
    fn deficit_properties() {
        assert_eq!(absorption_deficit(&absorbing(), 0.5, 0, 0.0).unwrap(), 0.0);
        let mut prev = 0.0;
        for &t in &[0.5, 1.0, 2.0, 4.0, 8.0] {
            let d = absorption_deficit(&absorbing(), 0.5, 0, t).unwrap();
            assert!(d >= prev && d >= 0.0);
            prev = d;
        }
        assert!(absorption_deficit(&absorbing(), 0.5, 0, 2000.0).unwrap() > 0.95);
        assert!(absorption_deficit(&Geometry::Line, 0.5, 0, 1.0).is_err());
    }

    #[test]
    fn deficit_matches_oracle_trace_loss() {
        let ch = KrausChannel::pq(5.0 / 6.0, 2.0 / 3.0, 0.0).unwrap();
        let g = absorbing();
        for &t in &[0.5, 3.0] {
            let tr = default_truncation(&g, &[1], t);
            let blocks = evolve_oracle(&ch, &g, &QubitDensity::e11(), 1, t, tr).unwrap();
            let lost = 1.0 - total_trace(&blocks);
            let d = absorption_deficit(&g, 0.5, 1, t).unwrap();
            assert!((lost - d).abs() < 1e-8, "{lost} vs {d}");
        }
    }
}
