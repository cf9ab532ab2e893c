use std::f64::consts::PI;

use super::polynomials::PolynomialFamily;
use crate::error::{Error, Result};
use crate::generators::{Boundary, Geometry, ScalarJacobi};
use crate::linalg::{hermitian_eig, C64};
use crate::specfun::{gauss_chebyshev, ChebKind, QuadratureRule, DEFAULT_POINTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureForm {
    AbsolutelyContinuous,
    Atomic,
}

/// Orthogonality measure of a scalar Jacobi generator.
///
/// For the line this is the `(1,1)` entry of the spectral matrix; see
/// [`super::SpectralMatrix2`] for the full object.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarMeasure {
    pub geometry: Geometry,
    pub lambda: f64,
    /// `[1 - 2|lambda|, 1 + 2|lambda|]`.
    pub support: (f64, f64),
    /// `(x_k, alpha_k)` sorted by abscissa; empty for continuous measures.
    pub atoms: Vec<(f64, f64)>,
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if lambda == 0.0 {
        return Err(Error::Degenerate("lambda = 0 gives a decoupled walk with no spectral measure".into()));
    }
    if !lambda.is_finite() || lambda.abs() > 0.5 + 1e-15 {
        return Err(Error::Validation(format!("need 0 < |lambda| <= 1/2, got {lambda}")));
    }
    Ok(())
}

/// Atoms of the reflecting segment with `sites = N + 1`.
fn reflecting_segment_atoms(lambda: f64, sites: usize) -> Vec<(f64, f64)> {
    let m = sites as f64;
    let mut atoms: Vec<(f64, f64)> = (0..sites)
        .map(|k| {
            let c = (k as f64 * PI / m).cos();
            let alpha = if k == 0 { 1.0 / m } else { (1.0 + c) / m };
            (1.0 - 2.0 * lambda * c, alpha)
        })
        .collect();
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    atoms
}

/// Eigenvalues of `-A` paired with the squared first eigenvector component.
///
/// The first row of the eigenvector matrix has unit norm; dividing by its
/// computed norm removes the drift accumulated by the rotations.
fn eigensolve_atoms(lambda: f64, g: &Geometry) -> Result<Vec<(f64, f64)>> {
    let a = ScalarJacobi::new(lambda, g, 0)?;
    let eig = hermitian_eig(&a.to_dense().scale_real(-1.0))?;
    let row: Vec<f64> = (0..eig.eigenvalues.len()).map(|k| eig.basis[(0, k)].norm_sqr()).collect();
    let norm: f64 = row.iter().sum();
    let mut atoms: Vec<(f64, f64)> = eig.eigenvalues.iter().zip(&row).map(|(&x, &w)| (x, w / norm)).collect();
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(atoms)
}

/// Both ends absorbing: abscissas by eigensolve, weights `2/(N+2) sin^2((k+1) pi/(N+2))`.
fn absorbing_segment_atoms(lambda: f64, g: &Geometry, sites: usize) -> Result<Vec<(f64, f64)>> {
    let xs = eigensolve_atoms(lambda, g)?;
    let m = (sites + 1) as f64;
    // The weights are symmetric in k, so pairing with ascending abscissas is
    // correct for either sign of lambda.
    Ok(xs.iter().enumerate().map(|(k, &(x, _))| (x, 2.0 / m * ((k + 1) as f64 * PI / m).sin().powi(2))).collect())
}

/// Spectral measure for the scalar generator with off-diagonal `lambda`.
pub fn scalar_measure(g: &Geometry, lambda: f64) -> Result<ScalarMeasure> {
    check_lambda(lambda)?;
    let support = (1.0 - 2.0 * lambda.abs(), 1.0 + 2.0 * lambda.abs());
    let atoms = match *g {
        Geometry::Segment { sites, left, right } => match (left, right) {
            (Boundary::Reflecting, Boundary::Reflecting) => reflecting_segment_atoms(lambda, sites),
            (Boundary::Absorbing, Boundary::Absorbing) => absorbing_segment_atoms(lambda, g, sites)?,
            _ => eigensolve_atoms(lambda, g)?,
        },
        _ => Vec::new(),
    };
    Ok(ScalarMeasure { geometry: *g, lambda, support, atoms })
}

impl ScalarMeasure {
    pub fn form(&self) -> MeasureForm {
        if self.geometry.is_finite() {
            MeasureForm::Atomic
        } else {
            MeasureForm::AbsolutelyContinuous
        }
    }

    /// `sigma_- = 1 - 2 lambda`, `sigma_+ = 1 + 2 lambda`, signed.
    pub fn sigmas(&self) -> (f64, f64) {
        (1.0 - 2.0 * self.lambda, 1.0 + 2.0 * self.lambda)
    }

    /// Density on the support; zero outside it and for atomic measures.
    pub fn density(&self, x: f64) -> f64 {
        let (lo, hi) = self.support;
        if !(x > lo && x < hi) || self.form() == MeasureForm::Atomic {
            return 0.0;
        }
        let l = self.lambda;
        let (sm, sp) = self.sigmas();
        match self.geometry {
            Geometry::HalfLine(Boundary::Absorbing) => ((x - sm) * (sp - x)).sqrt() / (2.0 * PI * l * l),
            Geometry::HalfLine(Boundary::Reflecting) => ((sp - x) / (x - sm)).sqrt() / (2.0 * PI * l.abs()),
            Geometry::Line => 1.0 / (PI * ((x - lo) * (hi - x)).sqrt()),
            Geometry::Segment { .. } => 0.0,
        }
    }

    /// Chebyshev weight left after `x = 1 - 2 lambda u`, and the constant in
    /// front of it.
    fn chebyshev_form(&self) -> (ChebKind, f64) {
        match self.geometry {
            Geometry::HalfLine(Boundary::Absorbing) => (ChebKind::Second, 2.0 / PI),
            Geometry::HalfLine(Boundary::Reflecting) => (ChebKind::Third, 1.0 / PI),
            _ => (ChebKind::First, 1.0 / PI),
        }
    }

    /// Gauss rule in `x` with `points` nodes (ignored for atomic measures).
    pub fn rule(&self, points: usize) -> Vec<(f64, f64)> {
        if self.form() == MeasureForm::Atomic {
            return self.atoms.clone();
        }
        let (kind, scale) = self.chebyshev_form();
        let QuadratureRule { nodes, weights, .. } = gauss_chebyshev(kind, points);
        nodes.iter().zip(&weights).map(|(&u, &w)| (1.0 - 2.0 * self.lambda * u, scale * w)).collect()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.integrate_with(DEFAULT_POINTS, f)
    }

    pub fn integrate_with(&self, points: usize, f: impl Fn(f64) -> f64) -> f64 {
        self.rule(points).iter().map(|&(x, w)| w * f(x)).sum()
    }

    pub fn total_mass(&self) -> f64 {
        match self.form() {
            MeasureForm::Atomic => self.atoms.iter().map(|a| a.1).sum(),
            MeasureForm::AbsolutelyContinuous => self.integrate(|_| 1.0),
        }
    }

    /// `true` when `z` lies on the support (the interval, or an atom).
    pub fn touches(&self, z: C64) -> bool {
        let scale = 1.0 + z.norm();
        if z.im.abs() > 1e-14 * scale {
            return false;
        }
        match self.form() {
            MeasureForm::AbsolutelyContinuous => z.re >= self.support.0 && z.re <= self.support.1,
            MeasureForm::Atomic => self.atoms.iter().any(|a| (a.0 - z.re).abs() <= 1e-14 * scale),
        }
    }

    /// `int (x - z)^{-1} dm(x)`.
    pub fn stieltjes(&self, z: C64) -> Result<C64> {
        if self.touches(z) {
            return Err(Error::Domain(format!("z = {z} lies on the support of the measure")));
        }
        let points = match self.form() {
            MeasureForm::Atomic => 0,
            MeasureForm::AbsolutelyContinuous => {
                // Gauss converges like rho^{-2m}, rho the Bernstein ellipse through z.
                let w = (C64::new(1.0, 0.0) - z) / (2.0 * self.lambda.abs());
                let rho = (w + (w * w - 1.0).sqrt()).norm().max((w - (w * w - 1.0).sqrt()).norm());
                ((20.0 / rho.ln()).ceil() as usize).clamp(DEFAULT_POINTS, 1 << 16)
            }
        };
        Ok(self.rule(points).iter().map(|&(x, w)| w / (x - z)).sum())
    }

    /// Orthonormal polynomials of this measure (first family on the line).
    pub fn family(&self) -> PolynomialFamily {
        PolynomialFamily { geometry: self.geometry, lambda: self.lambda }
    }
}

/// Closed-form `int (x - z)^{-1} dm(x)` for the two half-line measures.
///
/// The root is `sqrt(z - sigma_-) sqrt(z - sigma_+)`, which behaves like `z`
/// at infinity with its cut on the support.
pub fn stieltjes_closed_form(g: &Geometry, lambda: f64, z: C64) -> Result<C64> {
    check_lambda(lambda)?;
    let sm = 1.0 - 2.0 * lambda;
    let sp = 1.0 + 2.0 * lambda;
    let root = (z - sm).sqrt() * (z - sp).sqrt();
    match g {
        Geometry::HalfLine(Boundary::Absorbing) => Ok(-(z - 1.0 - root) / (2.0 * lambda * lambda)),
        Geometry::HalfLine(Boundary::Reflecting) => Ok(-(z - sm - root) / (2.0 * lambda * (z - sm))),
        _ => Err(Error::Unsupported(format!("no closed-form Stieltjes transform for the {g}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn all_geometries() -> Vec<Geometry> {
        let mut v =
            vec![Geometry::Line, Geometry::HalfLine(Boundary::Absorbing), Geometry::HalfLine(Boundary::Reflecting)];
        for sites in [2, 5, 17] {
            for (l, r) in [
                (Boundary::Reflecting, Boundary::Reflecting),
                (Boundary::Absorbing, Boundary::Absorbing),
                (Boundary::Reflecting, Boundary::Absorbing),
                (Boundary::Absorbing, Boundary::Reflecting),
            ] {
                v.push(Geometry::segment(sites, l, r).unwrap());
            }
        }
        v
    }

    #[test]
    fn masses_are_one() {
        for g in all_geometries() {
            for &l in &[0.5, 1.0 / 3.0, 0.25, -0.25, -0.5] {
                let m = scalar_measure(&g, l).unwrap();
                assert!((m.total_mass() - 1.0).abs() <= 1e-10, "{g} {l}");
            }
        }
    }

    #[test]
    fn lambda_checks() {
        assert!(matches!(scalar_measure(&Geometry::Line, 0.0), Err(Error::Degenerate(_))));
        assert!(matches!(scalar_measure(&Geometry::Line, 0.6), Err(Error::Validation(_))));
    }

    #[test]
    fn absorbing_density_at_centre() {
        let m = scalar_measure(&Geometry::HalfLine(Boundary::Absorbing), 0.5).unwrap();
        assert!((m.density(1.0) - 2.0 / PI).abs() < 1e-15);
        assert_eq!(m.density(2.5), 0.0);
    }

    #[test]
    fn densities_integrate_to_one_by_midpoint() {
        // Independent check of the densities themselves, away from the rules.
        for g in [Geometry::Line, Geometry::HalfLine(Boundary::Absorbing), Geometry::HalfLine(Boundary::Reflecting)] {
            for &l in &[0.3, -0.3] {
                let m = scalar_measure(&g, l).unwrap();
                let (lo, hi) = m.support;
                let n = 20000;
                // x = centre - half cos(theta) removes the endpoint singularities.
                let (mid, half) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
                let h = PI / n as f64;
                let total: f64 = (0..n)
                    .map(|k| {
                        let th = (k as f64 + 0.5) * h;
                        m.density(mid - half * th.cos()) * half * th.sin() * h
                    })
                    .sum();
                assert!((total - 1.0).abs() < 1e-7, "{g} {l}: {total}");
            }
        }
    }

    #[test]
    fn segment_reflecting_two_sites() {
        let g = Geometry::segment(2, Boundary::Reflecting, Boundary::Reflecting).unwrap();
        let l = 0.3;
        let m = scalar_measure(&g, l).unwrap();
        assert_eq!(m.atoms.len(), 2);
        assert!((m.atoms[0].0 - (1.0 - 2.0 * l)).abs() < 1e-15 && (m.atoms[0].1 - 0.5).abs() < 1e-15);
        assert!((m.atoms[1].0 - 1.0).abs() < 1e-15 && (m.atoms[1].1 - 0.5).abs() < 1e-15);
        let eig = eigensolve_atoms(l, &g).unwrap();
        for (a, b) in m.atoms.iter().zip(&eig) {
            assert!((a.0 - b.0).abs() < 1e-14 && (a.1 - b.1).abs() < 1e-14);
        }
    }

    #[test]
    fn segment_closed_forms_match_eigensolve() {
        for sites in [3, 6, 11] {
            for &l in &[0.5, -1.0 / 3.0] {
                let g = Geometry::segment(sites, Boundary::Reflecting, Boundary::Reflecting).unwrap();
                let closed = scalar_measure(&g, l).unwrap().atoms;
                let eig = eigensolve_atoms(l, &g).unwrap();
                for (a, b) in closed.iter().zip(&eig) {
                    assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
                }
                let g = Geometry::segment(sites, Boundary::Absorbing, Boundary::Absorbing).unwrap();
                let closed = scalar_measure(&g, l).unwrap().atoms;
                let eig = eigensolve_atoms(l, &g).unwrap();
                let m = (sites + 1) as f64;
                for (k, (a, b)) in closed.iter().zip(&eig).enumerate() {
                    assert!((a.1 - b.1).abs() < 1e-12);
                    // Abscissas follow N + 2 = sites + 1 in the denominator.
                    let x = 1.0 - 2.0 * l.abs() * ((k + 1) as f64 * PI / m).cos();
                    assert!((a.0 - x).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn atomic_weights_sum_exactly() {
        for n in 1..=50 {
            let g = Geometry::segment(n + 1, Boundary::Reflecting, Boundary::Reflecting).unwrap();
            let m = scalar_measure(&g, 1.0 / 3.0).unwrap();
            assert!((m.total_mass() - 1.0).abs() <= 1e-14, "N={n}");
        }
    }

    fn gram(g: &Geometry, l: f64, deg: usize) -> f64 {
        let m = scalar_measure(g, l).unwrap();
        let fam = m.family();
        let rule = m.rule(DEFAULT_POINTS);
        let mut worst: f64 = 0.0;
        let vals: Vec<Vec<f64>> = rule.iter().map(|&(x, _)| fam.eval_all(x, deg + 1)).collect();
        for a in 0..=deg {
            for b in 0..=deg {
                let s: f64 = rule.iter().zip(&vals).map(|(&(_, w), q)| w * q[a] * q[b]).sum();
                let e = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((s - e).abs());
            }
        }
        worst
    }

    #[test]
    fn gram_matrices_are_identity() {
        for &l in &[0.5, 1.0 / 3.0, 0.25, -1.0 / 3.0] {
            for g in [Geometry::HalfLine(Boundary::Absorbing), Geometry::HalfLine(Boundary::Reflecting)] {
                assert!(gram(&g, l, 20) <= 1e-9, "{g} {l}");
            }
            for (lb, rb) in [
                (Boundary::Reflecting, Boundary::Reflecting),
                (Boundary::Absorbing, Boundary::Absorbing),
                (Boundary::Reflecting, Boundary::Absorbing),
                (Boundary::Absorbing, Boundary::Reflecting),
            ] {
                let g = Geometry::segment(9, lb, rb).unwrap();
                assert!(gram(&g, l, 8) <= 1e-9, "{g} {l}");
            }
        }
    }

    #[test]
    fn stieltjes_matches_closed_forms() {
        for g in [Geometry::HalfLine(Boundary::Absorbing), Geometry::HalfLine(Boundary::Reflecting)] {
            for &l in &[0.25, -0.25, 0.5, 1.0 / 3.0] {
                let m = scalar_measure(&g, l).unwrap();
                for z in [c(2.0, 0.0), c(-0.5, 0.0), c(1.0, 0.3), c(0.9, -1.2), c(1.02, 0.01)] {
                    if m.touches(z) {
                        continue;
                    }
                    let q = m.stieltjes(z).unwrap();
                    let cf = stieltjes_closed_form(&g, l, z).unwrap();
                    assert!((q - cf).norm() <= 1e-9, "{g} l={l} z={z}: {q} vs {cf}");
                }
            }
        }
    }

    #[test]
    fn stieltjes_at_infinity_and_on_support() {
        for g in all_geometries() {
            let m = scalar_measure(&g, 0.25).unwrap();
            // z S(z) = -1 - mean/z + O(z^-2).
            let mean = m.integrate(|x| x);
            for z in [c(-1e6, 0.0), c(1e6, 0.0), c(0.0, 1e6)] {
                let zs = z * m.stieltjes(z).unwrap();
                assert!((zs + 1.0 + mean / z).norm() <= 1e-11);
            }
            let z = c(-1e6, 0.0);
            assert!((z * m.stieltjes(z).unwrap() + 1.0).norm() <= 1e-6);
            let on = if m.atoms.is_empty() { c(1.1, 0.0) } else { c(m.atoms[0].0, 0.0) };
            assert!(matches!(m.stieltjes(on), Err(Error::Domain(_))));
        }
    }
}
