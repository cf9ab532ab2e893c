//! Cross-module invariants checked on random inputs.

use crate::analysis::{optimal_initial_state, recurrence_classify, Classification};
use crate::generators::{Boundary, Geometry};
use crate::kernels::{scalar_kernel, site_probability, state_probability, GoalState, KernelRequest};
use crate::linalg::c;
use crate::spectra::scalar_measure;
use crate::{eigenbasis, superop_of, KrausChannel, QubitDensity};
use proptest::prelude::*;

fn boundary() -> impl Strategy<Value = Boundary> {
    prop_oneof![Just(Boundary::Absorbing), Just(Boundary::Reflecting)]
}

fn nonzero_lambda() -> impl Strategy<Value = f64> {
    (0.02f64..=0.5, any::<bool>()).prop_map(|(l, neg)| if neg { -l } else { l })
}

fn bloch() -> impl Strategy<Value = [f64; 3]> {
    (0.0f64..=1.0, -1.0f64..=1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(rad, ct, phi)| {
        let st = (1.0 - ct * ct).sqrt();
        [rad * st * phi.cos(), rad * st * phi.sin(), rad * ct]
    })
}

fn goal() -> impl Strategy<Value = GoalState> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("nonzero", |v| v.0.abs() + v.1.abs() + v.2.abs() + v.3.abs() > 1e-3)
        .prop_map(|(a, b, cc, d)| GoalState::normalized([c(a, b), c(cc, d)]).unwrap())
}

fn pq_channel() -> impl Strategy<Value = KrausChannel> {
    (0.0f64..=1.0, -1.0f64..=1.0, -1.0f64..=1.0)
        .prop_map(|(p, qs, rs)| KrausChannel::pq(p, qs * p, rs * (1.0 - p)).unwrap())
}

fn kernel(g: Geometry, l: f64, i: i64, j: i64, t: f64) -> f64 {
    scalar_kernel(&KernelRequest::new(g, l, i, j, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn segment_chapman_kolmogorov(
        sites in 2usize..9, lb in boundary(), rb in boundary(), l in nonzero_lambda(),
        s in 0.0f64..5.0, t in 0.0f64..5.0,
    ) {
        let g = Geometry::segment(sites, lb, rb).unwrap();
        let n = sites as i64;
        for i in 0..n {
            for j in 0..n {
                let conv: f64 = (0..n).map(|k| kernel(g, l, i, k, s) * kernel(g, l, k, j, t)).sum();
                prop_assert!((conv - kernel(g, l, i, j, s + t)).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn line_chapman_kolmogorov(l in nonzero_lambda(), s in 0.0f64..4.0, t in 0.0f64..4.0, i in -3i64..=3, j in -3i64..=3) {
        let reach = 60;
        let conv: f64 = (-reach..=reach).map(|k| kernel(Geometry::Line, l, i, k, s) * kernel(Geometry::Line, l, k, j, t)).sum();
        prop_assert!((conv - kernel(Geometry::Line, l, i, j, s + t)).abs() <= 1e-8);
    }

    #[test]
    fn geometry_ordering(l in 0.2f64..=0.5, t in 1.0f64..10.0, i in 0i64..=2, j in 0i64..=2) {
        let re = kernel(Geometry::HalfLine(Boundary::Reflecting), l, i, j, t);
        let li = kernel(Geometry::Line, l, i, j, t);
        let ab = kernel(Geometry::HalfLine(Boundary::Absorbing), l, i, j, t);
        prop_assert!(re > li && li > ab);
    }

    #[test]
    fn measure_has_unit_mass(l in nonzero_lambda()) {
        for g in [Geometry::Line, Geometry::HalfLine(Boundary::Absorbing), Geometry::HalfLine(Boundary::Reflecting)] {
            let m = scalar_measure(&g, l).unwrap();
            prop_assert!((m.total_mass() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn state_below_site(ch in pq_channel(), b in bloch(), goal in goal(), t in 0.0f64..6.0, i in 0i64..4, j in 0i64..4) {
        let basis = eigenbasis(&superop_of(&ch).unwrap()).unwrap();
        let rho = QubitDensity::from_bloch(b[0], b[1], b[2]).unwrap();
        for g in [Geometry::Line, Geometry::HalfLine(Boundary::Absorbing), Geometry::HalfLine(Boundary::Reflecting)] {
            let s = site_probability(&basis, &g, &rho, j, i, t).unwrap();
            let st = state_probability(&basis, &g, &rho, j, i, &goal, t).unwrap();
            prop_assert!(st <= s + 1e-12 && st >= -1e-12);
        }
    }

    #[test]
    fn optimum_identities(ch in pq_channel(), goal in goal(), t in 0.1f64..6.0, i in 0i64..4, j in 0i64..4) {
        let basis = eigenbasis(&superop_of(&ch).unwrap()).unwrap();
        let g = Geometry::HalfLine(Boundary::Absorbing);
        let opt = optimal_initial_state(&basis, &g, i, j, t, &goal).unwrap();
        let [a, b, cc, d] = opt.coefficients;
        let n = (a * a + b * b + cc * cc).sqrt();
        prop_assert!((opt.value_plus + opt.value_minus - 2.0 * d).abs() <= 1e-12);
        prop_assert!((opt.value_plus - opt.value_minus - 2.0 * n).abs() <= 1e-12);
        let hi = state_probability(&basis, &g, &opt.rho_plus, j, i, &goal, t).unwrap();
        let lo = state_probability(&basis, &g, &opt.rho_minus, j, i, &goal, t).unwrap();
        prop_assert!(hi >= lo);
        prop_assert!(opt.degenerate || hi > lo);
        if !opt.degenerate {
            prop_assert!((opt.rho_plus.bloch_norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn pq_recurrence_is_geometry_level(ch in pq_channel(), b in bloch(), i in 0i64..6) {
        let basis = eigenbasis(&superop_of(&ch).unwrap()).unwrap();
        let rho = QubitDensity::from_bloch(b[0], b[1], b[2]).unwrap();
        let v = recurrence_classify(&basis, &Geometry::HalfLine(Boundary::Absorbing), i, &rho).unwrap();
        prop_assert_eq!(v.classification, Classification::Transient);
        prop_assert!((v.integral.finite().unwrap() - (2 * i + 2) as f64).abs() <= 1e-12);
        for g in [Geometry::Line, Geometry::HalfLine(Boundary::Reflecting)] {
            prop_assert_eq!(recurrence_classify(&basis, &g, i, &rho).unwrap().classification, Classification::Recurrent);
        }
    }

    #[test]
    fn absorbing_mass_decreases(l in 0.05f64..=0.5, t in 0.1f64..8.0, dt in 0.1f64..2.0, j in 0i64..4) {
        let g = Geometry::HalfLine(Boundary::Absorbing);
        let total = |t: f64| -> f64 { (0..j + 80).map(|i| kernel(g, l, i, j, t)).sum() };
        let (a, b) = (total(t), total(t + dt));
        prop_assert!(b < a && a <= 1.0 + 1e-12 && b > 0.0);
    }
}
