use num_complex::Complex64;
use proptest::prelude::*;
use torus_recovery::torus::{forward_coeffs_1d, forward_coeffs_2d, forward_coeffs_intervals, Measure1D, Measure2D, TorusPoint};

fn amp() -> impl Strategy<Value = Complex64> {
    (0.1f64..3.0, -3.2f64..3.2).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_value_is_in_unit_interval(t in -1e6f64..1e6, k in -50i64..50) {
        let p = TorusPoint::new(t);
        prop_assert!((0.0..1.0).contains(&p.value()));
        let q = TorusPoint::new(t + k as f64);
        prop_assert!(p.wrap_distance(q) < 1e-6);
    }

    #[test]
    fn wrap_distance_is_a_bounded_metric(a in 0f64..1.0, b in 0f64..1.0, c in 0f64..1.0) {
        let (a, b, c) = (TorusPoint::new(a), TorusPoint::new(b), TorusPoint::new(c));
        prop_assert!(a.wrap_distance(b) <= 0.5);
        prop_assert!((a.wrap_distance(b) - b.wrap_distance(a)).abs() < 1e-15);
        prop_assert!(a.wrap_distance(c) <= a.wrap_distance(b) + b.wrap_distance(c) + 1e-15);
        prop_assert!(a.wrap_distance(a) == 0.0);
    }

    #[test]
    fn shift_multiplies_coefficients_by_character(
        masses in prop::collection::vec((0f64..1.0, amp()), 1..5),
        tau in -2f64..2.0,
    ) {
        let mu = Measure1D::new(masses);
        let a = forward_coeffs_1d(&mu, -6..=6);
        let b = forward_coeffs_1d(&mu.shifted(tau), -6..=6);
        for (nu, v) in a.iter() {
            let rot = Complex64::cis(-std::f64::consts::TAU * nu as f64 * tau);
            prop_assert!((b.get(nu).unwrap() - v * rot).norm() < 1e-9);
        }
    }

    #[test]
    fn coefficients_are_bounded_by_total_variation(masses in prop::collection::vec((0f64..1.0, amp()), 0..6)) {
        let mu = Measure1D::new(masses);
        let tv: f64 = mu.masses().iter().map(|m| m.amplitude.norm()).sum();
        prop_assert!(forward_coeffs_1d(&mu, -8..=8).max_abs() <= tv + 1e-12);
    }

    #[test]
    fn planar_transform_on_zero_row_is_projection(
        masses in prop::collection::vec((0f64..1.0, 0f64..1.0, amp()), 1..5),
    ) {
        let mu = Measure2D::new(masses);
        let freqs: Vec<(i64, i64)> = (-4..=4).map(|m| (m, 0)).collect();
        let t = forward_coeffs_2d(&mu, &freqs);
        let proj = Measure1D::new(mu.masses().iter().map(|m| (m.x.value(), m.amplitude)));
        let p = forward_coeffs_1d(&proj, -4..=4);
        for m in -4..=4 {
            prop_assert!((t.get(m, 0).unwrap() - p.get(m).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn interval_coefficients_are_hermitian(start in 0f64..1.0, len in 0.01f64..0.9) {
        let e = torus_recovery::torus::IntervalUnion::new([(start, start + len)]).unwrap();
        let t = forward_coeffs_intervals(&e, -5..=5);
        prop_assert!((t.get(0).unwrap().re - len).abs() < 1e-12);
        for nu in 1..=5 {
            prop_assert!((t.get(-nu).unwrap() - t.get(nu).unwrap().conj()).norm() < 1e-12);
        }
    }
}
