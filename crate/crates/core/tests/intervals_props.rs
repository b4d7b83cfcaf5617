use std::f64::consts::PI;

use proptest::prelude::*;
use rand::Rng as _;
use torus_recovery::intervals::{
    enumerate_arrangements, gen_polygon_counterexample, recover_branch_a, recover_branch_b,
    recover_intervals_extended, recover_intervals_minimal,
};
use torus_recovery::rng::substream;
use torus_recovery::sampling::random_interval_union;
use torus_recovery::torus::forward_coeffs_intervals;
use torus_recovery::ToleranceConfig;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extended_round_trip(seed in any::<u64>()) {
        let mut rng = substream(seed, 0);
        let n = rng.random_range(1..=5usize);
        let arcs = rng.random_range(1..=n);
        let e = random_interval_union(&mut rng, arcs, 0.03).unwrap();
        let t = forward_coeffs_intervals(&e, 0..=2 * n as i64);
        let got = recover_intervals_extended(&t, n, &ToleranceConfig::default()).unwrap();
        prop_assert!(got.distance(&e) < 1e-7);
    }

    #[test]
    fn minimal_round_trip_with_few_arcs(seed in any::<u64>()) {
        let mut rng = substream(seed, 0);
        let n = rng.random_range(2..=6usize);
        let arcs = rng.random_range(1..=n / 2);
        let e = random_interval_union(&mut rng, arcs, 0.03).unwrap();
        let t = forward_coeffs_intervals(&e, 0..=n as i64);
        let got = recover_intervals_minimal(&t, n, &ToleranceConfig::default(), 20, &mut rng).unwrap();
        prop_assert!(got.distance(&e) < 1e-6);
    }

    #[test]
    fn branches_agree(seed in any::<u64>()) {
        let mut rng = substream(seed, 0);
        let n = rng.random_range(2..=4usize);
        let arcs = rng.random_range(1..=n / 2);
        let e = random_interval_union(&mut rng, arcs, 0.05).unwrap();
        let t = forward_coeffs_intervals(&e, 0..=n as i64);
        let tol = ToleranceConfig::default();
        let a = recover_branch_a(&t, n, &tol).unwrap();
        let b = recover_branch_b(&t, n, &tol, 50, seed).unwrap();
        prop_assert!(a.distance(&b.union) < 1e-6);
    }

    #[test]
    fn counterexamples_are_sharp(n in 2usize..=4, pick in any::<prop::sample::Index>(), frac in 0.05f64..0.95) {
        let all = enumerate_arrangements(n);
        let arrangement = &all[pick.index(all.len())];
        let theta = frac * PI / n as f64;
        let (e, f) = gen_polygon_counterexample(n, theta, arrangement).unwrap();
        prop_assert_eq!(e.len(), n);
        prop_assert_eq!(f.len(), n);
        let m = 2 * n as i64;
        let a = forward_coeffs_intervals(&e, 0..=m);
        let b = forward_coeffs_intervals(&f, 0..=m);
        for nu in 1..m {
            prop_assert!((a.get(nu).unwrap() - b.get(nu).unwrap()).norm() < 1e-12);
        }
        prop_assert!((a.get(m).unwrap() - b.get(m).unwrap()).norm() > 1e-6);
    }
}
