//! Acceptance suite: one check per criterion, each printing a single
//! PASS/FAIL line. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use std::f64::consts::PI;

use torus_recovery::intervals::{
    brute_force_arrangements, enumerate_arrangements, gen_polygon_counterexample, recover_branch_a,
    recover_branch_b, recover_intervals_extended, Arrangement,
};
use torus_recovery::par::map_indexed;
use torus_recovery::planar::{
    build_omega, lemma_rows, recover_max_k, recover_peeling, recover_search_report, sufficiency_probe,
    sufficient_size, MultiplicityProfile, OmegaKind, OmegaSet,
};
use torus_recovery::prony::prony_recover;
use torus_recovery::rng::substream;
use torus_recovery::sampling::{
    forced_fiber_sizes, random_fiber_sizes, random_interval_union, random_measure_1d, random_measure_2d_with_fibers,
    AmplitudeRange,
};
use torus_recovery::torus::{forward_coeffs_1d, forward_coeffs_2d, forward_coeffs_intervals};
use torus_recovery::ToleranceConfig;

use rand::Rng as _;

static FAILURES: AtomicUsize = AtomicUsize::new(0);

fn report(id: u32, pass: bool, detail: String) {
    println!("criterion {id}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    if !pass {
        FAILURES.fetch_add(1, Ordering::SeqCst);
    }
}

fn criterion_01_prony_round_trip() {
    let tol = ToleranceConfig::default();
    let start = Instant::now();
    let results = map_indexed(1000, |i| {
        let mut rng = substream(0x01, i as u64);
        let n = rng.random_range(1..=8usize);
        let k = rng.random_range(1..=n);
        let mu = random_measure_1d(&mut rng, k, 0.05, AmplitudeRange::default()).unwrap();
        let ni = n as i64;
        let table = forward_coeffs_1d(&mu, -ni..=ni);
        prony_recover(&table, n, &tol).map_or(f64::INFINITY, |r| r.distance(&mu))
    });
    let elapsed = start.elapsed();
    let worst = results.iter().copied().fold(0.0, f64::max);
    let passed = results.iter().filter(|&&d| d < 1e-7).count();
    report(
        1,
        passed == 1000 && elapsed < Duration::from_secs(10),
        format!("{passed}/1000 within 1e-7, worst {worst:.2e}, {:.2}s", elapsed.as_secs_f64()),
    );
}

fn criterion_02_intervals_extended() {
    let tol = ToleranceConfig::default();
    let results = map_indexed(500, |i| {
        let mut rng = substream(0x02, i as u64);
        let n = rng.random_range(1..=6usize);
        let arcs = rng.random_range(1..=n);
        let e = random_interval_union(&mut rng, arcs, 0.02).unwrap();
        let table = forward_coeffs_intervals(&e, 0..=2 * n as i64);
        recover_intervals_extended(&table, n, &tol).map_or(f64::INFINITY, |r| r.distance(&e))
    });
    let worst = results.iter().copied().fold(0.0, f64::max);
    let passed = results.iter().filter(|&&d| d < 1e-7).count();
    report(2, passed == 500, format!("{passed}/500 within 1e-7, worst {worst:.2e}"));
}

fn criterion_03_intervals_minimal() {
    let tol = ToleranceConfig::default();
    let a = map_indexed(200, |i| {
        let mut rng = substream(0x03, i as u64);
        let n = rng.random_range(2..=8usize);
        let arcs = rng.random_range(1..=n / 2);
        let e = random_interval_union(&mut rng, arcs, 0.02).unwrap();
        let table = forward_coeffs_intervals(&e, 0..=n as i64);
        recover_branch_a(&table, n, &tol).map_or(f64::INFINITY, |r| r.distance(&e))
    });
    let b = map_indexed(200, |i| {
        let mut rng = substream(0x13, i as u64);
        let n = rng.random_range(1..=4usize);
        let arcs = rng.random_range(n / 2 + 1..=n);
        let e = random_interval_union(&mut rng, arcs, 0.02).unwrap();
        let table = forward_coeffs_intervals(&e, 0..=n as i64);
        recover_branch_b(&table, n, &tol, 50, rng.random()).ok().map(|r| r.union.distance(&e))
    });
    let a_pass = a.iter().filter(|&&d| d < 1e-6).count();
    let a_worst = a.iter().copied().fold(0.0, f64::max);
    let converged: Vec<f64> = b.iter().flatten().copied().collect();
    let b_match = converged.iter().filter(|&&d| d < 1e-6).count();
    let b_worst = converged.iter().copied().fold(0.0, f64::max);
    report(
        3,
        a_pass == 200 && converged.len() * 100 >= 95 * 200 && b_match == converged.len(),
        format!(
            "branch A {a_pass}/200 within 1e-6 (worst {a_worst:.2e}); branch B converged {}/200, {b_match} matched (worst {b_worst:.2e})",
            converged.len()
        ),
    );
}

fn counterexample_gaps(n: usize, theta: f64, arrangement: &Arrangement) -> Option<(f64, f64, bool)> {
    let (e, f) = gen_polygon_counterexample(n, theta, arrangement).ok()?;
    let top = 2 * n as i64;
    let a = forward_coeffs_intervals(&e, 1..=top);
    let b = forward_coeffs_intervals(&f, 1..=top);
    let diff = |nu: i64| (a.get(nu).unwrap() - b.get(nu).unwrap()).norm();
    let low = (1..top).map(diff).fold(0.0, f64::max);
    let high = diff(top);
    Some((low, high, e != f && e.len() == n && f.len() == n))
}

fn sharp(gaps: Option<(f64, f64, bool)>) -> bool {
    gaps.is_some_and(|(low, high, differ)| low < 1e-12 && high > 1e-3 && differ)
}

fn criterion_04_counterexample_sharpness() {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 2..=6 {
        let gaps = counterexample_gaps(n, PI / (2 * n) as f64, &Arrangement::first(n));
        ok &= sharp(gaps);
        if let Some((low, high, _)) = gaps {
            lines.push(format!("N={n}: low {low:.1e}, at 2N {high:.3}"));
        }
    }
    report(4, ok, lines.join("; "));
}

fn criterion_05_arrangements() {
    let mut ok = true;
    let mut lines = Vec::new();
    for n in 1..=3 {
        let enc = enumerate_arrangements(n);
        let brute = brute_force_arrangements(n);
        ok &= enc == brute;
        // the polygon construction needs N >= 2
        let valid = if n >= 2 {
            enc.iter().filter(|a| sharp(counterexample_gaps(n, PI / (2 * n) as f64, a))).count()
        } else {
            enc.len()
        };
        ok &= valid == enc.len();
        lines.push(format!("N={n}: {} encoded, {} brute force, {valid} valid", enc.len(), brute.len()));
    }
    report(5, ok, lines.join("; "));
}

fn criterion_06_omega_sizes() {
    // independent count of the sufficient set for N = 4 (M = 8)
    let m: i64 = 8;
    let mut direct = 0;
    for r in -m..=m {
        for j in -m..=m {
            if j.abs() * r.abs().max(1) <= m {
                direct += 1;
            }
        }
    }
    let built = build_omega(OmegaKind::Sufficient, 4, None).unwrap().len();

    let mut worst = (0usize, 0.0f64);
    for n in 2..=4096usize {
        let ratio = sufficient_size(n) as f64 / (n as f64 * (n as f64).ln());
        if ratio > worst.1 {
            worst = (n, ratio);
        }
    }
    let over: Vec<usize> = (2..=4096usize)
        .filter(|&n| sufficient_size(n) as f64 / (n as f64 * (n as f64).ln()) > 20.0)
        .collect();

    let triangle_ok = (1..=64usize).all(|n| {
        let t = build_omega(OmegaKind::Triangle, n, None).unwrap();
        let direct = t.freqs().iter().filter(|&&(a, b)| a >= 0 && b >= 0 && a + b < 2 * n as i64).count();
        t.len() == n * (2 * n + 1) && direct == t.len()
    });
    report(
        6,
        direct == 113 && built == 113 && worst.1 <= 20.0 && triangle_ok,
        format!(
            "|Omega(4)| = {built} (direct {direct}); max |Omega|/(N ln N) = {:.2} at N = {} (N over 20: {over:?}); triangle sizes {}",
            worst.1,
            worst.0,
            if triangle_ok { "ok" } else { "wrong" }
        ),
    );
}

fn criterion_07_max_k() {
    let tol = ToleranceConfig::default();
    let results = map_indexed(200, |i| {
        let mut rng = substream(0x07, i as u64);
        let n = rng.random_range(1..=6usize);
        let k = rng.random_range(1..=n.min(2));
        let total = rng.random_range(1..=n);
        let sizes = random_fiber_sizes(&mut rng, total, k);
        let mu = random_measure_2d_with_fibers(&mut rng, &sizes, 0.05, AmplitudeRange::default()).unwrap();
        let omega = build_omega(OmegaKind::MaxK, n, Some(k)).unwrap();
        let table = forward_coeffs_2d(&mu, omega.freqs());
        recover_max_k(&table, n, k, &tol).map_or(f64::INFINITY, |r| r.distance(&mu))
    });
    let worst = results.iter().copied().fold(0.0, f64::max);
    let passed = results.iter().filter(|&&d| d < 1e-6).count();
    report(7, passed == 200, format!("{passed}/200 within 1e-6, worst {worst:.2e}"));
}

fn criterion_08_peeling() {
    let tol = ToleranceConfig::default();
    let results = map_indexed(300, |i| {
        let mut rng = substream(0x08, i as u64);
        let n = rng.random_range(1..=6usize);
        let sizes = forced_fiber_sizes(&mut rng, n, 3);
        let mu = random_measure_2d_with_fibers(&mut rng, &sizes, 0.05, AmplitudeRange::default()).unwrap();
        let table = forward_coeffs_2d(&mu, &lemma_rows(n));
        let profile = MultiplicityProfile::from_measure(&mu);
        recover_peeling(&table, n, &profile, &tol).map_or(f64::INFINITY, |r| r.distance(&mu))
    });
    let worst = results.iter().copied().fold(0.0, f64::max);
    let passed = results.iter().filter(|&&d| d < 1e-6).count();
    report(8, passed == 300, format!("{passed}/300 within 1e-6, worst {worst:.2e}"));
}

fn criterion_09_search() {
    let tol = ToleranceConfig::default();
    let start = Instant::now();
    let results = map_indexed(100, |i| {
        let mut rng = substream(0x09, i as u64);
        let n = rng.random_range(1..=4usize);
        let total = rng.random_range(1..=n);
        let sizes = random_fiber_sizes(&mut rng, total, total);
        let mu = random_measure_2d_with_fibers(&mut rng, &sizes, 0.05, AmplitudeRange::default()).unwrap();
        let omega = build_omega(OmegaKind::Sufficient, n, None).unwrap();
        let table = forward_coeffs_2d(&mu, omega.freqs());
        recover_search_report(&table, n, &tol, 100_000)
            .ok()
            .map(|r| (r.passing, r.measure.distance(&mu)))
    });
    let elapsed = start.elapsed();
    let good = results
        .iter()
        .filter(|r| r.is_some_and(|(passing, d)| passing == 1 && d < 1e-6))
        .count();
    let failed = results.iter().filter(|r| r.is_none()).count();
    report(
        9,
        good == 100 && elapsed < Duration::from_secs(60),
        format!(
            "{good}/100 unique and within 1e-6 ({failed} errors), {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
}

fn criterion_10_interpolation_probes() {
    let tol = ToleranceConfig::default();
    let mut rng = substream(0x0a, 0);
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 1..=6 {
        let tri = build_omega(OmegaKind::Triangle, n, None).unwrap();
        let rep = sufficiency_probe(&tri, n, 200, &mut rng, &tol).unwrap();
        ok &= rep.passes == 200;
        lines.push(format!("N={n}: {}/200", rep.passes));
    }
    let line = OmegaSet::custom(3, (-10..=10).map(|m| (m, 0)).collect()).unwrap();
    let rep = sufficiency_probe(&line, 3, 20, &mut rng, &tol).unwrap();
    let witness_ok = rep.verdict == "insufficient"
        && rep
            .witness
            .as_ref()
            .is_some_and(|w| w.max_deviation < 1e-12 && w.first.distance(&w.second) > 0.1);
    ok &= witness_ok;
    lines.push(format!("line set {}", rep.verdict));
    report(10, ok, lines.join("; "));
}

fn main() -> ExitCode {
    criterion_01_prony_round_trip();
    criterion_02_intervals_extended();
    criterion_03_intervals_minimal();
    criterion_04_counterexample_sharpness();
    criterion_05_arrangements();
    criterion_06_omega_sizes();
    criterion_07_max_k();
    criterion_08_peeling();
    criterion_09_search();
    criterion_10_interpolation_probes();
    let failed = FAILURES.load(Ordering::SeqCst);
    println!("acceptance: {} of {} criteria passed", 10 - failed, 10);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
