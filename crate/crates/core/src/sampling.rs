//! Random instances with separation floors, used by the test suites and the
//! command-line harness.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng as _;

use crate::error::SamplingError;
use crate::rng::Rng;
use crate::torus::{IntervalUnion, Measure1D, Measure2D, TorusPoint};

/// Inclusive range of amplitude magnitudes; phases are uniform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeRange {
    pub min: f64,
    pub max: f64,
}

impl Default for AmplitudeRange {
    fn default() -> Self {
        Self { min: 0.1, max: 3.0 }
    }
}

impl AmplitudeRange {
    pub fn sample(&self, rng: &mut Rng) -> Complex64 {
        let r = rng.random_range(self.min..=self.max);
        Complex64::from_polar(r, TAU * rng.random::<f64>())
    }
}

/// `count` points on the circle, sorted, with every cyclic gap at least
/// `separation`. Uniform over such configurations: the gaps beyond the floor
/// are spacings of uniform samples, followed by a uniform rotation.
pub fn separated_points(rng: &mut Rng, count: usize, separation: f64) -> Result<Vec<f64>, SamplingError> {
    if !(separation >= 0.0) || (count > 1 && count as f64 * separation >= 1.0) {
        return Err(SamplingError::Infeasible { count, separation });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let slack = 1.0 - count as f64 * separation;
    let mut u: Vec<f64> = (0..count).map(|_| rng.random::<f64>() * slack).collect();
    u.sort_by(f64::total_cmp);
    let rot: f64 = rng.random();
    let mut pts: Vec<f64> = u
        .iter()
        .enumerate()
        .map(|(i, &x)| TorusPoint::new(x + i as f64 * separation + rot).value())
        .collect();
    pts.sort_by(f64::total_cmp);
    Ok(pts)
}

/// Measure with `count` masses, pairwise wrap distance at least `separation`.
pub fn random_measure_1d(
    rng: &mut Rng,
    count: usize,
    separation: f64,
    amplitudes: AmplitudeRange,
) -> Result<Measure1D, SamplingError> {
    let pts = separated_points(rng, count, separation)?;
    Ok(Measure1D::new(pts.into_iter().map(|t| (t, amplitudes.sample(rng)))))
}

/// Union of `arcs` arcs whose endpoints are pairwise at least `separation`
/// apart.
pub fn random_interval_union(rng: &mut Rng, arcs: usize, separation: f64) -> Result<IntervalUnion, SamplingError> {
    let pts = separated_points(rng, 2 * arcs, separation)?;
    // pairing starts at an even or odd endpoint with equal probability
    let offset = usize::from(rng.random::<bool>());
    let m = pts.len();
    let pairs = (0..arcs).map(|j| (pts[(2 * j + offset) % m], pts[(2 * j + 1 + offset) % m]));
    IntervalUnion::new(pairs).map_err(|e| SamplingError::BadParams(e.to_string()))
}

/// 2D measure whose fibers over distinct x have the given sizes. The x
/// coordinates and the y coordinates inside each fiber are separated by at
/// least `separation` in the wrap metric.
pub fn random_measure_2d_with_fibers(
    rng: &mut Rng,
    fiber_sizes: &[usize],
    separation: f64,
    amplitudes: AmplitudeRange,
) -> Result<Measure2D, SamplingError> {
    if fiber_sizes.contains(&0) {
        return Err(SamplingError::BadParams("empty fiber".into()));
    }
    let xs = separated_points(rng, fiber_sizes.len(), separation)?;
    let mut masses = Vec::new();
    for (&x, &t) in xs.iter().zip(fiber_sizes) {
        for y in separated_points(rng, t, separation)? {
            masses.push((x, y, amplitudes.sample(rng)));
        }
    }
    let mu = Measure2D::new(masses);
    assert_decay(&mu);
    Ok(mu)
}

/// Random split of `total` into parts of size at most `max_part`, in
/// random order.
pub fn random_fiber_sizes(rng: &mut Rng, total: usize, max_part: usize) -> Vec<usize> {
    assert!(max_part >= 1 || total == 0);
    let mut sizes = Vec::new();
    let mut left = total;
    while left > 0 {
        let t = rng.random_range(1..=left.min(max_part));
        sizes.push(t);
        left -= t;
    }
    sizes
}

/// Like [`random_fiber_sizes`] but with at least one part equal to
/// `min(max_part, total)`.
pub fn forced_fiber_sizes(rng: &mut Rng, total: usize, max_part: usize) -> Vec<usize> {
    if total == 0 {
        return Vec::new();
    }
    let top = max_part.min(total);
    let mut sizes = vec![top];
    sizes.extend(random_fiber_sizes(rng, total - top, max_part));
    // move the forced part to a random slot
    let slot = rng.random_range(0..sizes.len());
    sizes.swap(0, slot);
    sizes
}

/// Panics unless `|{x : t(x) >= t}| <= total / t` for every `t >= 1`.
pub fn assert_decay(mu: &Measure2D) {
    let counts: Vec<usize> = mu.fiber_counts().into_iter().map(|(_, c)| c).collect();
    let total: usize = counts.iter().sum();
    let top = counts.iter().copied().max().unwrap_or(0);
    for t in 1..=top {
        let above = counts.iter().filter(|&&c| c >= t).count();
        assert!(above * t <= total, "profile violates the decay bound at t = {t}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;

    #[test]
    fn separation_is_honoured() {
        let mut rng = substream(1, 0);
        for count in 0..12 {
            let pts = separated_points(&mut rng, count, 0.08).unwrap();
            assert_eq!(pts.len(), count);
            for i in 0..count {
                for j in 0..i {
                    assert!(TorusPoint::new(pts[i]).wrap_distance(TorusPoint::new(pts[j])) >= 0.08 - 1e-12);
                }
            }
        }
        assert!(separated_points(&mut rng, 10, 0.1).is_err());
        assert!(separated_points(&mut rng, 1, 2.0).is_ok());
    }

    #[test]
    fn unions_and_fibers() {
        let mut rng = substream(2, 0);
        let e = random_interval_union(&mut rng, 4, 0.05).unwrap();
        assert_eq!(e.len(), 4);
        assert!(e.min_endpoint_separation() >= 0.05 - 1e-12);

        let sizes = forced_fiber_sizes(&mut rng, 6, 3);
        assert_eq!(sizes.iter().sum::<usize>(), 6);
        assert!(sizes.contains(&3));
        let mu = random_measure_2d_with_fibers(&mut rng, &sizes, 0.05, AmplitudeRange::default()).unwrap();
        assert_eq!(mu.len(), 6);
        let mut counts: Vec<usize> = mu.fiber_counts().into_iter().map(|(_, c)| c).collect();
        let mut expect = sizes.clone();
        counts.sort();
        expect.sort();
        assert_eq!(counts, expect);
    }
}
