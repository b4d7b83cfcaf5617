//! Interpolation by exponentials `exp(2 pi i w.u)`, `w` in a frequency set.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::Serialize;

use super::omega::OmegaSet;
use crate::error::PlanarError;
use crate::numerics::{numeric_rank, solve, ComplexMatrix};
use crate::par::map_indexed;
use crate::rng::{substream, Rng};
use crate::sampling::separated_points;
use crate::tolerance::ToleranceConfig;
use crate::torus::{forward_coeffs_2d, CoeffTable2D, Measure2D, TorusPoint};

/// Draws of the projection direction before giving up.
pub const DIRECTION_DRAWS: usize = 20;
/// Largest residual accepted from [`triangle_interpolate`].
pub const INTERPOLATION_TOL: f64 = 1e-8;
/// Per-coordinate wrap separation of probe points.
pub const PROBE_SEPARATION: f64 = 0.02;

/// Points closer than this in both coordinates count as the same point.
const DUPLICATE_TOL: f64 = 4.0 * f64::EPSILON;

fn plus_character(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * phase.rem_euclid(1.0))
}

fn check_distinct(points: &[(f64, f64)]) -> Result<(), PlanarError> {
    for (i, p) in points.iter().enumerate() {
        for q in &points[..i] {
            let dx = TorusPoint::new(p.0).wrap_distance(TorusPoint::new(q.0));
            let dy = TorusPoint::new(p.1).wrap_distance(TorusPoint::new(q.1));
            if dx.max(dy) <= DUPLICATE_TOL {
                return Err(PlanarError::DuplicatePoint(p.0, p.1));
            }
        }
    }
    Ok(())
}

/// `exp(2 pi i (m x + n y))`.
fn exponential(freq: (i64, i64), p: (f64, f64)) -> Complex64 {
    let ph = (freq.0 as f64 * p.0).rem_euclid(1.0) + (freq.1 as f64 * p.1).rem_euclid(1.0);
    plus_character(ph)
}

/// Whether every assignment of values at `points` is matched by some
/// combination of the exponentials in `omega`: the `|points| x |omega|`
/// matrix must have full row rank.
pub fn is_interpolating(omega: &OmegaSet, points: &[(f64, f64)], tol: &ToleranceConfig) -> Result<bool, PlanarError> {
    check_distinct(points)?;
    let freqs = omega.freqs();
    let a = ComplexMatrix::from_fn(points.len(), freqs.len(), |i, j| exponential(freqs[j], points[i]));
    Ok(numeric_rank(&a, tol.rank_tol) == points.len())
}

/// Coefficients `c` on the triangle `m, n >= 0, m + n <= 2N - 1` with
/// `sum c_(m,n) exp(2 pi i (m x_j + n y_j)) = values_j`.
///
/// With `z = exp(2 pi i x)` and `w = exp(2 pi i y)`, a random complex
/// direction `u` reduces the problem to 1D interpolation at
/// `t_j = u_1 z_j + u_2 w_j`; expanding `p(u_1 z + u_2 w)` gives
/// `c_(m,n) = p_(m+n) binom(m+n, m) u_1^m u_2^n`.
pub fn triangle_interpolate(
    points: &[(f64, f64)],
    values: &[Complex64],
    n: usize,
    rng: &mut Rng,
    tol: &ToleranceConfig,
) -> Result<CoeffTable2D, PlanarError> {
    check_distinct(points)?;
    if points.len() != values.len() || points.len() > 2 * n || n == 0 {
        return Err(PlanarError::BadParams(format!(
            "{} points, {} values, N = {n}",
            points.len(),
            values.len()
        )));
    }
    let zw: Vec<(Complex64, Complex64)> = points
        .iter()
        .map(|&(x, y)| (plus_character(x), plus_character(y)))
        .collect();
    let mut direction = None;
    for _ in 0..DIRECTION_DRAWS {
        let u1 = Complex64::from_polar(1.0, TAU * rng.random::<f64>());
        let u2 = Complex64::from_polar(1.0, TAU * rng.random::<f64>());
        let t: Vec<Complex64> = zw.iter().map(|&(z, w)| u1 * z + u2 * w).collect();
        let sep = (0..t.len())
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| (t[i] - t[j]).norm())
            .fold(f64::INFINITY, f64::min);
        if sep > tol.rank_tol {
            direction = Some((u1, u2, t));
            break;
        }
    }
    let (u1, u2, t) = direction.ok_or(PlanarError::NoDirection(DIRECTION_DRAWS))?;

    let k = points.len();
    let mut p = vec![Complex64::new(0.0, 0.0); 2 * n];
    if k > 0 {
        let v = ComplexMatrix::from_fn(k, k, |i, j| t[i].powu(j as u32));
        let sol = solve(&v, values, 0.0).map_err(|_| PlanarError::Interpolation(f64::INFINITY))?;
        p[..k].copy_from_slice(&sol);
    }

    let top = 2 * n - 1;
    let mut out = CoeffTable2D::new();
    for deg in 0..=top {
        let mut binom = 1.0f64;
        for m in 0..=deg {
            let c = p[deg] * binom * u1.powu(m as u32) * u2.powu((deg - m) as u32);
            out.insert(m as i64, (deg - m) as i64, c);
            binom = binom * (deg - m) as f64 / (m + 1) as f64;
        }
    }

    let residual = points
        .iter()
        .zip(values)
        .map(|(&pt, &d)| {
            let s: Complex64 = out.iter().map(|(f, c)| c * exponential(f, pt)).sum();
            (s - d).norm()
        })
        .fold(0.0, f64::max);
    if residual > INTERPOLATION_TOL {
        return Err(PlanarError::Interpolation(residual));
    }
    Ok(out)
}

/// Two point masses that no coefficient on a horizontal line can tell apart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineWitness {
    pub first: Measure2D,
    pub second: Measure2D,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub trials: usize,
    pub passes: usize,
    pub witness: Option<LineWitness>,
    /// `"insufficient"` when a witness exists, `"interpolating"` when every
    /// trial passed, `"inconclusive"` otherwise.
    pub verdict: &'static str,
}

/// `count` distinct points whose x and y coordinates are each pairwise at
/// least `separation` apart in the wrap metric.
pub fn random_probe_points(rng: &mut Rng, count: usize, separation: f64) -> Result<Vec<(f64, f64)>, PlanarError> {
    let xs = separated_points(rng, count, separation).map_err(|e| PlanarError::BadParams(e.to_string()))?;
    let mut ys = separated_points(rng, count, separation).map_err(|e| PlanarError::BadParams(e.to_string()))?;
    ys.shuffle(rng);
    Ok(xs.into_iter().zip(ys).collect())
}

/// Tests `is_interpolating` on `trials` random sets of `2N` points, and
/// for sets on a horizontal line `n = n0` exhibits `delta_(x, 0)` and
/// `(-1)^n0 delta_(x, 1/2)`, which share every coefficient on the line.
pub fn sufficiency_probe(
    omega: &OmegaSet,
    n: usize,
    trials: usize,
    rng: &mut Rng,
    tol: &ToleranceConfig,
) -> Result<ProbeReport, PlanarError> {
    if trials == 0 {
        return Err(PlanarError::NoTrials);
    }
    let seed: u64 = rng.random();
    let outcomes = map_indexed(trials, |i| {
        let mut r = substream(seed, i as u64);
        let pts = random_probe_points(&mut r, 2 * n, PROBE_SEPARATION)?;
        is_interpolating(omega, &pts, tol)
    });
    let mut passes = 0;
    for o in outcomes {
        passes += usize::from(o?);
    }

    let witness = omega.horizontal_line().map(|n0| {
        let x = 0.25;
        let first = Measure2D::new([(x, 0.0, Complex64::new(1.0, 0.0))]);
        let sign = if n0 % 2 == 0 { 1.0 } else { -1.0 };
        let second = Measure2D::new([(x, 0.5, Complex64::new(sign, 0.0))]);
        let a = forward_coeffs_2d(&first, omega.freqs());
        let b = forward_coeffs_2d(&second, omega.freqs());
        LineWitness {
            max_deviation: a.max_deviation(&b),
            first,
            second,
        }
    });
    let verdict = match (&witness, passes == trials) {
        (Some(_), _) => "insufficient",
        (None, true) => "interpolating",
        (None, false) => "inconclusive",
    };
    Ok(ProbeReport {
        trials,
        passes,
        witness,
        verdict,
    })
}
