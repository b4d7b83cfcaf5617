//! Interval unions on the circle from a few Fourier coefficients, and the
//! interleaved-polygon construction showing that coefficients `1..2N-1` do
//! not suffice.

mod arrangement;
mod counterexample;
mod minimal;

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::IntervalError;
use crate::prony::prony_recover;
use crate::tolerance::ToleranceConfig;
use crate::torus::{forward_coeffs_intervals, CoeffTable1D, IntervalUnion, TorusPoint};

pub use arrangement::{brute_force_arrangements, enumerate_arrangements, Arrangement, Label};
pub use counterexample::gen_polygon_counterexample;
pub use minimal::{recover_branch_a, recover_branch_b, recover_intervals_minimal, BranchBReport};

/// Tolerance on the imaginary part of the zeroth coefficient.
const REAL_TOL: f64 = 1e-12;

/// Largest `L` such that the table holds `0..=L`.
fn top_frequency(coeffs: &CoeffTable1D) -> Result<usize, IntervalError> {
    coeffs.require(0)?;
    let mut top = 0;
    while coeffs.get(top + 1).is_some() {
        top += 1;
    }
    Ok(top as usize)
}

fn real_length(coeffs: &CoeffTable1D) -> Result<f64, IntervalError> {
    let c0 = coeffs.require(0)?;
    if c0.im.abs() > REAL_TOL {
        return Err(IntervalError::NonRealLength(c0));
    }
    Ok(c0.re)
}

/// Coefficients of the derivative of an indicator function, extended to
/// negative frequencies by conjugate symmetry.
///
/// The derivative of the indicator of `union (a_j, b_j)` is
/// `sum_j delta_(a_j) - delta_(b_j)`, whose coefficient at `nu` is
/// `2 pi i nu` times the indicator's.
pub fn differentiate_coeffs(coeffs: &CoeffTable1D) -> Result<CoeffTable1D, IntervalError> {
    real_length(coeffs)?;
    let top = top_frequency(coeffs)? as i64;
    let mut out = CoeffTable1D::new();
    out.insert(0, Complex64::new(0.0, 0.0));
    for nu in 1..=top {
        let d = Complex64::new(0.0, TAU * nu as f64) * coeffs.require(nu)?;
        out.insert(nu, d);
        out.insert(-nu, d.conj());
    }
    Ok(out)
}

/// Pairs each left endpoint with the next right endpoint counterclockwise.
/// Endpoints must strictly alternate once sorted; two endpoints closer than
/// `min_gap` count as a tie, which is an error.
pub(crate) fn assemble_arcs(lefts: &[f64], rights: &[f64], min_gap: f64) -> Result<IntervalUnion, IntervalError> {
    if lefts.len() != rights.len() {
        return Err(IntervalError::UnbalancedEndpoints {
            left: lefts.len(),
            right: rights.len(),
        });
    }
    if lefts.is_empty() {
        return Ok(IntervalUnion::empty());
    }
    let mut pts: Vec<(f64, bool)> = lefts
        .iter()
        .map(|&a| (TorusPoint::new(a).value(), true))
        .chain(rights.iter().map(|&b| (TorusPoint::new(b).value(), false)))
        .collect();
    pts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let m = pts.len();
    for i in 0..m {
        let (p, is_left) = pts[i];
        let (q, next_left) = pts[(i + 1) % m];
        let gap = TorusPoint::new(p).ccw_distance_to(TorusPoint::new(q));
        if is_left == next_left || gap < min_gap {
            return Err(IntervalError::Alternation);
        }
    }
    let arcs = (0..m)
        .filter(|&i| pts[i].1)
        .map(|i| (pts[i].0, pts[(i + 1) % m].0));
    Ok(IntervalUnion::new(arcs)?)
}

/// Recovers a union of at most `n` arcs from its coefficients on `0..=2n`.
pub fn recover_intervals_extended(
    coeffs: &CoeffTable1D,
    n: usize,
    tol: &ToleranceConfig,
) -> Result<IntervalUnion, IntervalError> {
    coeffs.require_range(0, 2 * n as i64)?;
    let length = real_length(coeffs)?;
    if !(0.0..1.0).contains(&length) {
        return Err(IntervalError::BadLength(length));
    }
    let table = coeffs.window(0, 2 * n as i64)?;
    let endpoints = prony_recover(&differentiate_coeffs(&table)?, 2 * n, tol)?;

    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    for mass in endpoints.masses() {
        let c = mass.amplitude;
        if (c - 1.0).norm() <= tol.match_tol {
            lefts.push(mass.position.value());
        } else if (c + 1.0).norm() <= tol.match_tol {
            rights.push(mass.position.value());
        } else {
            return Err(IntervalError::NotUnitJump(c));
        }
    }
    let union = assemble_arcs(&lefts, &rights, tol.root_tol)?;
    let found = union.total_length();
    if (found - length).abs() > tol.match_tol {
        return Err(IntervalError::LengthMismatch {
            found,
            expected: length,
        });
    }
    Ok(union)
}

/// `max_nu |forward(e)(nu) - coeffs(nu)|` over `0..=top`.
pub(crate) fn data_residual(e: &IntervalUnion, coeffs: &CoeffTable1D, top: usize) -> f64 {
    let top = top as i64;
    match coeffs.window(0, top) {
        Ok(w) => forward_coeffs_intervals(e, 0..=top).max_deviation(&w),
        Err(_) => f64::INFINITY,
    }
}
