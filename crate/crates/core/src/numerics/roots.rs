//! Simultaneous root iteration (Aberth–Ehrlich).

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::Polynomial;
use crate::error::RootError;

/// Iteration budget for [`roots`].
pub const ROOT_ITERATIONS: usize = 200;

const START_RADIUS: f64 = 1.05;
const START_PHASE: f64 = 0.4;

/// All `deg(p)` roots of `p`, with multiplicity.
///
/// Each returned root satisfies `|p(root)| <= tol * max|coeff|`. Starting
/// points sit on a circle of radius slightly above 1, which suits the
/// near-unimodular root sets this crate works with.
pub fn roots(p: &Polynomial, tol: f64) -> Result<Vec<Complex64>, RootError> {
    let n = p.degree();
    if n == 0 {
        return Err(RootError::Degree(0));
    }
    let scale = p.max_abs_coeff();
    let monic = p.monic().ok_or(RootError::Degree(0))?;
    if n == 1 {
        let r = -monic.coeff(0);
        return check(p, vec![r], tol, scale);
    }

    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(START_RADIUS, TAU * k as f64 / n as f64 + START_PHASE))
        .collect();

    for _ in 0..ROOT_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (v, dv) = monic.eval_with_derivative(z[k]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let newton = v / dv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step <= 4.0 * f64::EPSILON {
            break;
        }
    }
    check(p, z, tol, scale)
}

fn check(p: &Polynomial, z: Vec<Complex64>, tol: f64, scale: f64) -> Result<Vec<Complex64>, RootError> {
    let residual = z.iter().map(|&r| p.eval(r).norm()).fold(0.0, f64::max);
    if residual <= tol * scale && z.iter().all(|r| r.is_finite()) {
        Ok(z)
    } else {
        Err(RootError::NoConvergence { best: z, residual })
    }
}

/// Greedy nearest-neighbour pairing of two equally sized point sets; returns
/// the largest pair distance, or `None` when the pairing is not injective or
/// the sizes differ.
pub fn match_multisets(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for &x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (x - y).norm()))
            .min_by(|l, r| l.1.total_cmp(&r.1))?;
        used[j] = true;
        worst = worst.max(d);
    }
    Some(worst)
}
