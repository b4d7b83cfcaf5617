//! Recovery of at most `N` arcs from the coefficients on `0..=N` alone.
//!
//! With `z_j = exp(-2 pi i a_j)` and `w_j = exp(-2 pi i b_j)`, the values
//! `p_nu = 2 pi i nu coeffs(nu)` are the power-sum differences
//! `sum_j z_j^nu - w_j^nu`, so the series `G = exp(-sum p_nu x^nu / nu)`
//! equals `prod (1 - z_j x) / prod (1 - w_j x)`. When the number of arcs is
//! at most `N/2`, the denominator is pinned down by linear equations
//! (branch A). Otherwise a damped Gauss-Newton iteration on the endpoints
//! is run from random starts (branch B).

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng as _;

use super::{assemble_arcs, data_residual, real_length};
use crate::error::IntervalError;
use crate::numerics::{lstsq, roots, series_from_power_sums, ComplexMatrix, Polynomial};
use crate::par::map_indexed;
use crate::rng::{substream, Rng};
use crate::tolerance::ToleranceConfig;
use crate::torus::{character, CoeffTable1D, IntervalUnion, TorusPoint};

const MAX_ITERATIONS: usize = 200;
const START_BATCH: usize = 8;

fn check_table(coeffs: &CoeffTable1D, n: usize) -> Result<f64, IntervalError> {
    coeffs.require_range(0, n as i64)?;
    let length = real_length(coeffs)?;
    if !(0.0..1.0).contains(&length) {
        return Err(IntervalError::BadLength(length));
    }
    Ok(length)
}

fn is_zero_table(coeffs: &CoeffTable1D, n: usize, tol: &ToleranceConfig) -> bool {
    (0..=n as i64).all(|nu| coeffs.get(nu).is_some_and(|v| v.norm() <= tol.residual_tol))
}

fn verify(union: IntervalUnion, coeffs: &CoeffTable1D, n: usize, tol: &ToleranceConfig) -> Result<IntervalUnion, IntervalError> {
    let residual = data_residual(&union, coeffs, n);
    let limit = tol.match_tol;
    if residual > limit {
        return Err(IntervalError::Residual { residual, limit });
    }
    Ok(union)
}

/// Angles of the reciprocal roots of `prod (1 - u_j x)`, as torus points
/// `t_j` with `u_j = exp(-2 pi i t_j)`.
fn reciprocal_positions(p: &Polynomial, count: usize, tol: &ToleranceConfig) -> Result<Vec<f64>, IntervalError> {
    if p.degree() != count {
        return Err(IntervalError::UnbalancedEndpoints {
            left: p.degree(),
            right: count,
        });
    }
    let mut out = Vec::with_capacity(count);
    for r in roots(p, tol.root_tol).map_err(crate::error::PronyError::from)? {
        if (r.norm() - 1.0).abs() > tol.root_tol {
            return Err(crate::error::PronyError::OffCircle { modulus: r.norm() }.into());
        }
        // root = 1 / u = exp(2 pi i t)
        out.push(TorusPoint::from_angle(r.arg()).value());
    }
    Ok(out)
}

/// Branch A: the smallest `n <= N/2` for which the denominator equations
/// are consistent determines the union.
pub fn recover_branch_a(coeffs: &CoeffTable1D, n: usize, tol: &ToleranceConfig) -> Result<IntervalUnion, IntervalError> {
    check_table(coeffs, n)?;
    if is_zero_table(coeffs, n, tol) {
        return Ok(IntervalUnion::empty());
    }
    let p: Vec<Complex64> = (1..=n as i64)
        .map(|nu| Complex64::new(0.0, TAU * nu as f64) * coeffs.get(nu).unwrap_or_default())
        .collect();
    let g = series_from_power_sums(&p, n);
    let scale = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let one = Complex64::new(1.0, 0.0);

    for arcs in 1..=n / 2 {
        // sum_{j=0..arcs} q_j g_(k-j) = 0 for k = arcs+1..n, q_0 = 1
        let eqs = n - arcs;
        let a = ComplexMatrix::from_fn(eqs, arcs, |r, j| g[arcs + 1 + r - (j + 1)]);
        let b: Vec<Complex64> = (0..eqs).map(|r| -g[arcs + 1 + r]).collect();
        let Ok(q_tail) = lstsq(&a, &b, tol.rank_tol) else {
            continue;
        };
        let mut q = vec![one];
        q.extend(q_tail);
        let residual = (arcs + 1..=n)
            .map(|k| (0..=arcs).map(|j| q[j] * g[k - j]).sum::<Complex64>().norm())
            .fold(0.0, f64::max);
        if residual > tol.residual_tol * scale {
            continue;
        }
        let denominator = Polynomial::new(q);
        let numerator = denominator.mul_truncated(&Polynomial::new(g.clone()), arcs);
        let (Ok(lefts), Ok(rights)) = (
            reciprocal_positions(&numerator, arcs, tol),
            reciprocal_positions(&denominator, arcs, tol),
        ) else {
            continue;
        };
        let union = assemble_arcs(&lefts, &rights, tol.root_tol)?;
        return verify(union, coeffs, n, tol);
    }
    Err(IntervalError::NotRecovered { capacity: n / 2 })
}

/// Real least-squares problem `F(a, b) = data` with parameters laid out as
/// `(a_1, b_1, ..., a_m, b_m)` on the real line (not reduced mod 1).
struct EndpointProblem {
    n: usize,
    target: Vec<Complex64>,
}

impl EndpointProblem {
    fn residual(&self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.n + 1);
        let length: f64 = x.chunks(2).map(|ab| ab[1] - ab[0]).sum();
        out.push(length - self.target[0].re);
        for nu in 1..=self.n {
            let f: Complex64 = x
                .chunks(2)
                .map(|ab| character(nu as f64 * ab[0]) - character(nu as f64 * ab[1]))
                .sum::<Complex64>()
                / Complex64::new(0.0, TAU * nu as f64);
            let d = f - self.target[nu];
            out.push(d.re);
            out.push(d.im);
        }
        out
    }

    fn jacobian(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut rows = Vec::with_capacity(2 * self.n + 1);
        rows.push(x.iter().enumerate().map(|(i, _)| if i % 2 == 0 { -1.0 } else { 1.0 }).collect());
        for nu in 1..=self.n {
            let derivs: Vec<Complex64> = x
                .iter()
                .enumerate()
                .map(|(i, &t)| {
                    let e = character(nu as f64 * t);
                    if i % 2 == 0 {
                        -e
                    } else {
                        e
                    }
                })
                .collect();
            rows.push(derivs.iter().map(|d| d.re).collect());
            rows.push(derivs.iter().map(|d| d.im).collect());
        }
        rows
    }
}

fn cost(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

fn max_abs(r: &[f64]) -> f64 {
    r.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

/// Strictly increasing chain `a_1 < b_1 < ... < b_m < a_1 + 1`.
fn is_valid_chain(x: &[f64]) -> bool {
    x.windows(2).all(|w| w[1] > w[0]) && x.last().is_some_and(|&last| last < x[0] + 1.0)
}

fn random_start(rng: &mut Rng, arcs: usize, length: f64) -> Vec<f64> {
    let mut dirichlet = |k: usize| -> Vec<f64> {
        let e: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let s: f64 = e.iter().sum();
        e.into_iter().map(|v| v / s).collect()
    };
    let lens = dirichlet(arcs);
    let gaps = dirichlet(arcs);
    let mut t: f64 = rng.random();
    let mut x = Vec::with_capacity(2 * arcs);
    for j in 0..arcs {
        x.push(t);
        t += length * lens[j];
        x.push(t);
        t += (1.0 - length) * gaps[j];
    }
    x
}

/// Levenberg-Marquardt with step rejection on invalid chains. Returns the
/// final point and its max-abs residual.
fn solve_from(problem: &EndpointProblem, mut x: Vec<f64>, tol: &ToleranceConfig) -> (Vec<f64>, f64) {
    let dim = x.len();
    let mut r = problem.residual(&x);
    let mut c = cost(&r);
    let mut lambda: f64 = 1e-3;
    let stop = tol.residual_tol * 1e-3;
    for _ in 0..MAX_ITERATIONS {
        if max_abs(&r) <= stop {
            break;
        }
        let jac = problem.jacobian(&x);
        let rows = jac.len();
        let mut improved = false;
        while lambda < 1e12 {
            let damp = lambda.sqrt();
            let a = ComplexMatrix::from_fn(rows + dim, dim, |i, j| {
                let v = if i < rows {
                    jac[i][j]
                } else if i - rows == j {
                    damp
                } else {
                    0.0
                };
                Complex64::new(v, 0.0)
            });
            let b: Vec<Complex64> = (0..rows + dim)
                .map(|i| Complex64::new(if i < rows { -r[i] } else { 0.0 }, 0.0))
                .collect();
            let Ok(step) = lstsq(&a, &b, 0.0) else {
                lambda *= 4.0;
                continue;
            };
            let trial: Vec<f64> = x.iter().zip(&step).map(|(v, s)| v + s.re).collect();
            if is_valid_chain(&trial) {
                let tr = problem.residual(&trial);
                let tc = cost(&tr);
                if tc < c {
                    let moved = step.iter().map(|s| s.re.abs()).fold(0.0, f64::max);
                    x = trial;
                    r = tr;
                    c = tc;
                    lambda = (lambda / 3.0).max(1e-12);
                    improved = moved > 0.0;
                    break;
                }
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    let res = max_abs(&r);
    (x, res)
}

/// Outcome of [`recover_branch_b`].
#[derive(Debug, Clone, PartialEq)]
pub struct BranchBReport {
    pub union: IntervalUnion,
    /// Number of arcs at which a start converged.
    pub arcs: usize,
    /// Index of the first converged start at that arc count.
    pub start: usize,
    pub residual: f64,
}

/// Branch B: for `m = 1..=N`, up to `budget` random starts of the endpoint
/// iteration; the first start (in index order) whose residual falls below
/// `residual_tol` is taken.
pub fn recover_branch_b(
    coeffs: &CoeffTable1D,
    n: usize,
    tol: &ToleranceConfig,
    budget: usize,
    seed: u64,
) -> Result<BranchBReport, IntervalError> {
    let length = check_table(coeffs, n)?;
    let problem = EndpointProblem {
        n,
        target: (0..=n as i64).map(|nu| coeffs.get(nu).unwrap_or_default()).collect(),
    };
    for arcs in 1..=n {
        let mut offset = 0;
        while offset < budget {
            let batch = START_BATCH.min(budget - offset);
            let results = map_indexed(batch, |i| {
                let start = offset + i;
                let mut rng = substream(seed, (arcs * budget + start) as u64);
                let x0 = random_start(&mut rng, arcs, length);
                solve_from(&problem, x0, tol)
            });
            if let Some((i, (x, res))) = results
                .into_iter()
                .enumerate()
                .find(|(_, (_, res))| *res < tol.residual_tol)
            {
                let union = IntervalUnion::new(x.chunks(2).map(|ab| (ab[0], ab[1])))?;
                let union = verify(union, coeffs, n, tol)?;
                return Ok(BranchBReport {
                    union,
                    arcs,
                    start: offset + i,
                    residual: res,
                });
            }
            offset += batch;
        }
    }
    Err(IntervalError::NotRecovered { capacity: n })
}

/// Recovers a union of at most `n` arcs from its coefficients on `0..=n`.
///
/// Branch A is tried first; branch B runs with `budget` starts per arc count
/// and random streams derived from `rng`.
pub fn recover_intervals_minimal(
    coeffs: &CoeffTable1D,
    n: usize,
    tol: &ToleranceConfig,
    budget: usize,
    rng: &mut Rng,
) -> Result<IntervalUnion, IntervalError> {
    check_table(coeffs, n)?;
    if is_zero_table(coeffs, n, tol) {
        return Ok(IntervalUnion::empty());
    }
    if let Ok(u) = recover_branch_a(coeffs, n, tol) {
        return Ok(u);
    }
    let seed: u64 = rng.random();
    recover_branch_b(coeffs, n, tol, budget, seed).map(|r| r.union)
}
