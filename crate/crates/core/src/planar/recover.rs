//! Point masses on the 2-torus from rows of Fourier data.
//!
//! For a fixed row `n = l`, the values `mu^(m, l)` are the 1D coefficients
//! of `sum_x S(x, l) delta_x` with `S(x, l) = sum_(y above x) c e^(-2 pi i l y)`.
//! Row Prony finds the x coordinates; for each x the values `l -> S(x, l)`
//! are the 1D coefficients of the fiber measure over x.

use num_complex::Complex64;
use serde::Serialize;

use super::omega::lemma_rows;
use super::profile::MultiplicityProfile;
use crate::error::{PlanarError, PronyError};
use crate::numerics::{lstsq, ComplexMatrix};
use crate::par::map_indexed;
use crate::prony::prony_recover_scaled;
use crate::tolerance::ToleranceConfig;
use crate::torus::{character, forward_coeffs_2d, CoeffTable1D, CoeffTable2D, Measure1D, Measure2D, TorusPoint};

/// Entries `table(m, r)` for `|m| <= width`, as a 1D table.
pub fn slice_row(table: &CoeffTable2D, r: i64, width: usize) -> Result<CoeffTable1D, PlanarError> {
    let w = width as i64;
    (-w..=w).map(|m| Ok((m, table.require(m, r)?))).collect()
}

/// Groups positions closer than `tol` (wrap metric, single linkage) and
/// returns one representative per group, the circular mean of its members.
fn cluster(mut xs: Vec<f64>, tol: f64) -> Vec<f64> {
    if xs.is_empty() {
        return xs;
    }
    xs.sort_by(f64::total_cmp);
    let mut groups: Vec<Vec<f64>> = vec![vec![xs[0]]];
    for &x in &xs[1..] {
        let last = *groups.last().and_then(|g| g.last()).expect("nonempty");
        if x - last <= tol {
            groups.last_mut().expect("nonempty").push(x);
        } else {
            groups.push(vec![x]);
        }
    }
    if groups.len() > 1 {
        let head = groups[0][0];
        let tail = *groups.last().and_then(|g| g.last()).expect("nonempty");
        if head + 1.0 - tail <= tol {
            let first = groups.remove(0);
            groups.last_mut().expect("nonempty").extend(first.into_iter().map(|x| x + 1.0));
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let base = g[0];
            let mean = g.iter().map(|x| x - base).sum::<f64>() / g.len() as f64;
            TorusPoint::new(base + mean).value()
        })
        .collect()
}

/// Row-Prony supports of the given rows at `width`.
fn row_positions(
    table: &CoeffTable2D,
    rows: impl Iterator<Item = i64>,
    width: usize,
    tol: &ToleranceConfig,
    scale: f64,
) -> Vec<(i64, Result<Measure1D, PlanarError>)> {
    rows.map(|r| {
        let res = slice_row(table, r, width).and_then(|row| {
            prony_recover_scaled(&row, width, tol, scale).map_err(|source| PlanarError::Row { row: r, source })
        });
        (r, res)
    })
    .collect()
}

/// Least-squares `S(x, r)` for the known `xs`, one vector per row.
fn fiber_values(
    table: &CoeffTable2D,
    rows: &[i64],
    width: usize,
    xs: &[f64],
    tol: &ToleranceConfig,
) -> Result<Vec<Vec<Complex64>>, PlanarError> {
    let w = width as i64;
    let a = ComplexMatrix::from_fn(2 * width + 1, xs.len(), |i, j| character((i as i64 - w) as f64 * xs[j]));
    rows.iter()
        .map(|&r| {
            let row = slice_row(table, r, width)?;
            let b: Vec<Complex64> = row.iter().map(|(_, v)| v).collect();
            lstsq(&a, &b, tol.rank_tol).map_err(|_| PlanarError::Residual {
                residual: f64::INFINITY,
                limit: tol.match_tol,
            })
        })
        .collect()
}

fn fiber_table(values: &[Vec<Complex64>], rows: &[i64], j: usize) -> CoeffTable1D {
    rows.iter().zip(values).map(|(&r, v)| (r, v[j])).collect()
}

fn check_residual(mu: &Measure2D, table: &CoeffTable2D, tol: &ToleranceConfig) -> Result<f64, PlanarError> {
    let freqs: Vec<(i64, i64)> = table.frequencies().collect();
    let residual = forward_coeffs_2d(mu, &freqs).max_deviation(table);
    let limit = tol.match_tol * table.max_abs().max(1.0);
    if residual > limit {
        return Err(PlanarError::Residual { residual, limit });
    }
    Ok(residual)
}

fn fiber_masses(x: f64, fiber: &Measure1D) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
    fiber.masses().iter().map(move |m| (x, m.position.value(), m.amplitude))
}

/// Recovers a measure with at most `n` masses, no more than `k` of which
/// share an x coordinate, from rows `-k..=k` at width `n`.
pub fn recover_max_k(table: &CoeffTable2D, n: usize, k: usize, tol: &ToleranceConfig) -> Result<Measure2D, PlanarError> {
    if n == 0 || k == 0 || k > n {
        return Err(PlanarError::BadParams(format!("need 1 <= k <= N, got N = {n}, k = {k}")));
    }
    let scale = table.max_abs();
    let ki = k as i64;
    let rows: Vec<i64> = (-ki..=ki).collect();
    let mut xs = Vec::new();
    for (_, res) in row_positions(table, rows.iter().copied(), n, tol, scale) {
        xs.extend(res?.positions().map(TorusPoint::value));
    }
    let xs = cluster(xs, tol.root_tol);
    let values = fiber_values(table, &rows, n, &xs, tol)?;

    let mut masses = Vec::new();
    for (j, &x) in xs.iter().enumerate() {
        let fiber = prony_recover_scaled(&fiber_table(&values, &rows, j), k, tol, scale).map_err(|source| match source {
            PronyError::NoAnnihilator { .. } => PlanarError::FiberOverflow { x, capacity: k },
            source => PlanarError::Fiber { x, source },
        })?;
        masses.extend(fiber_masses(x, &fiber));
    }
    let mu = Measure2D::new(masses);
    check_residual(&mu, table, tol)?;
    Ok(mu)
}

/// Recovers a measure from rows `|r| <= t` at width `floor(c / t)` for each
/// count `t` in the profile, peeling off fibers in increasing count.
pub fn recover_peeling(
    table: &CoeffTable2D,
    capacity: usize,
    profile: &MultiplicityProfile,
    tol: &ToleranceConfig,
) -> Result<Measure2D, PlanarError> {
    profile.check(capacity)?;
    let scale = table.max_abs();
    let mut recovered = Measure2D::empty();
    let mut remaining = table.clone();

    for t in 1..=profile.max_count() {
        let wanted: Vec<TorusPoint> = profile.with_count(t).collect();
        if wanted.is_empty() {
            continue;
        }
        let width = capacity / t;
        let ti = t as i64;
        let rows: Vec<i64> = (-ti..=ti).collect();
        let mut xs = Vec::new();
        for (r, res) in row_positions(&remaining, rows.iter().copied(), width, tol, scale) {
            let row = res.map_err(|e| match e {
                PlanarError::Row { row, source } => PlanarError::StageRow { stage: t, row, source },
                other => other,
            })?;
            debug_assert!(r.abs() <= ti);
            xs.extend(row.positions().map(TorusPoint::value));
        }
        let xs = cluster(xs, tol.root_tol);
        let values = fiber_values(&remaining, &rows, width, &xs, tol)?;

        let mut stage = Vec::new();
        for x in wanted {
            let (j, &found) = xs
                .iter()
                .enumerate()
                .min_by(|a, b| {
                    let da = TorusPoint::new(*a.1).wrap_distance(x);
                    let db = TorusPoint::new(*b.1).wrap_distance(x);
                    da.total_cmp(&db)
                })
                .filter(|(_, &f)| TorusPoint::new(f).wrap_distance(x) <= tol.root_tol)
                .ok_or(PlanarError::StageMissing { stage: t, x: x.value() })?;
            let fiber = prony_recover_scaled(&fiber_table(&values, &rows, j), t, tol, scale)
                .map_err(|source| PlanarError::StageFiber { stage: t, x: found, source })?;
            if fiber.len() != t {
                return Err(PlanarError::StageCount {
                    stage: t,
                    x: found,
                    found: fiber.len(),
                    expected: t,
                });
            }
            stage.extend(fiber_masses(found, &fiber));
        }
        recovered = recovered.union(&Measure2D::new(stage));
        let freqs: Vec<(i64, i64)> = table.frequencies().collect();
        remaining = table.minus(&forward_coeffs_2d(&recovered, &freqs));
    }
    check_residual(&recovered, table, tol)?;
    Ok(recovered)
}

/// Two different measures that both reproduce the data, with the midpoint
/// of the segment between them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measure2DWitness {
    pub first: Measure2D,
    pub second: Measure2D,
    pub lambda: f64,
    /// `lambda * first + (1 - lambda) * second`.
    pub combination: Measure2D,
    /// Largest deviation of the combination's coefficients from the data.
    pub max_deviation: f64,
}

/// Deduplicates measures that passed verification (distance at most
/// `match_tol`). Exactly one must remain.
pub fn select_unique(candidates: &[Measure2D], table: &CoeffTable2D, tol: &ToleranceConfig) -> Result<Measure2D, PlanarError> {
    let mut distinct: Vec<&Measure2D> = Vec::new();
    for c in candidates {
        if distinct.iter().all(|d| d.distance(c) > tol.match_tol) {
            distinct.push(c);
        }
    }
    match distinct.as_slice() {
        [] => Err(PlanarError::NoCandidate),
        [one] => Ok((*one).clone()),
        [first, second, ..] => {
            let lambda = 0.5;
            let combination = first.combine(Complex64::new(lambda, 0.0), second, Complex64::new(1.0 - lambda, 0.0));
            let freqs: Vec<(i64, i64)> = table.frequencies().collect();
            let max_deviation = forward_coeffs_2d(&combination, &freqs).max_deviation(table);
            Err(PlanarError::Ambiguous(Box::new(Measure2DWitness {
                first: (*first).clone(),
                second: (*second).clone(),
                lambda,
                combination,
                max_deviation,
            })))
        }
    }
}

/// Outcome of [`recover_search_report`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub measure: Measure2D,
    /// Candidate x coordinates found by the row Pronys.
    pub candidates: Vec<f64>,
    pub profiles_tried: usize,
    /// Profiles whose peeling passed verification.
    pub passing: usize,
}

/// Profiles `x -> t(x) >= 0` over `xs` with `1 <= sum <= n`, ordered by
/// total and then lexicographically in the count vector.
fn enumerate_profiles(count: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, count: usize, left: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == count {
            out.push(prefix.clone());
            return;
        }
        for t in 0..=left {
            prefix.push(t);
            rec(prefix, count, left - t, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), count, n, &mut out);
    out.retain(|p| p.iter().sum::<usize>() >= 1);
    out.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum::<usize>()).then_with(|| a.cmp(b)));
    out
}

/// [`recover_search`] with the search statistics.
pub fn recover_search_report(
    table: &CoeffTable2D,
    n: usize,
    tol: &ToleranceConfig,
    budget: usize,
) -> Result<SearchReport, PlanarError> {
    if n == 0 {
        return Err(PlanarError::BadParams("N must be at least 1".into()));
    }
    let capacity = 2 * n;
    for (m, r) in lemma_rows(capacity) {
        table.require(m, r)?;
    }
    if table.max_abs() <= tol.residual_tol {
        return Ok(SearchReport {
            measure: Measure2D::empty(),
            candidates: Vec::new(),
            profiles_tried: 0,
            passing: 0,
        });
    }
    let scale = table.max_abs();
    let mut xs = Vec::new();
    for t in 1..=n {
        let ti = t as i64;
        for (_, res) in row_positions(table, -ti..=ti, capacity / t, tol, scale) {
            if let Ok(row) = res {
                xs.extend(row.positions().map(TorusPoint::value));
            }
        }
    }
    let xs = cluster(xs, tol.root_tol);
    let profiles = enumerate_profiles(xs.len(), n);
    let tried = profiles.len().min(budget);

    let outcomes = map_indexed(tried, |i| {
        let counts = xs.iter().zip(&profiles[i]).filter(|(_, &t)| t > 0).map(|(&x, &t)| (x, t));
        let profile = MultiplicityProfile::new(counts).ok()?;
        recover_peeling(table, capacity, &profile, tol).ok()
    });
    let passing: Vec<Measure2D> = outcomes.into_iter().flatten().collect();
    let measure = match select_unique(&passing, table, tol) {
        Err(PlanarError::NoCandidate) if tried < profiles.len() => return Err(PlanarError::BudgetExhausted(budget)),
        Ok(_) if tried < profiles.len() => return Err(PlanarError::BudgetExhausted(budget)),
        other => other?,
    };
    Ok(SearchReport {
        measure,
        candidates: xs,
        profiles_tried: tried,
        passing: passing.len(),
    })
}

/// Recovers a measure with at most `n` masses from the lemma rows with
/// capacity `2n`, without knowing how many masses lie above each x.
///
/// Every profile over the candidate x coordinates (up to `budget` of them)
/// is peeled; exactly one distinct measure may pass verification.
pub fn recover_search(table: &CoeffTable2D, n: usize, tol: &ToleranceConfig, budget: usize) -> Result<Measure2D, PlanarError> {
    recover_search_report(table, n, tol, budget).map(|r| r.measure)
}
