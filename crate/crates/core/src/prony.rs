//! Recovery of a sparse complex measure on the circle from its Fourier
//! coefficients on `-N..=N`.
//!
//! With `mu = sum_j c_j delta_(theta_j)` and `rho_j = exp(2 pi i theta_j)`,
//! the coefficients are `mu^(n) = sum_j c_j rho_j^(-n)`. The monic
//! polynomial `a(z) = prod_j (z - rho_j)` satisfies
//! `sum_k a_k mu^(n - k) = 0` whenever every index stays inside the table.

use num_complex::Complex64;

use crate::error::PronyError;
use crate::numerics::{lstsq, roots, solve, ComplexMatrix, Polynomial};
use crate::tolerance::ToleranceConfig;
use crate::torus::{character, forward_coeffs_1d, CoeffTable1D, Measure1D, TorusPoint};

/// Values `mu^(-n)..mu^(n)` in index order.
fn window(coeffs: &CoeffTable1D, n: usize) -> Result<Vec<Complex64>, PronyError> {
    let n = n as i64;
    (-n..=n).map(|nu| coeffs.require(nu).map_err(PronyError::from)).collect()
}

/// Largest convolution residual of the monic `a` (ascending coefficients)
/// against the window, over every equation that fits.
fn conv_residual(a: &[Complex64], values: &[Complex64], n: usize) -> f64 {
    let k = a.len() - 1;
    // equation for index nu uses values nu - k ..= nu; nu runs over -n+k..=n
    (k..=2 * n)
        .map(|top| {
            let s: Complex64 = (0..=k).map(|i| a[i] * values[top - i]).sum();
            s.norm()
        })
        .fold(0.0, f64::max)
}

fn fit_annihilator(values: &[Complex64], n: usize, k: usize, tol: &ToleranceConfig) -> Option<Vec<Complex64>> {
    let one = Complex64::new(1.0, 0.0);
    if k == 0 {
        return Some(vec![one]);
    }
    let eqs = 2 * n + 1 - k;
    // row r is the equation with top index k + r
    let a = ComplexMatrix::from_fn(eqs, k, |r, j| values[k + r - j]);
    let b: Vec<Complex64> = (0..eqs).map(|r| -values[r]).collect();
    let x = lstsq(&a, &b, tol.rank_tol).ok()?;
    let mut poly = x;
    poly.push(one);
    Some(poly)
}

pub(crate) fn annihilator_scaled(
    coeffs: &CoeffTable1D,
    n: usize,
    tol: &ToleranceConfig,
    scale: f64,
) -> Result<Polynomial, PronyError> {
    let values = window(coeffs, n)?;
    let limit = tol.residual_tol * scale;
    for k in 0..=n {
        if let Some(a) = fit_annihilator(&values, n, k, tol) {
            if conv_residual(&a, &values, n) <= limit {
                return Ok(Polynomial::new(a));
            }
        }
    }
    Err(PronyError::NoAnnihilator { capacity: n })
}

/// Monic polynomial of least degree `K <= n` whose coefficient sequence
/// annihilates the data on `-n..=n`.
///
/// Degrees are tried in increasing order; the first whose least-squares fit
/// leaves every convolution residual below `residual_tol * max|coeffs|` is
/// returned.
pub fn annihilator(coeffs: &CoeffTable1D, n: usize, tol: &ToleranceConfig) -> Result<Polynomial, PronyError> {
    let scale = window(coeffs, n)?.iter().map(|v| v.norm()).fold(0.0, f64::max);
    annihilator_scaled(coeffs, n, tol, scale)
}

/// Recovers a measure with at most `n` masses from its coefficients on
/// `-n..=n`.
pub fn prony_recover(coeffs: &CoeffTable1D, n: usize, tol: &ToleranceConfig) -> Result<Measure1D, PronyError> {
    let scale = window(coeffs, n)?.iter().map(|v| v.norm()).fold(0.0, f64::max);
    prony_recover_scaled(coeffs, n, tol, scale)
}

/// [`prony_recover`] with an explicit reference magnitude for the
/// consistency thresholds, for tables that are residues of larger ones.
pub(crate) fn prony_recover_scaled(
    coeffs: &CoeffTable1D,
    n: usize,
    tol: &ToleranceConfig,
    scale: f64,
) -> Result<Measure1D, PronyError> {
    let values = window(coeffs, n)?;
    let a = annihilator_scaled(coeffs, n, tol, scale)?;
    let k = a.degree();
    if k == 0 {
        return Ok(Measure1D::empty());
    }

    let mut thetas = Vec::with_capacity(k);
    for rho in roots(&a, tol.root_tol)? {
        let modulus = rho.norm();
        if (modulus - 1.0).abs() > tol.root_tol {
            return Err(PronyError::OffCircle { modulus });
        }
        thetas.push(TorusPoint::from_angle(rho.arg()).value());
    }

    let amplitudes = amplitudes(&values, n, &thetas, tol)?;
    let mu = Measure1D::new(
        thetas
            .iter()
            .zip(&amplitudes)
            .filter(|(_, c)| c.norm() > tol.residual_tol)
            .map(|(&t, &c)| (t, c)),
    );

    let ni = n as i64;
    let forward = forward_coeffs_1d(&mu, -ni..=ni);
    let residual = forward.max_deviation(&coeffs.window(-ni, ni)?);
    let limit = tol.match_tol * scale.max(1.0);
    if residual > limit {
        return Err(PronyError::Inconsistent { residual, limit });
    }
    Ok(mu)
}

/// Solves `mu^(m) = sum_j c_j exp(-2 pi i m theta_j)` for `m = 1..K`,
/// falling back to least squares over the whole window.
fn amplitudes(
    values: &[Complex64],
    n: usize,
    thetas: &[f64],
    tol: &ToleranceConfig,
) -> Result<Vec<Complex64>, PronyError> {
    let k = thetas.len();
    let square = ComplexMatrix::from_fn(k, k, |r, j| character((r + 1) as f64 * thetas[j]));
    let rhs: Vec<Complex64> = (1..=k).map(|m| values[n + m]).collect();
    if let Ok(c) = solve(&square, &rhs, tol.rank_tol) {
        return Ok(c);
    }
    let rows = 2 * n + 1;
    let full = ComplexMatrix::from_fn(rows, k, |r, j| {
        let m = r as f64 - n as f64;
        character(m * thetas[j])
    });
    lstsq(&full, values, tol.rank_tol).map_err(|_| PronyError::Inconsistent {
        residual: f64::INFINITY,
        limit: tol.match_tol,
    })
}
