//! Exact forward Fourier transforms, used as ground truth by every test.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{CoeffTable1D, CoeffTable2D, IntervalUnion, Measure1D, Measure2D, TorusPoint};

/// `exp(-2 pi i * phase)`, with the phase reduced mod 1 first.
#[inline]
pub(crate) fn character(phase: f64) -> Complex64 {
    Complex64::cis(-TAU * phase.rem_euclid(1.0))
}

#[inline]
fn phase(nu: i64, t: TorusPoint) -> f64 {
    nu as f64 * t.value()
}

/// `mu^(nu) = sum_j c_j exp(-2 pi i nu theta_j)` for each requested `nu`.
pub fn forward_coeffs_1d<I>(mu: &Measure1D, freqs: I) -> CoeffTable1D
where
    I: IntoIterator<Item = i64>,
{
    freqs
        .into_iter()
        .map(|nu| {
            let v = mu
                .masses()
                .iter()
                .map(|m| m.amplitude * character(phase(nu, m.position)))
                .sum();
            (nu, v)
        })
        .collect()
}

/// Fourier coefficients of the indicator of `e`: the total length at 0 and
/// `sum_j (z_j^nu - w_j^nu) / (2 pi i nu)` elsewhere, with
/// `z_j = exp(-2 pi i a_j)`, `w_j = exp(-2 pi i b_j)`.
pub fn forward_coeffs_intervals<I>(e: &IntervalUnion, freqs: I) -> CoeffTable1D
where
    I: IntoIterator<Item = i64>,
{
    freqs
        .into_iter()
        .map(|nu| {
            if nu == 0 {
                return (0, Complex64::new(e.total_length(), 0.0));
            }
            let jump: Complex64 = e
                .arcs()
                .iter()
                .map(|a| character(phase(nu, a.start)) - character(phase(nu, a.end)))
                .sum();
            (nu, jump / Complex64::new(0.0, TAU * nu as f64))
        })
        .collect()
}

/// `mu^(m, n) = sum_j c_j exp(-2 pi i (m x_j + n y_j))` on the given pairs.
pub fn forward_coeffs_2d(mu: &Measure2D, freqs: &[(i64, i64)]) -> CoeffTable2D {
    freqs
        .iter()
        .map(|&(m, n)| {
            let v = mu
                .masses()
                .iter()
                .map(|p| {
                    let ph = phase(m, p.x).rem_euclid(1.0) + phase(n, p.y).rem_euclid(1.0);
                    p.amplitude * character(ph)
                })
                .sum();
            ((m, n), v)
        })
        .collect()
}
