use std::f64::consts::{PI, TAU};

use super::arrangement::{Arrangement, Label};
use crate::error::IntervalError;
use crate::torus::IntervalUnion;

/// Torus position of a slot: even slot `2k` is `k/(2N)`, odd slot `2k+1` is
/// `(k+1)/(2N) - theta/(2 pi)`. With `z = exp(-2 pi i t)` the even slots are
/// the roots of `z^(2N) - 1` and the odd slots those of
/// `z^(2N) - exp(i 2N theta)`.
fn slot_position(slot: usize, n: usize, theta: f64) -> f64 {
    let k = (slot / 2) as f64;
    let m = (2 * n) as f64;
    if slot.is_multiple_of(2) {
        k / m
    } else {
        (k + 1.0) / m - theta / TAU
    }
}

/// Two different unions of `N` arcs whose coefficients agree at
/// `1..=2N-1`, built on the vertices of two interleaved regular
/// `2N`-gons rotated by `theta` relative to each other.
pub fn gen_polygon_counterexample(
    n: usize,
    theta: f64,
    arrangement: &Arrangement,
) -> Result<(IntervalUnion, IntervalUnion), IntervalError> {
    if n < 2 {
        return Err(IntervalError::TooFewArcs { n, min: 2 });
    }
    if arrangement.n() != n {
        return Err(IntervalError::Arrangement(format!(
            "arrangement is for N = {}, not {n}",
            arrangement.n()
        )));
    }
    if !(theta > 0.0 && theta < PI / n as f64) {
        return Err(IntervalError::ThetaOutOfRange { theta, n });
    }
    let pos = |label: Label| {
        let slot = arrangement.slot_of(label).expect("every label is placed");
        slot_position(slot, n, theta)
    };
    let e = IntervalUnion::new((1..=n).map(|j| (pos(Label::Z(j)), pos(Label::W(j)))))?;
    let e_prime = IntervalUnion::new((1..=n).map(|j| (pos(Label::ZPrime(j)), pos(Label::WPrime(j)))))?;
    Ok((e, e_prime))
}
