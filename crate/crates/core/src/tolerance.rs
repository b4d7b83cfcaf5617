//! Numerical thresholds shared by every recovery routine.

use serde::{Deserialize, Serialize};

use crate::error::TorusError;

/// Amplitudes at or below this magnitude are treated as absent when a
/// measure is canonicalized.
pub const AMPLITUDE_FLOOR: f64 = 1e-12;

/// Thresholds used by the recovery pipelines.
///
/// * `root_tol`: how far a polynomial root may sit from the unit circle, and
///   the scale at which two recovered positions are considered the same.
/// * `residual_tol`: relative residual below which a linear or nonlinear
///   system counts as consistent; also the amplitude drop floor after a
///   Prony solve.
/// * `match_tol`: bound on the forward residual a recovered object must
///   reproduce, relative to the data scale.
/// * `rank_tol`: relative pivot threshold in rank decisions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub root_tol: f64,
    pub residual_tol: f64,
    pub match_tol: f64,
    pub rank_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            root_tol: 1e-6,
            residual_tol: 1e-9,
            match_tol: 1e-6,
            rank_tol: 1e-9,
        }
    }
}

impl ToleranceConfig {
    /// Checks that every threshold is finite and nonnegative.
    ///
    /// Zero is accepted so that callers can ask for impossible thresholds;
    /// the recovery routines then report failures rather than panicking.
    pub fn validate(&self) -> Result<(), TorusError> {
        let all = [
            ("root_tol", self.root_tol),
            ("residual_tol", self.residual_tol),
            ("match_tol", self.match_tol),
            ("rank_tol", self.rank_tol),
        ];
        for (name, value) in all {
            if !value.is_finite() || value < 0.0 {
                return Err(TorusError::BadTolerance { name, value });
            }
        }
        Ok(())
    }
}
