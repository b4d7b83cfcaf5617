//! Recovery of interval unions and sparse point-mass measures on the one-
//! and two-dimensional torus from finite sets of Fourier coefficients.

pub mod error;
pub mod numerics;
pub mod par;
pub mod planar;
pub mod prony;
pub mod rng;
pub mod sampling;
pub mod tolerance;
pub mod torus;

pub use error::*;
pub use tolerance::ToleranceConfig;
pub mod intervals;
