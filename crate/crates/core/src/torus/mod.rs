//! Domain types on the 1- and 2-torus and their exact Fourier transforms.

mod arcs;
mod coeffs;
mod matching;
mod measure;
mod point;
mod transform;

pub use arcs::{Arc, IntervalUnion};
pub use coeffs::{CoeffTable1D, CoeffTable2D};
pub use measure::{measure_distance, AnyMeasure, Measure1D, Measure2D, PointMass, PointMass2D};
pub use point::TorusPoint;
pub use transform::{forward_coeffs_1d, forward_coeffs_2d, forward_coeffs_intervals};

pub(crate) use transform::character;
