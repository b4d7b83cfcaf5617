//! Polynomials, root finding, symmetric functions, and dense linear algebra.

mod linalg;
mod poly;
mod roots;
mod symmetric;

pub use linalg::{lstsq, numeric_rank, solve, ComplexMatrix};
pub use poly::Polynomial;
pub use roots::{match_multisets, roots, ROOT_ITERATIONS};
pub use symmetric::{
    elementary_symmetric, newton_girard, power_sums, reflect_sigma, series_from_power_sums, Direction,
    Reflection,
};
