use num_complex::Complex64;
use thiserror::Error;

use crate::planar::Measure2DWitness;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TorusError {
    #[error("tolerance {name} must be finite and nonnegative, got {value}")]
    BadTolerance { name: &'static str, value: f64 },
    #[error("arc {index} is empty")]
    EmptyArc { index: usize },
    #[error("arcs {first} and {second} overlap or touch")]
    OverlappingArcs { first: usize, second: usize },
    #[error("total arc length {0} is not below 1")]
    TotalLength(f64),
    #[error("cannot compare a {left} measure with a {right} measure")]
    KindMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("coefficient table has no entry at frequency {0}")]
    MissingFrequency(i64),
    #[error("coefficient table has no entry at frequency ({0}, {1})")]
    MissingFrequency2D(i64, i64),
    #[error("non-finite value in input")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols} but right-hand side has length {rhs}")]
    DimensionMismatch { rows: usize, cols: usize, rhs: usize },
    #[error("matrix is numerically singular (rank {rank} < {needed})")]
    Singular { rank: usize, needed: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial of degree {0} has no roots to extract")]
    Degree(usize),
    #[error("root iteration did not converge: residual {residual:e}")]
    NoConvergence {
        best: Vec<Complex64>,
        residual: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetricError {
    #[error("top elementary symmetric value is zero; the multiset is not unimodular")]
    ZeroProduct,
    #[error("cannot reflect to degree {m} from {known} known values")]
    BadDegree { m: usize, known: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PronyError {
    #[error(transparent)]
    Table(#[from] TorusError),
    #[error("data inconsistent with at most {capacity} masses")]
    NoAnnihilator { capacity: usize },
    #[error("data not generated by unit-modulus exponentials (root modulus {modulus})")]
    OffCircle { modulus: f64 },
    #[error("inconsistent data: forward residual {residual:e} exceeds {limit:e}")]
    Inconsistent { residual: f64, limit: f64 },
    #[error(transparent)]
    Roots(#[from] RootError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error("endpoint measure recovery failed: {0}")]
    Prony(#[from] PronyError),
    #[error("zeroth coefficient {0} is not real")]
    NonRealLength(Complex64),
    #[error("zeroth coefficient {0} is not a length in [0, 1)")]
    BadLength(f64),
    #[error("endpoint amplitude {0} is not +1 or -1")]
    NotUnitJump(Complex64),
    #[error("{left} left endpoints but {right} right endpoints")]
    UnbalancedEndpoints { left: usize, right: usize },
    #[error("endpoints do not alternate between left and right")]
    Alternation,
    #[error("total length {found} does not match coefficient {expected}")]
    LengthMismatch { found: f64, expected: f64 },
    #[error("recovered set reproduces the data only to {residual:e} (limit {limit:e})")]
    Residual { residual: f64, limit: f64 },
    #[error("no union of at most {capacity} arcs recovered within budget")]
    NotRecovered { capacity: usize },
    #[error("angle {theta} outside (0, pi/{n})")]
    ThetaOutOfRange { theta: f64, n: usize },
    #[error("need N >= {min}, got {n}")]
    TooFewArcs { n: usize, min: usize },
    #[error("invalid arrangement: {0}")]
    Arrangement(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanarError {
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("row {row}: {source}")]
    Row { row: i64, source: PronyError },
    #[error("fiber over x = {x} holds more than {capacity} masses")]
    FiberOverflow { x: f64, capacity: usize },
    #[error("stage {stage}: row {row}: {source}")]
    StageRow {
        stage: usize,
        row: i64,
        source: PronyError,
    },
    #[error("fiber over x = {x}: {source}")]
    Fiber { x: f64, source: PronyError },
    #[error("stage {stage}: fiber over x = {x}: {source}")]
    StageFiber {
        stage: usize,
        x: f64,
        source: PronyError,
    },
    #[error("stage {stage}: fiber over x = {x} has {found} masses, profile says {expected}")]
    StageCount {
        stage: usize,
        x: f64,
        found: usize,
        expected: usize,
    },
    #[error("stage {stage}: profile position x = {x} not seen in any row")]
    StageMissing { stage: usize, x: f64 },
    #[error("recovered measure reproduces the data only to {residual:e} (limit {limit:e})")]
    Residual { residual: f64, limit: f64 },
    #[error("no candidate measure reproduces the data")]
    NoCandidate,
    #[error("two different measures reproduce the data")]
    Ambiguous(Box<Measure2DWitness>),
    #[error("profile enumeration budget of {0} exhausted")]
    BudgetExhausted(usize),
    #[error("duplicate point ({0}, {1})")]
    DuplicatePoint(f64, f64),
    #[error("no direction separating the points after {0} draws")]
    NoDirection(usize),
    #[error("interpolation residual {0:e} too large")]
    Interpolation(f64),
    #[error("trials must be at least 1")]
    NoTrials,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplingError {
    #[error("cannot place {count} points with separation {separation} on the circle")]
    Infeasible { count: usize, separation: f64 },
    #[error("bad parameters: {0}")]
    BadParams(String),
}
