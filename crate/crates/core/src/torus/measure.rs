use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matching::bottleneck_distance;
use super::TorusPoint;
use crate::error::TorusError;
use crate::tolerance::AMPLITUDE_FLOOR;

/// One weighted atom of a measure on the circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass {
    pub position: TorusPoint,
    pub amplitude: Complex64,
}

/// A finite sum of complex point masses on the circle.
///
/// Masses are kept sorted by position with distinct positions and
/// amplitudes above [`AMPLITUDE_FLOOR`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Measure1D {
    masses: Vec<PointMass>,
}

impl Measure1D {
    pub fn new<P, I>(masses: I) -> Self
    where
        P: Into<TorusPoint>,
        I: IntoIterator<Item = (P, Complex64)>,
    {
        let mut raw: Vec<PointMass> = masses
            .into_iter()
            .map(|(p, c)| PointMass {
                position: p.into(),
                amplitude: c,
            })
            .collect();
        raw.sort_by(|a, b| a.position.value().total_cmp(&b.position.value()));
        let mut merged: Vec<PointMass> = Vec::with_capacity(raw.len());
        for m in raw {
            match merged.last_mut() {
                Some(last) if last.position == m.position => last.amplitude += m.amplitude,
                _ => merged.push(m),
            }
        }
        merged.retain(|m| m.amplitude.norm() >= AMPLITUDE_FLOOR);
        Self { masses: merged }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn masses(&self) -> &[PointMass] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = TorusPoint> + '_ {
        self.masses.iter().map(|m| m.position)
    }

    /// Translates every atom by `tau`.
    pub fn shifted(&self, tau: f64) -> Self {
        Self::new(
            self.masses
                .iter()
                .map(|m| (m.position.shifted(tau), m.amplitude)),
        )
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Self {
        let lhs = self.masses.iter().map(|m| (m.position, alpha * m.amplitude));
        let rhs = other.masses.iter().map(|m| (m.position, beta * m.amplitude));
        Self::new(lhs.chain(rhs))
    }

    /// Matching distance between two measures; see [`crate::torus::measure_distance`].
    pub fn distance(&self, other: &Self) -> f64 {
        let a: Vec<Complex64> = self.masses.iter().map(|m| m.amplitude).collect();
        let b: Vec<Complex64> = other.masses.iter().map(|m| m.amplitude).collect();
        bottleneck_distance(&a, &b, |i, j| {
            let p = self.masses[i].position.wrap_distance(other.masses[j].position);
            p.max((a[i] - b[j]).norm())
        })
    }
}

/// One weighted atom of a measure on the 2-torus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass2D {
    pub x: TorusPoint,
    pub y: TorusPoint,
    pub amplitude: Complex64,
}

impl PointMass2D {
    /// Chebyshev distance built from the per-coordinate wrap distances.
    pub fn position_distance(&self, other: &PointMass2D) -> f64 {
        self.x
            .wrap_distance(other.x)
            .max(self.y.wrap_distance(other.y))
    }
}

/// A finite sum of complex point masses on the 2-torus, sorted by (x, y).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Measure2D {
    masses: Vec<PointMass2D>,
}

impl Measure2D {
    pub fn new<P, I>(masses: I) -> Self
    where
        P: Into<TorusPoint>,
        I: IntoIterator<Item = (P, P, Complex64)>,
    {
        let mut raw: Vec<PointMass2D> = masses
            .into_iter()
            .map(|(x, y, c)| PointMass2D {
                x: x.into(),
                y: y.into(),
                amplitude: c,
            })
            .collect();
        raw.sort_by(|a, b| {
            a.x.value()
                .total_cmp(&b.x.value())
                .then(a.y.value().total_cmp(&b.y.value()))
        });
        let mut merged: Vec<PointMass2D> = Vec::with_capacity(raw.len());
        for m in raw {
            match merged.last_mut() {
                Some(last) if last.x == m.x && last.y == m.y => last.amplitude += m.amplitude,
                _ => merged.push(m),
            }
        }
        merged.retain(|m| m.amplitude.norm() >= AMPLITUDE_FLOOR);
        Self { masses: merged }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn masses(&self) -> &[PointMass2D] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn shifted(&self, tau_x: f64, tau_y: f64) -> Self {
        Self::new(
            self.masses
                .iter()
                .map(|m| (m.x.shifted(tau_x), m.y.shifted(tau_y), m.amplitude)),
        )
    }

    pub fn combine(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Self {
        let lhs = self.masses.iter().map(|m| (m.x, m.y, alpha * m.amplitude));
        let rhs = other.masses.iter().map(|m| (m.x, m.y, beta * m.amplitude));
        Self::new(lhs.chain(rhs))
    }

    /// Merges two measures with disjoint supports (amplitudes add on overlap).
    pub fn union(&self, other: &Self) -> Self {
        self.combine(Complex64::new(1.0, 0.0), other, Complex64::new(1.0, 0.0))
    }

    /// Number of atoms over each distinct x coordinate, sorted by x.
    pub fn fiber_counts(&self) -> Vec<(TorusPoint, usize)> {
        let mut out: Vec<(TorusPoint, usize)> = Vec::new();
        for m in &self.masses {
            match out.last_mut() {
                Some((x, count)) if *x == m.x => *count += 1,
                _ => out.push((m.x, 1)),
            }
        }
        out
    }

    pub fn distance(&self, other: &Self) -> f64 {
        let a: Vec<Complex64> = self.masses.iter().map(|m| m.amplitude).collect();
        let b: Vec<Complex64> = other.masses.iter().map(|m| m.amplitude).collect();
        bottleneck_distance(&a, &b, |i, j| {
            let p = self.masses[i].position_distance(&other.masses[j]);
            p.max((a[i] - b[j]).norm())
        })
    }
}

/// Either kind of measure, for callers that only learn the kind at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMeasure {
    OneD(Measure1D),
    TwoD(Measure2D),
}

impl AnyMeasure {
    fn kind(&self) -> &'static str {
        match self {
            AnyMeasure::OneD(_) => "1-torus",
            AnyMeasure::TwoD(_) => "2-torus",
        }
    }
}

/// Distance between two measures of the same kind.
///
/// The value is the smallest, over partial matchings of the two supports, of
/// the largest cost in the matching: a matched pair costs the larger of its
/// position distance and amplitude difference, an unmatched atom costs its
/// amplitude magnitude. It is zero exactly when the measures are equal.
pub fn measure_distance(a: &AnyMeasure, b: &AnyMeasure) -> Result<f64, TorusError> {
    match (a, b) {
        (AnyMeasure::OneD(a), AnyMeasure::OneD(b)) => Ok(a.distance(b)),
        (AnyMeasure::TwoD(a), AnyMeasure::TwoD(b)) => Ok(a.distance(b)),
        _ => Err(TorusError::KindMismatch {
            left: a.kind(),
            right: b.kind(),
        }),
    }
}

#[derive(Serialize, Deserialize)]
struct MassRecord1D {
    theta: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct MeasureRecord1D {
    masses: Vec<MassRecord1D>,
}

impl Serialize for Measure1D {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MeasureRecord1D {
            masses: self
                .masses
                .iter()
                .map(|m| MassRecord1D {
                    theta: m.position.value(),
                    re: m.amplitude.re,
                    im: m.amplitude.im,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Measure1D {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = MeasureRecord1D::deserialize(deserializer)?;
        if rec
            .masses
            .iter()
            .any(|m| !(m.theta.is_finite() && m.re.is_finite() && m.im.is_finite()))
        {
            return Err(serde::de::Error::custom(TorusError::NonFinite));
        }
        Ok(Measure1D::new(
            rec.masses
                .into_iter()
                .map(|m| (m.theta, Complex64::new(m.re, m.im))),
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct MassRecord2D {
    x: f64,
    y: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct MeasureRecord2D {
    masses: Vec<MassRecord2D>,
}

impl Serialize for Measure2D {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MeasureRecord2D {
            masses: self
                .masses
                .iter()
                .map(|m| MassRecord2D {
                    x: m.x.value(),
                    y: m.y.value(),
                    re: m.amplitude.re,
                    im: m.amplitude.im,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Measure2D {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = MeasureRecord2D::deserialize(deserializer)?;
        if rec.masses.iter().any(|m| {
            !(m.x.is_finite() && m.y.is_finite() && m.re.is_finite() && m.im.is_finite())
        }) {
            return Err(serde::de::Error::custom(TorusError::NonFinite));
        }
        Ok(Measure2D::new(
            rec.masses
                .into_iter()
                .map(|m| (m.x, m.y, Complex64::new(m.re, m.im))),
        ))
    }
}
