use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A point of the circle group R/Z, stored by its representative in [0, 1).
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct TorusPoint(f64);

impl TorusPoint {
    pub const ZERO: TorusPoint = TorusPoint(0.0);

    pub fn new(value: f64) -> Self {
        let r = value.rem_euclid(1.0);
        // rem_euclid can round up to exactly 1.0 for tiny negative inputs
        TorusPoint(if r >= 1.0 { 0.0 } else { r })
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Shortest distance around the circle, in [0, 1/2].
    pub fn wrap_distance(self, other: TorusPoint) -> f64 {
        let d = (self.0 - other.0).abs();
        d.min(1.0 - d)
    }

    /// Counterclockwise distance from `self` to `other`, in [0, 1).
    pub fn ccw_distance_to(self, other: TorusPoint) -> f64 {
        TorusPoint::new(other.0 - self.0).0
    }

    pub fn shifted(self, tau: f64) -> Self {
        TorusPoint::new(self.0 + tau)
    }

    /// Angle of a nonzero complex number read as a torus point, so that
    /// `exp(2 pi i t)` has the given argument.
    pub fn from_angle(angle: f64) -> Self {
        TorusPoint::new(angle / std::f64::consts::TAU)
    }
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<f64> for TorusPoint {
    fn from(value: f64) -> Self {
        TorusPoint::new(value)
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for TorusPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(deserializer)?;
        if !v.is_finite() {
            return Err(serde::de::Error::custom("torus coordinate must be finite"));
        }
        Ok(TorusPoint::new(v))
    }
}
