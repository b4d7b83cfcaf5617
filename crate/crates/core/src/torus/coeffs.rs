use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::TorusError;

/// Fourier data indexed by integer frequency.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoeffTable1D {
    entries: BTreeMap<i64, Complex64>,
}

impl CoeffTable1D {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, nu: i64, value: Complex64) {
        self.entries.insert(nu, value);
    }

    pub fn get(&self, nu: i64) -> Option<Complex64> {
        self.entries.get(&nu).copied()
    }

    pub fn require(&self, nu: i64) -> Result<Complex64, TorusError> {
        self.get(nu).ok_or(TorusError::MissingFrequency(nu))
    }

    /// Checks that every frequency in `lo..=hi` is present.
    pub fn require_range(&self, lo: i64, hi: i64) -> Result<(), TorusError> {
        (lo..=hi).try_for_each(|nu| self.require(nu).map(|_| ()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference over the frequencies of `self`; a
    /// frequency missing from `other` counts as infinitely far.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .map(|(k, v)| other.get(*k).map_or(f64::INFINITY, |w| (v - w).norm()))
            .fold(0.0, f64::max)
    }

    /// Restriction to `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Self, TorusError> {
        let mut out = Self::new();
        for nu in lo..=hi {
            out.insert(nu, self.require(nu)?);
        }
        Ok(out)
    }

    pub fn map<F: Fn(i64, Complex64) -> Complex64>(&self, f: F) -> Self {
        self.iter().map(|(k, v)| (k, f(k, v))).collect()
    }
}

impl FromIterator<(i64, Complex64)> for CoeffTable1D {
    fn from_iter<I: IntoIterator<Item = (i64, Complex64)>>(iter: I) -> Self {
        Self {
            entries: iter.into_iter().collect(),
        }
    }
}

/// Fourier data indexed by integer frequency pairs `(m, n)`, where `m` pairs
/// with the x coordinate and `n` with the y coordinate.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoeffTable2D {
    entries: BTreeMap<(i64, i64), Complex64>,
}

impl CoeffTable2D {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, m: i64, n: i64, value: Complex64) {
        self.entries.insert((m, n), value);
    }

    pub fn get(&self, m: i64, n: i64) -> Option<Complex64> {
        self.entries.get(&(m, n)).copied()
    }

    pub fn require(&self, m: i64, n: i64) -> Result<Complex64, TorusError> {
        self.get(m, n).ok_or(TorusError::MissingFrequency2D(m, n))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .map(|(&(m, n), v)| other.get(m, n).map_or(f64::INFINITY, |w| (v - w).norm()))
            .fold(0.0, f64::max)
    }

    /// Entrywise `self - other` over the frequencies of `self`; frequencies
    /// missing from `other` are left unchanged.
    pub fn minus(&self, other: &Self) -> Self {
        self.iter()
            .map(|((m, n), v)| ((m, n), v - other.get(m, n).unwrap_or_default()))
            .collect()
    }
}

impl FromIterator<((i64, i64), Complex64)> for CoeffTable2D {
    fn from_iter<I: IntoIterator<Item = ((i64, i64), Complex64)>>(iter: I) -> Self {
        Self {
            entries: iter.into_iter().collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Entry1D {
    nu: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct Table1DRecord {
    entries: Vec<Entry1D>,
}

impl Serialize for CoeffTable1D {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Table1DRecord {
            entries: self
                .iter()
                .map(|(nu, v)| Entry1D {
                    nu,
                    re: v.re,
                    im: v.im,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoeffTable1D {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = Table1DRecord::deserialize(deserializer)?;
        let mut out = CoeffTable1D::new();
        for e in rec.entries {
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(serde::de::Error::custom(TorusError::NonFinite));
            }
            if out.get(e.nu).is_some() {
                return Err(serde::de::Error::custom(format!(
                    "duplicate frequency {}",
                    e.nu
                )));
            }
            out.insert(e.nu, Complex64::new(e.re, e.im));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct Entry2D {
    m: i64,
    n: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct Table2DRecord {
    entries: Vec<Entry2D>,
}

impl Serialize for CoeffTable2D {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Table2DRecord {
            entries: self
                .iter()
                .map(|((m, n), v)| Entry2D {
                    m,
                    n,
                    re: v.re,
                    im: v.im,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoeffTable2D {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = Table2DRecord::deserialize(deserializer)?;
        let mut out = CoeffTable2D::new();
        for e in rec.entries {
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(serde::de::Error::custom(TorusError::NonFinite));
            }
            if out.get(e.m, e.n).is_some() {
                return Err(serde::de::Error::custom(format!(
                    "duplicate frequency ({}, {})",
                    e.m, e.n
                )));
            }
            out.insert(e.m, e.n, Complex64::new(e.re, e.im));
        }
        Ok(out)
    }
}
