//! Number of masses above each x coordinate.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PlanarError;
use crate::torus::{Measure2D, TorusPoint};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MultiplicityProfile {
    counts: Vec<(TorusPoint, usize)>,
}

impl MultiplicityProfile {
    /// Sorts by x; rejects zero counts and repeated x.
    pub fn new<P: Into<TorusPoint>, I: IntoIterator<Item = (P, usize)>>(counts: I) -> Result<Self, PlanarError> {
        let mut counts: Vec<(TorusPoint, usize)> = counts.into_iter().map(|(x, t)| (x.into(), t)).collect();
        counts.sort_by(|a, b| a.0.value().total_cmp(&b.0.value()));
        if counts.iter().any(|&(_, t)| t == 0) {
            return Err(PlanarError::BadParams("profile counts must be positive".into()));
        }
        if counts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(PlanarError::BadParams("repeated x in profile".into()));
        }
        Ok(Self { counts })
    }

    pub fn from_measure(mu: &Measure2D) -> Self {
        Self {
            counts: mu.fiber_counts(),
        }
    }

    pub fn counts(&self) -> &[(TorusPoint, usize)] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().map(|c| c.1).sum()
    }

    pub fn max_count(&self) -> usize {
        self.counts.iter().map(|c| c.1).max().unwrap_or(0)
    }

    /// `X_t`: positions with exactly `t` masses.
    pub fn with_count(&self, t: usize) -> impl Iterator<Item = TorusPoint> + '_ {
        self.counts.iter().filter(move |c| c.1 == t).map(|c| c.0)
    }

    /// Checks `sum t(x) <= capacity` and `|{x : t(x) >= t}| <= capacity / t`.
    pub fn check(&self, capacity: usize) -> Result<(), PlanarError> {
        if self.total() > capacity {
            return Err(PlanarError::BadParams(format!(
                "profile holds {} masses, capacity {capacity}",
                self.total()
            )));
        }
        for t in 1..=self.max_count() {
            let above = self.counts.iter().filter(|c| c.1 >= t).count();
            if above * t > capacity {
                return Err(PlanarError::BadParams(format!("decay bound fails at t = {t}")));
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CountRecord {
    x: f64,
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct ProfileRecord {
    counts: Vec<CountRecord>,
}

impl Serialize for MultiplicityProfile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ProfileRecord {
            counts: self
                .counts
                .iter()
                .map(|&(x, count)| CountRecord { x: x.value(), count })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiplicityProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ProfileRecord::deserialize(d)?;
        if r.counts.iter().any(|c| !c.x.is_finite()) {
            return Err(serde::de::Error::custom("non-finite x"));
        }
        Self::new(r.counts.into_iter().map(|c| (c.x, c.count))).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn counts_and_decay() {
        let one = Complex64::new(1.0, 0.0);
        let mu = Measure2D::new([(0.0, 0.0, one), (0.0, 0.5, one), (0.3, 0.1, one)]);
        let p = MultiplicityProfile::from_measure(&mu);
        assert_eq!(p.total(), 3);
        assert_eq!(p.with_count(2).count(), 1);
        assert!(p.check(3).is_ok());
        assert!(p.check(2).is_err());
        let wide = MultiplicityProfile::new([(0.1, 2), (0.2, 2), (0.3, 2)]).unwrap();
        assert!(wide.check(6).is_ok());
        assert!(MultiplicityProfile::new([(0.1, 0)]).is_err());
        assert!(MultiplicityProfile::new([(0.5, 1), (1.5, 2)]).is_err());
    }

    #[test]
    fn json_shape() {
        let p = MultiplicityProfile::new([(0.25, 2)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"counts":[{"x":0.25,"count":2}]}"#);
        assert_eq!(serde_json::from_str::<MultiplicityProfile>(&s).unwrap(), p);
    }
}
