use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Measure1D, TorusPoint};
use crate::error::TorusError;

/// Open arc traversed counterclockwise from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: TorusPoint,
    pub end: TorusPoint,
}

impl Arc {
    pub fn length(&self) -> f64 {
        self.start.ccw_distance_to(self.end)
    }

    pub fn contains(&self, t: TorusPoint) -> bool {
        let d = self.start.ccw_distance_to(t);
        d > 0.0 && d < self.length()
    }
}

/// Disjoint union of open arcs, sorted by left endpoint.
///
/// Arcs are nonempty, pairwise disjoint, share no endpoints, and their total
/// length is below 1. The empty union is allowed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalUnion {
    arcs: Vec<Arc>,
}

impl IntervalUnion {
    pub fn new<P, I>(arcs: I) -> Result<Self, TorusError>
    where
        P: Into<TorusPoint>,
        I: IntoIterator<Item = (P, P)>,
    {
        let mut arcs: Vec<Arc> = arcs
            .into_iter()
            .map(|(a, b)| Arc {
                start: a.into(),
                end: b.into(),
            })
            .collect();
        if arcs
            .iter()
            .any(|a| !(a.start.value().is_finite() && a.end.value().is_finite()))
        {
            return Err(TorusError::NonFinite);
        }
        for (index, arc) in arcs.iter().enumerate() {
            if arc.start == arc.end {
                return Err(TorusError::EmptyArc { index });
            }
        }
        arcs.sort_by(|a, b| a.start.value().total_cmp(&b.start.value()));
        let n = arcs.len();
        if n > 1 {
            for i in 0..n {
                let j = (i + 1) % n;
                let gap = arcs[i].start.ccw_distance_to(arcs[j].start);
                if gap == 0.0 || arcs[i].length() >= gap {
                    return Err(TorusError::OverlappingArcs {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let total: f64 = arcs.iter().map(Arc::length).sum();
        if total >= 1.0 {
            return Err(TorusError::TotalLength(total));
        }
        Ok(Self { arcs })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.arcs.iter().map(Arc::length).sum()
    }

    pub fn contains(&self, t: TorusPoint) -> bool {
        self.arcs.iter().any(|a| a.contains(t))
    }

    pub fn shifted(&self, tau: f64) -> Self {
        Self {
            arcs: {
                let mut v: Vec<Arc> = self
                    .arcs
                    .iter()
                    .map(|a| Arc {
                        start: a.start.shifted(tau),
                        end: a.end.shifted(tau),
                    })
                    .collect();
                v.sort_by(|a, b| a.start.value().total_cmp(&b.start.value()));
                v
            },
        }
    }

    /// Derivative of the indicator: +1 at every left endpoint, -1 at every
    /// right endpoint.
    pub fn endpoint_measure(&self) -> Measure1D {
        let one = Complex64::new(1.0, 0.0);
        Measure1D::new(
            self.arcs
                .iter()
                .flat_map(|a| [(a.start, one), (a.end, -one)]),
        )
    }

    /// Matching distance between the endpoint measures of the two unions.
    pub fn distance(&self, other: &Self) -> f64 {
        self.endpoint_measure().distance(&other.endpoint_measure())
    }

    /// Smallest gap between any two endpoints, or 1 when there are none.
    pub fn min_endpoint_separation(&self) -> f64 {
        let mut pts: Vec<f64> = self
            .arcs
            .iter()
            .flat_map(|a| [a.start.value(), a.end.value()])
            .collect();
        if pts.len() < 2 {
            return 1.0;
        }
        pts.sort_by(f64::total_cmp);
        let mut best = 1.0 - pts[pts.len() - 1] + pts[0];
        for w in pts.windows(2) {
            best = best.min(w[1] - w[0]);
        }
        best
    }
}

#[derive(Serialize, Deserialize)]
struct UnionRecord {
    arcs: Vec<[f64; 2]>,
}

impl Serialize for IntervalUnion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        UnionRecord {
            arcs: self
                .arcs
                .iter()
                .map(|a| [a.start.value(), a.end.value()])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntervalUnion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = UnionRecord::deserialize(deserializer)?;
        IntervalUnion::new(rec.arcs.into_iter().map(|[a, b]| (a, b)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_wrapping_arc() {
        let e = IntervalUnion::new([(0.9, 0.1), (0.3, 0.4)]).unwrap();
        assert_eq!(e.len(), 2);
        assert!((e.total_length() - 0.3).abs() < 1e-15);
        assert!(e.contains(TorusPoint::new(0.95)));
        assert!(e.contains(TorusPoint::new(0.05)));
        assert!(!e.contains(TorusPoint::new(0.2)));
    }

    #[test]
    fn rejects_overlap_and_shared_endpoints() {
        assert!(matches!(
            IntervalUnion::new([(0.0, 0.5), (0.4, 0.6)]),
            Err(TorusError::OverlappingArcs { .. })
        ));
        assert!(matches!(
            IntervalUnion::new([(0.0, 0.5), (0.5, 0.6)]),
            Err(TorusError::OverlappingArcs { .. })
        ));
        assert!(matches!(
            IntervalUnion::new([(0.2, 0.2)]),
            Err(TorusError::EmptyArc { index: 0 })
        ));
        // wrapping arc swallowing another
        assert!(IntervalUnion::new([(0.8, 0.3), (0.1, 0.2)]).is_err());
    }

    #[test]
    fn endpoint_measure_and_distance() {
        let e = IntervalUnion::new([(0.0, 0.5)]).unwrap();
        let mu = e.endpoint_measure();
        assert_eq!(mu.len(), 2);
        let f = IntervalUnion::new([(0.0, 0.25), (0.5, 0.75)]).unwrap();
        assert_eq!(e.distance(&e), 0.0);
        assert!(e.distance(&f) > 0.1);
        assert!((f.min_endpoint_separation() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let e = IntervalUnion::new([(0.9, 0.1), (0.3, 0.4)]).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"arcs":[[0.3,0.4],[0.9,0.1]]}"#);
        let back: IntervalUnion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<IntervalUnion>(r#"{"arcs":[[0.0,0.5],[0.4,0.6]]}"#).is_err());
    }
}
