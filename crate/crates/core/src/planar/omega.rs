//! Finite frequency sets in `Z^2`.

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::PlanarError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaKind {
    MaxK,
    Sufficient,
    Triangle,
    Custom,
}

/// A duplicate-free list of frequency pairs `(m, n)`, `m` acting on x and
/// `n` on y.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaSet {
    kind: OmegaKind,
    #[serde(rename = "N")]
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    freqs: Vec<(i64, i64)>,
}

/// Rows `r = -c..=c`, each with `|m| <= floor(c / max(1, |r|))`.
pub fn lemma_rows(c: usize) -> Vec<(i64, i64)> {
    let c = c as i64;
    let mut out = Vec::new();
    for r in -c..=c {
        let w = c / r.abs().max(1);
        out.extend((-w..=w).map(|m| (m, r)));
    }
    out
}

/// `sum_r (2 floor(M / max(1, |r|)) + 1)` over `r = -M..=M` with `M = 2N`.
pub fn sufficient_size(n: usize) -> usize {
    let m = 2 * n;
    (0..=m).map(|r| 2 * (m / r.max(1)) + 1).sum::<usize>() * 2 - (2 * m + 1)
}

fn max_k_freqs(n: usize, k: usize) -> Vec<(i64, i64)> {
    let (n, k) = (n as i64, k as i64);
    (-k..=k).flat_map(|l| (-n..=n).map(move |m| (m, l))).collect()
}

fn triangle_freqs(n: usize) -> Vec<(i64, i64)> {
    let top = 2 * n as i64 - 1;
    (0..=top).flat_map(|m| (0..=top - m).map(move |j| (m, j))).collect()
}

/// The standard sets:
/// * `MaxK`: rows `-k..=k`, columns `-N..=N`;
/// * `Sufficient`: [`lemma_rows`] with `c = 2N`;
/// * `Triangle`: `m, n >= 0` with `m + n <= 2N - 1`.
pub fn build_omega(kind: OmegaKind, n: usize, k: Option<usize>) -> Result<OmegaSet, PlanarError> {
    let bad = |msg: &str| Err(PlanarError::BadParams(msg.to_string()));
    if n == 0 {
        return bad("N must be at least 1");
    }
    let freqs = match (kind, k) {
        (OmegaKind::MaxK, Some(k)) if (1..=n).contains(&k) => max_k_freqs(n, k),
        (OmegaKind::MaxK, Some(_)) => return bad("k must lie in 1..=N"),
        (OmegaKind::MaxK, None) => return bad("max_k needs k"),
        (_, Some(_)) => return bad("k is only used by max_k"),
        (OmegaKind::Sufficient, None) => lemma_rows(2 * n),
        (OmegaKind::Triangle, None) => triangle_freqs(n),
        (OmegaKind::Custom, None) => return bad("custom sets are built with OmegaSet::custom"),
    };
    Ok(OmegaSet { kind, n, k, freqs })
}

impl OmegaSet {
    pub fn custom(n: usize, freqs: Vec<(i64, i64)>) -> Result<Self, PlanarError> {
        let set = Self {
            kind: OmegaKind::Custom,
            n,
            k: None,
            freqs,
        };
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<(), PlanarError> {
        let unique: BTreeSet<_> = self.freqs.iter().collect();
        if unique.len() != self.freqs.len() {
            return Err(PlanarError::BadParams("duplicate frequency pair".into()));
        }
        if self.kind != OmegaKind::Custom {
            let expect = build_omega(self.kind, self.n, self.k)?;
            let want: BTreeSet<_> = expect.freqs.iter().collect();
            if want != unique {
                return Err(PlanarError::BadParams(format!("frequencies do not form the {:?} set", self.kind)));
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> OmegaKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn freqs(&self) -> &[(i64, i64)] {
        &self.freqs
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// The common second coordinate, when every pair has the same one.
    pub fn horizontal_line(&self) -> Option<i64> {
        let first = self.freqs.first()?.1;
        self.freqs.iter().all(|f| f.1 == first).then_some(first)
    }
}

#[derive(Deserialize)]
struct OmegaRecord {
    kind: OmegaKind,
    #[serde(rename = "N")]
    n: usize,
    #[serde(default)]
    k: Option<usize>,
    freqs: Vec<(i64, i64)>,
}

impl<'de> Deserialize<'de> for OmegaSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = OmegaRecord::deserialize(d)?;
        let set = OmegaSet {
            kind: r.kind,
            n: r.n,
            k: r.k,
            freqs: r.freqs,
        };
        set.validate().map_err(serde::de::Error::custom)?;
        Ok(set)
    }
}
