//! Labelings of the `4N` vertices of two interleaved regular `2N`-gons.
//!
//! Slots `0..4N` are the vertices in increasing torus order; even slots
//! belong to the polygon `P` (roots of `z^(2N) - 1`) and odd slots to the
//! rotated polygon `Q`. An arrangement places the endpoints `z_j, w_j` of
//! one union and `z'_j, w'_j` of the other so that
//!
//! 1. unprimed labels read `z_1, w_1, ..., z_N, w_N` in slot order, and
//!    primed labels read `w'_1, z'_2, w'_2, ..., z'_N, w'_N, z'_1` (the
//!    cyclic order `z'_1, w'_1, ...` with arc 1 wrapping past slot 0);
//! 2. `z_j` and `w'_j` sit on `P` slots, `z'_j` and `w_j` on `Q` slots.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::IntervalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Z(usize),
    W(usize),
    ZPrime(usize),
    WPrime(usize),
}

/// Written as `z1`, `w1`, `z'1`, `w'1`.
impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Z(j) => write!(f, "z{j}"),
            Label::W(j) => write!(f, "w{j}"),
            Label::ZPrime(j) => write!(f, "z'{j}"),
            Label::WPrime(j) => write!(f, "w'{j}"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Label {
    fn is_primed(self) -> bool {
        matches!(self, Label::ZPrime(_) | Label::WPrime(_))
    }

    /// Whether the label belongs on a `P` (even) slot.
    fn on_p(self) -> bool {
        matches!(self, Label::Z(_) | Label::WPrime(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrangement {
    labels: Vec<Label>,
}

fn unprimed_reading(n: usize) -> Vec<Label> {
    (1..=n).flat_map(|j| [Label::Z(j), Label::W(j)]).collect()
}

fn primed_reading(n: usize) -> Vec<Label> {
    let mut out = vec![Label::WPrime(1)];
    for j in 2..=n {
        out.push(Label::ZPrime(j));
        out.push(Label::WPrime(j));
    }
    out.push(Label::ZPrime(1));
    out
}

impl Arrangement {
    /// Validates a full labeling, slot by slot.
    pub fn new(labels: Vec<Label>) -> Result<Self, IntervalError> {
        let bad = |msg: String| Err(IntervalError::Arrangement(msg));
        if labels.is_empty() || !labels.len().is_multiple_of(4) {
            return bad(format!("{} labels is not a positive multiple of 4", labels.len()));
        }
        let n = labels.len() / 4;
        for (slot, &l) in labels.iter().enumerate() {
            if l.on_p() != (slot % 2 == 0) {
                return bad(format!("{l:?} at slot {slot} is on the wrong polygon"));
            }
        }
        let unprimed: Vec<Label> = labels.iter().copied().filter(|l| !l.is_primed()).collect();
        if unprimed != unprimed_reading(n) {
            return bad("unprimed labels are out of order".into());
        }
        let primed: Vec<Label> = labels.iter().copied().filter(|l| l.is_primed()).collect();
        if primed != primed_reading(n) {
            return bad("primed labels are out of order".into());
        }
        Ok(Self { labels })
    }

    /// The arrangement whose unprimed labels occupy the given slots.
    pub fn from_unprimed_slots(n: usize, slots: &[usize]) -> Result<Self, IntervalError> {
        let mut sorted = slots.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if n == 0 || sorted.len() != 2 * n || sorted.last().is_some_and(|&s| s >= 4 * n) {
            return Err(IntervalError::Arrangement(format!("bad slot set {slots:?} for N = {n}")));
        }
        let mut labels = vec![None; 4 * n];
        for (&slot, label) in sorted.iter().zip(unprimed_reading(n)) {
            labels[slot] = Some(label);
        }
        let mut primed = primed_reading(n).into_iter();
        for l in labels.iter_mut().filter(|l| l.is_none()) {
            *l = primed.next();
        }
        Self::new(labels.into_iter().map(|l| l.expect("every slot filled")).collect())
    }

    /// Unprimed labels on slots `0..2N`.
    pub fn first(n: usize) -> Self {
        let slots: Vec<usize> = (0..2 * n).collect();
        Self::from_unprimed_slots(n, &slots).expect("valid for every N >= 1")
    }

    pub fn n(&self) -> usize {
        self.labels.len() / 4
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn slot_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

/// Nondecreasing sequences of length `len` drawn from `values`.
fn multisets(values: &[usize], len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        for mut rest in multisets(&values[i..], len - 1) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

/// All arrangements for `N`, from the encoding: pick `N` odd numbers from
/// `1, 3, ..., 2N+1` with replacement, list each twice in increasing order
/// as `b_1..b_2N`, and place the unprimed labels at positions
/// `a_i = b_i + i - 1` (1-based, so slot `a_i - 1`).
pub fn enumerate_arrangements(n: usize) -> Vec<Arrangement> {
    if n == 0 {
        return Vec::new();
    }
    let odd: Vec<usize> = (0..=n).map(|k| 2 * k + 1).collect();
    let mut out: Vec<Arrangement> = multisets(&odd, n)
        .into_iter()
        .map(|choice| {
            let b: Vec<usize> = choice.iter().flat_map(|&v| [v, v]).collect();
            let slots: Vec<usize> = b.iter().enumerate().map(|(i, &bi)| bi + i - 1).collect();
            Arrangement::from_unprimed_slots(n, &slots).expect("encoded slots form an arrangement")
        })
        .collect();
    out.sort();
    out
}

/// All arrangements for `N` found by filtering every placement of `N`
/// labels of each of the four kinds against the rules. Indices within a
/// kind are forced by the reading order.
pub fn brute_force_arrangements(n: usize) -> Vec<Arrangement> {
    fn rec(word: &mut Vec<u8>, left: &mut [usize; 4], out: &mut Vec<Vec<u8>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(word.clone());
            return;
        }
        for kind in 0..4 {
            if left[kind] > 0 {
                left[kind] -= 1;
                word.push(kind as u8);
                rec(word, left, out);
                word.pop();
                left[kind] += 1;
            }
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut words = Vec::new();
    rec(&mut Vec::new(), &mut [n; 4], &mut words);

    let mut out: Vec<Arrangement> = words
        .into_iter()
        .filter_map(|word| {
            // number each kind in reading order, then let validation decide
            let mut z = 0;
            let mut w = 0;
            let mut primed = primed_reading(n).into_iter();
            let labels: Vec<Label> = word
                .iter()
                .map(|&k| match k {
                    0 => {
                        z += 1;
                        Label::Z(z)
                    }
                    1 => {
                        w += 1;
                        Label::W(w)
                    }
                    _ => {
                        let next = primed.next().expect("N primed of each kind");
                        let kind_matches = matches!((k, next), (2, Label::ZPrime(_)) | (3, Label::WPrime(_)));
                        if kind_matches {
                            next
                        } else {
                            // a label of the other kind, which validation rejects
                            match next {
                                Label::ZPrime(j) => Label::WPrime(j),
                                Label::WPrime(j) => Label::ZPrime(j),
                                other => other,
                            }
                        }
                    }
                })
                .collect();
            Arrangement::new(labels).ok()
        })
        .collect();
    out.sort();
    out
}
