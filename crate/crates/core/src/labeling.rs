//! Vertex labelings and the graceful / strongly graceful checkers.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::tree::Tree;

/// A total map from vertices `0..order` to non-negative labels.
///
/// Labelings are not tied to a tree; the checkers compare orders at the
/// call site.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    labels: Vec<usize>,
}

impl Labeling {
    pub fn new(labels: Vec<usize>) -> Self {
        Labeling { labels }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn values(&self) -> &[usize] {
        &self.labels
    }

    pub fn into_values(self) -> Vec<usize> {
        self.labels
    }

    /// Vertex carrying `label`, if any.
    pub fn vertex_with(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

impl From<Vec<usize>> for Labeling {
    fn from(labels: Vec<usize>) -> Self {
        Labeling::new(labels)
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.labels)
    }
}

fn check_order(t: &Tree, f: &Labeling) -> Result<()> {
    if t.order() != f.order() {
        return Err(Error::OrderMismatch { labeling: f.order(), tree: t.order() });
    }
    Ok(())
}

/// Edge weights `|f(u) - f(v)|`, sorted ascending.
pub fn edge_weights(t: &Tree, f: &Labeling) -> Result<Vec<usize>> {
    check_order(t, f)?;
    let mut w: Vec<usize> = t
        .edges()
        .iter()
        .map(|&(u, v)| f.get(u).abs_diff(f.get(v)))
        .collect();
    w.sort_unstable();
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OrderMismatch { labeling: usize, tree: usize },
    LabelOutOfRange { vertex: usize, label: usize },
    DuplicateLabel { label: usize, vertices: Vec<usize> },
    /// A weight in `1..n` that no edge carries.
    MissingWeight { weight: usize },
    /// A weight carried by more than one edge.
    RepeatedWeight { weight: usize, count: usize },
    /// A weight of 0 or at least `n`.
    WeightOutOfRange { weight: usize },
    PairSumMismatch { a: usize, b: usize, sum: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OrderMismatch { labeling, tree } => {
                write!(f, "labeling order {labeling} differs from tree order {tree}")
            }
            Violation::LabelOutOfRange { vertex, label } => {
                write!(f, "vertex {vertex} has out-of-range label {label}")
            }
            Violation::DuplicateLabel { label, vertices } => {
                write!(f, "label {label} used on vertices {vertices:?}")
            }
            Violation::MissingWeight { weight } => write!(f, "weight {weight} missing"),
            Violation::RepeatedWeight { weight, count } => {
                write!(f, "weight {weight} appears {count} times")
            }
            Violation::WeightOutOfRange { weight } => write!(f, "weight {weight} out of range"),
            Violation::PairSumMismatch { a, b, sum, expected } => {
                write!(f, "matched pair {a}-{b} sums to {sum}, expected {expected}")
            }
        }
    }
}

/// Outcome of a checker; `ok` exactly when `violations` is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        VerificationReport { ok: violations.is_empty(), violations }
    }

    /// Converts a failed report into `Error::NotGraceful`.
    pub fn into_result(self) -> Result<()> {
        if self.ok {
            Ok(())
        } else {
            let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            Err(Error::NotGraceful(msgs.join("; ")))
        }
    }
}

fn graceful_violations(t: &Tree, f: &Labeling) -> Vec<Violation> {
    let n = t.order();
    if f.order() != n {
        return vec![Violation::OrderMismatch { labeling: f.order(), tree: n }];
    }
    let mut out = Vec::new();

    let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let l = f.get(v);
        if l >= n {
            out.push(Violation::LabelOutOfRange { vertex: v, label: l });
        }
        by_label.entry(l).or_default().push(v);
    }
    for (label, vertices) in by_label {
        if vertices.len() > 1 {
            out.push(Violation::DuplicateLabel { label, vertices });
        }
    }

    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, v) in t.edges() {
        *count.entry(f.get(u).abs_diff(f.get(v))).or_default() += 1;
    }
    for (&weight, &c) in &count {
        if weight == 0 || weight >= n {
            out.push(Violation::WeightOutOfRange { weight });
        } else if c > 1 {
            out.push(Violation::RepeatedWeight { weight, count: c });
        }
    }
    for weight in 1..n {
        if !count.contains_key(&weight) {
            out.push(Violation::MissingWeight { weight });
        }
    }
    out
}

/// Checks that `f` is a bijection onto `0..n` whose edge weights are
/// exactly `1..n`. Every violation is reported.
pub fn verify_graceful(t: &Tree, f: &Labeling) -> VerificationReport {
    VerificationReport::from_violations(graceful_violations(t, f))
}

/// Graceful, and every matched pair's labels sum to `n - 1`.
///
/// Fails with an error (not a violation) when `m` is not a perfect
/// matching of `t`.
pub fn verify_strongly_graceful(t: &Tree, f: &Labeling, m: &Matching) -> Result<VerificationReport> {
    m.validate(t)?;
    if !m.is_perfect(t.order()) {
        return Err(Error::NotPerfect);
    }
    let mut out = graceful_violations(t, f);
    if f.order() == t.order() {
        let expected = t.order() - 1;
        for &(a, b) in m.pairs() {
            let sum = f.get(a) + f.get(b);
            if sum != expected {
                out.push(Violation::PairSumMismatch { a, b, sum, expected });
            }
        }
    }
    Ok(VerificationReport::from_violations(out))
}

/// Complementary labeling `v -> (n - 1) - f(v)`.
pub fn complement(f: &Labeling) -> Result<Labeling> {
    let n = f.order();
    f.values()
        .iter()
        .enumerate()
        .map(|(v, &l)| {
            if l >= n {
                Err(Error::LabelOutOfRange { vertex: v, label: l, n })
            } else {
                Ok(n - 1 - l)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Labeling::new)
}
