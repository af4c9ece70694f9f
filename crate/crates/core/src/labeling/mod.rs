//! Labelings and L(p,q) verification.

pub mod windows;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// A partial or total map from vertices to labels in `[0, k]`.
///
/// Serialized as `{"k": 6, "labels": [0, 2, null, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    pub k: u32,
    pub labels: Vec<Option<u32>>,
}

impl Labeling {
    pub fn empty(n: usize, k: u32) -> Self {
        Labeling { k, labels: vec![None; n] }
    }

    pub fn from_total(k: u32, labels: &[u32]) -> Self {
        Labeling { k, labels: labels.iter().map(|&x| Some(x)).collect() }
    }

    pub fn get(&self, v: usize) -> Option<u32> {
        self.labels[v]
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// Labels of a total labeling; panics on unassigned vertices.
    pub fn values(&self) -> Vec<u32> {
        self.labels.iter().map(|x| x.expect("labeling is total")).collect()
    }

    /// max − min over assigned labels (0 when nothing is assigned).
    pub fn span(&self) -> u32 {
        let assigned = self.labels.iter().flatten();
        match (assigned.clone().min(), assigned.max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn max_label(&self) -> Option<u32> {
        self.labels.iter().flatten().copied().max()
    }

    /// The labeling `x ↦ k − x`.
    pub fn complement(&self) -> Labeling {
        Labeling {
            k: self.k,
            labels: self.labels.iter().map(|x| x.map(|x| self.k - x)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ViolationKind {
    /// Adjacent labels differ by less than `p`.
    Adjacent,
    /// Labels at distance two differ by less than `q`.
    DistanceTwo,
    /// A label exceeds `k`.
    OutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub u: usize,
    pub v: usize,
    pub labels: (u32, u32),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            ViolationKind::Adjacent => write!(
                f,
                "adjacent vertices {} and {} have labels {} and {}",
                self.u, self.v, self.labels.0, self.labels.1
            ),
            ViolationKind::DistanceTwo => write!(
                f,
                "vertices {} and {} at distance 2 have labels {} and {}",
                self.u, self.v, self.labels.0, self.labels.1
            ),
            ViolationKind::OutOfRange => {
                write!(f, "vertex {} has label {} above k = {}", self.u, self.labels.0, self.labels.1)
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("labeling covers {labels} vertices but the graph has {n}")]
    SizeMismatch { n: usize, labels: usize },
    #[error("vertex {0} is unlabeled")]
    Unlabeled(usize),
}

/// All pairs of distinct vertices at distance exactly two, as `(u, v)` with `u < v`.
pub fn distance_two_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    for c in 0..g.n() {
        let nb = g.neighbors(c);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.has_edge(a, b) {
                    pairs.insert((a, b));
                }
            }
        }
    }
    pairs.into_iter().collect()
}

/// Checks an L(p,q)-labeling and returns every violation found.
pub fn verify(g: &Graph, f: &Labeling, p: u32, q: u32) -> Result<Vec<Violation>, VerifyError> {
    if f.labels.len() != g.n() {
        return Err(VerifyError::SizeMismatch { n: g.n(), labels: f.labels.len() });
    }
    let vals: Vec<u32> = f
        .labels
        .iter()
        .enumerate()
        .map(|(v, x)| x.ok_or(VerifyError::Unlabeled(v)))
        .collect::<Result<_, _>>()?;

    let mut out = Vec::new();
    for (v, &x) in vals.iter().enumerate() {
        if x > f.k {
            out.push(Violation { kind: ViolationKind::OutOfRange, u: v, v, labels: (x, f.k) });
        }
    }
    for (u, v) in g.edges() {
        if vals[u].abs_diff(vals[v]) < p {
            out.push(Violation { kind: ViolationKind::Adjacent, u, v, labels: (vals[u], vals[v]) });
        }
    }
    for (u, v) in distance_two_pairs(g) {
        if vals[u].abs_diff(vals[v]) < q {
            out.push(Violation { kind: ViolationKind::DistanceTwo, u, v, labels: (vals[u], vals[v]) });
        }
    }
    Ok(out)
}

/// Convenience: total, within `[0, k]`, and violation-free for L(2,1).
pub fn is_valid_l21(g: &Graph, f: &Labeling) -> bool {
    matches!(verify(g, f, 2, 1), Ok(v) if v.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_examples() {
        let g = Graph::path(2);
        assert!(verify(&g, &Labeling::from_total(6, &[0, 2]), 2, 1).unwrap().is_empty());
        let v = verify(&g, &Labeling::from_total(6, &[0, 1]), 2, 1).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::Adjacent);
    }

    #[test]
    fn p3_distance_two() {
        let g = Graph::path(3);
        let v = verify(&g, &Labeling::from_total(6, &[0, 3, 0]), 2, 1).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].kind, v[0].u, v[0].v), (ViolationKind::DistanceTwo, 0, 2));
    }

    #[test]
    fn partial_is_an_error() {
        let f = Labeling { k: 6, labels: vec![Some(0), None] };
        assert_eq!(verify(&Graph::path(2), &f, 2, 1), Err(VerifyError::Unlabeled(1)));
    }

    #[test]
    fn reports_every_violation() {
        let g = Graph::cycle(3);
        let v = verify(&g, &Labeling::from_total(6, &[0, 0, 0]), 2, 1).unwrap();
        assert_eq!(v.len(), 3);
        let v = verify(&g, &Labeling::from_total(3, &[0, 2, 4]), 2, 1).unwrap();
        assert_eq!(v.iter().filter(|x| x.kind == ViolationKind::OutOfRange).count(), 1);
    }

    #[test]
    fn json_shape() {
        let f = Labeling { k: 6, labels: vec![Some(0), None, Some(4)] };
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"k":6,"labels":[0,null,4]}"#);
        assert_eq!(serde_json::from_str::<Labeling>(&s).unwrap(), f);
    }

    #[test]
    fn span_and_complement() {
        let f = Labeling::from_total(6, &[1, 3, 6]);
        assert_eq!(f.span(), 5);
        assert_eq!(f.complement().values(), vec![5, 3, 0]);
    }
}
