//! Four-label windows and the extendability predicates built on them.
//!
//! A path or cycle labeling is extendable when every eligible edge can take
//! both a triangle (one new apex) and a square (two new vertices) glued onto
//! it. Each edge is judged from the four labels around it: the edge's ends
//! plus one neighbor on each side.

use once_cell::sync::Lazy;
use thiserror::Error;

/// Labels handled by the span-6 machinery.
pub type Label = u8;

pub const MAX_LABEL: Label = 6;
pub const EVENS: [Label; 4] = [0, 2, 4, 6];
pub const ODDS: [Label; 3] = [1, 3, 5];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WindowError {
    #[error("label {0} outside [0, 6]")]
    OutOfRange(u32),
    #[error("pattern ({0}, {1}, {2}) needs three distinct labels from {{0, 2, 4, 6}}")]
    BadPattern(Label, Label, Label),
    #[error("a path needs at least {need} interior vertices, got {got}")]
    TooShort { need: usize, got: usize },
}

fn far(a: Label, b: Label) -> bool {
    a.abs_diff(b) >= 2
}

/// Labels at distance ≥ 2 from `x` in the opposite parity class:
/// evens for odd `x`, odds for even `x`.
pub fn available_neighbor_labels(x: u32) -> Result<Vec<Label>, WindowError> {
    if x > MAX_LABEL as u32 {
        return Err(WindowError::OutOfRange(x));
    }
    let x = x as Label;
    let pool: &[Label] = if x % 2 == 1 { &EVENS } else { &ODDS };
    Ok(pool.iter().copied().filter(|&y| far(x, y)).collect())
}

/// Four consecutive labels `(w1, w2, w3, w4)` around the middle edge `(w2, w3)`.
/// `None` marks a missing end and constrains nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window4(pub [Option<Label>; 4]);

impl Window4 {
    pub fn full(w: [Label; 4]) -> Self {
        Window4(w.map(Some))
    }

    /// Index into a table of size 8^4, with 7 standing for a missing entry.
    pub fn code(&self) -> usize {
        self.0.iter().fold(0, |acc, x| acc * 8 + x.map_or(7, |x| x as usize))
    }

    pub fn from_code(code: usize) -> Self {
        let mut w = [None; 4];
        for (i, slot) in w.iter_mut().enumerate() {
            let d = (code >> (3 * (3 - i))) & 7;
            *slot = (d < 7).then_some(d as Label);
        }
        Window4(w)
    }

    pub fn reversed(&self) -> Self {
        let [a, b, c, d] = self.0;
        Window4([d, c, b, a])
    }

    pub fn complemented(&self) -> Self {
        Window4(self.0.map(|x| x.map(|x| MAX_LABEL - x)))
    }

    fn mid(&self) -> (Label, Label) {
        (
            self.0[1].expect("window middle must be labeled"),
            self.0[2].expect("window middle must be labeled"),
        )
    }
}

/// Apex labels for a new vertex adjacent to both middle vertices.
pub fn triangle_attach_options(w: Window4) -> Vec<Label> {
    let (b, c) = w.mid();
    let [a, _, _, d] = w.0;
    (0..=MAX_LABEL)
        .filter(|&x| far(x, b) && far(x, c) && Some(x) != a && Some(x) != d)
        .collect()
}

/// Labels `(c1, c2)` for a new path `w2 - c1 - c2 - w3`.
pub fn square_attach_options(w: Window4) -> Vec<(Label, Label)> {
    let (b, c) = w.mid();
    let [a, _, _, d] = w.0;
    let mut out = Vec::new();
    for c1 in 0..=MAX_LABEL {
        if !far(c1, b) || Some(c1) == a || c1 == c {
            continue;
        }
        for c2 in 0..=MAX_LABEL {
            if far(c1, c2) && far(c2, c) && Some(c2) != d && c2 != b {
                out.push((c1, c2));
            }
        }
    }
    out
}

static ATTACHABLE: Lazy<Vec<bool>> = Lazy::new(|| {
    (0..4096)
        .map(|code| {
            let w = Window4::from_code(code);
            w.0[1].is_some()
                && w.0[2].is_some()
                && !triangle_attach_options(w).is_empty()
                && !square_attach_options(w).is_empty()
        })
        .collect()
});

/// Both a triangle and a square can be glued onto the middle edge.
pub fn is_attachable(w: Window4) -> bool {
    ATTACHABLE[w.code()]
}

/// Proper L(2,1) on a sequence read as a path, or as a cycle (length ≥ 3)
/// when `cyclic`. Missing entries are skipped.
pub fn sequence_is_valid(labels: &[Option<Label>], cyclic: bool) -> bool {
    let n = labels.len();
    if labels.iter().flatten().any(|&x| x > MAX_LABEL) {
        return false;
    }
    debug_assert!(!cyclic || n >= 3);
    for i in 0..n {
        for d in [1, 2] {
            let j = i + d;
            let j = if j < n {
                j
            } else if cyclic {
                j % n
            } else {
                continue;
            };
            if let (Some(x), Some(y)) = (labels[i], labels[j]) {
                let ok = if d == 1 { far(x, y) } else { x != y };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Path `u, u_1, …, u_l, v` with optional end pendants `u` and `v`.
///
/// True iff the labeling is proper and every edge `(u_i, u_{i+1})`,
/// `1 ≤ i ≤ l−1`, is attachable.
pub fn is_path_extendable(
    u: Option<Label>,
    inner: &[Label],
    v: Option<Label>,
) -> Result<bool, WindowError> {
    if inner.len() < 2 {
        return Err(WindowError::TooShort { need: 2, got: inner.len() });
    }
    let mut seq = vec![u];
    seq.extend(inner.iter().map(|&x| Some(x)));
    seq.push(v);
    if !sequence_is_valid(&seq, false) {
        return Ok(false);
    }
    // Edge (u_i, u_{i+1}) sits at seq indices (i, i+1).
    Ok((1..inner.len()).all(|i| is_attachable(Window4([seq[i - 1], seq[i], seq[i + 1], seq[i + 2]]))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleType {
    /// Every edge must be attachable.
    One,
    /// The two edges at the first vertex are exempt.
    Two,
}

/// Window around the cycle edge `(x_i, x_{i+1})`.
pub fn cycle_window(labels: &[Label], i: usize) -> Window4 {
    let l = labels.len();
    Window4::full([labels[(i + l - 1) % l], labels[i], labels[(i + 1) % l], labels[(i + 2) % l]])
}

pub fn is_cycle_extendable(labels: &[Label], ty: CycleType) -> Result<bool, WindowError> {
    let l = labels.len();
    if l < 3 {
        return Err(WindowError::TooShort { need: 3, got: l });
    }
    let opt: Vec<Option<Label>> = labels.iter().map(|&x| Some(x)).collect();
    if !sequence_is_valid(&opt, true) {
        return Ok(false);
    }
    let edges = match ty {
        CycleType::One => 0..l,
        CycleType::Two => 1..l - 1,
    };
    Ok(edges.into_iter().all(|i| is_attachable(cycle_window(labels, i))))
}

/// Three distinct even labels repeated as `a b c a b c …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternTriple(Label, Label, Label);

impl PatternTriple {
    pub fn new(a: Label, b: Label, c: Label) -> Result<Self, WindowError> {
        let even = |x: Label| EVENS.contains(&x);
        if even(a) && even(b) && even(c) && a != b && b != c && a != c {
            Ok(PatternTriple(a, b, c))
        } else {
            Err(WindowError::BadPattern(a, b, c))
        }
    }

    pub fn all() -> Vec<PatternTriple> {
        let mut out = Vec::new();
        for a in EVENS {
            for b in EVENS {
                for c in EVENS {
                    if let Ok(t) = PatternTriple::new(a, b, c) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    pub fn labels(&self) -> [Label; 3] {
        [self.0, self.1, self.2]
    }
}

pub fn apply_pattern(count: usize, t: PatternTriple) -> Vec<Label> {
    let p = t.labels();
    (0..count).map(|i| p[i % 3]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: Label, b: Label, c: Label, d: Label) -> Window4 {
        Window4::full([a, b, c, d])
    }

    #[test]
    fn neighbor_labels() {
        assert_eq!(available_neighbor_labels(1).unwrap(), vec![4, 6]);
        assert_eq!(available_neighbor_labels(2).unwrap(), vec![5]);
        let mut u = available_neighbor_labels(0).unwrap();
        u.extend(available_neighbor_labels(6).unwrap());
        u.sort_unstable();
        u.dedup();
        assert_eq!(u, vec![1, 3, 5]);
        assert!(available_neighbor_labels(7).is_err());
    }

    #[test]
    fn neighbor_label_cardinalities() {
        let set = |x: u32| available_neighbor_labels(x).unwrap();
        for a in [1u32, 3, 5] {
            for b in [1u32, 3, 5] {
                if a == b {
                    continue;
                }
                let (la, lb) = (set(a), set(b));
                let union: std::collections::BTreeSet<_> = la.iter().chain(&lb).collect();
                assert!(union.len() >= 3);
                assert!(la.iter().any(|x| !lb.contains(x)));
                let inter = la.iter().filter(|x| lb.contains(x)).count();
                if (a.min(b), a.max(b)) == (1, 3) || (a.min(b), a.max(b)) == (3, 5) {
                    assert_eq!(inter, 1);
                }
            }
        }
        for a in [0u32, 2, 4, 6] {
            assert!(!set(a).is_empty());
            for b in [0u32, 2, 4, 6] {
                if a == b {
                    continue;
                }
                let union: std::collections::BTreeSet<_> = set(a).into_iter().chain(set(b)).collect();
                assert!(union.len() >= 2);
                if [(0, 6), (2, 6)].contains(&(a.min(b), a.max(b))) {
                    assert!(union.len() >= 3);
                }
            }
        }
    }

    #[test]
    fn triangle_options() {
        assert_eq!(triangle_attach_options(w(0, 2, 4, 0)), vec![6]);
        assert!(triangle_attach_options(w(0, 2, 4, 6)).is_empty());
        assert_eq!(triangle_attach_options(w(6, 0, 2, 4)), vec![5]);
    }

    #[test]
    fn square_options() {
        assert!(square_attach_options(w(4, 1, 3, 0)).is_empty());
        let sq = square_attach_options(w(0, 2, 4, 0));
        assert_eq!(sq, vec![(5, 1), (6, 1)]);
        assert!(square_attach_options(w(0, 2, 4, 6)).contains(&(5, 1)));
    }

    #[test]
    fn missing_entries_constrain_nothing() {
        let open = Window4([None, Some(2), Some(4), None]);
        assert_eq!(triangle_attach_options(open), vec![0, 6]);
        assert_eq!(Window4::from_code(open.code()), open);
    }

    #[test]
    fn path_examples() {
        let p = apply_pattern(9, PatternTriple::new(0, 2, 4).unwrap());
        assert!(is_path_extendable(None, &p, None).unwrap());
        assert!(!is_path_extendable(Some(2), &[5, 3], Some(6)).unwrap());
        assert!(!is_path_extendable(None, &[6, 4, 1, 3, 0], None).unwrap());
        assert!(is_path_extendable(None, &[0], None).is_err());
    }

    #[test]
    fn cycle_examples() {
        assert!(is_cycle_extendable(&[0, 2, 4, 0, 2, 4], CycleType::One).unwrap());
        assert!(is_cycle_extendable(&[3, 6, 4, 0, 6, 4, 0], CycleType::One).unwrap());
        assert!(!is_cycle_extendable(&[0, 2, 4, 6], CycleType::One).unwrap());
        assert!(!is_cycle_extendable(&[0, 2, 0, 2], CycleType::One).unwrap());
    }

    #[test]
    fn patterns() {
        let t = PatternTriple::new(0, 2, 4).unwrap();
        assert_eq!(apply_pattern(6, t), vec![0, 2, 4, 0, 2, 4]);
        assert_eq!(apply_pattern(4, PatternTriple::new(6, 4, 0).unwrap()), vec![6, 4, 0, 6]);
        assert!(PatternTriple::new(0, 2, 3).is_err());
        assert_eq!(PatternTriple::all().len(), 24);
    }

    #[test]
    fn symmetries_preserve_attachability() {
        for code in 0..4096 {
            let x = Window4::from_code(code);
            if x.0[1].is_none() || x.0[2].is_none() {
                continue;
            }
            assert_eq!(is_attachable(x), is_attachable(x.reversed()));
            assert_eq!(is_attachable(x), is_attachable(x.complemented()));
        }
    }
}
