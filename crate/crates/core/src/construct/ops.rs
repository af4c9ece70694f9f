//! Public extension operations and the block-level routines built on them.

use serde::Serialize;
use thiserror::Error;

use super::certified::{
    check_attach, check_face, internal_demand, path_demand, solve_attach, solve_face, solve_root, ATTACHABLE, GOOD,
};
use super::cases::{attach_candidates, face_candidates, seed_labels};
use super::search::WindowSet;
use crate::embedding::{EmbedError, OuterEmbedding};
use crate::graph::Graph;
use crate::labeling::windows::{cycle_window, is_path_extendable, Label, EVENS, MAX_LABEL, ODDS};

/// Which engine decides each new face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Mode {
    /// Hand-derived case tables first; search only when no candidate validates.
    CaseTables,
    /// Exact search only.
    CertifiedSearch,
    /// Exact search decides; the case tables run alongside for telemetry.
    #[default]
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Strategy {
    pub mode: Mode,
    /// Abort with an error instead of escalating when a face engine fails.
    pub strict: bool,
}

/// Counters describing how faces were decided. All counters only grow.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Telemetry {
    /// Faces where a case-table candidate validated.
    pub fast_path_hits: u64,
    /// Faces where the case tables produced nothing.
    pub fallbacks: u64,
    /// Faces where the case tables produced candidates that all failed validation.
    pub divergences: u64,
    /// Faces solved only after relaxing the certified window set.
    pub relaxations: u64,
    /// Blocks relabeled by whole-block backtracking.
    pub face_escalations: u64,
    /// Components relabeled by the exact solver.
    pub solver_escalations: u64,
}

impl Telemetry {
    pub fn absorb(&mut self, other: &Telemetry) {
        self.fast_path_hits += other.fast_path_hits;
        self.fallbacks += other.fallbacks;
        self.divergences += other.divergences;
        self.relaxations += other.relaxations;
        self.face_escalations += other.face_escalations;
        self.solver_escalations += other.solver_escalations;
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error("a face needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("window {0:?} is not path-extendable")]
    NotExtendable([Label; 4]),
    #[error("prefix {0:?} is not a proper labeling")]
    BadPrefix([Label; 3]),
    #[error("attachment vertex {vertex} has block degree {degree}, expected 2")]
    AttachDegree { vertex: usize, degree: usize },
    #[error("no extension found: {0}")]
    NoExtension(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Face engine with a strategy and running telemetry.
#[derive(Debug, Clone, Default)]
pub struct Engine {
    pub strategy: Strategy,
    pub telemetry: Telemetry,
}

impl Engine {
    pub fn new(strategy: Strategy) -> Self {
        Engine { strategy, telemetry: Telemetry::default() }
    }

    /// Records how the case tables fared and returns the first accepted candidate.
    fn consult(&mut self, cands: Vec<Vec<Label>>, accept: impl Fn(&[Label]) -> bool) -> Option<Vec<Label>> {
        let hit = cands.iter().find(|c| accept(c)).cloned();
        if hit.is_some() {
            self.telemetry.fast_path_hits += 1;
        } else if cands.is_empty() {
            self.telemetry.fallbacks += 1;
        } else {
            self.telemetry.divergences += 1;
        }
        hit
    }

    /// Labels `u3 … ul` of a child face. `chords[i]` marks the edge
    /// `(u_i, u_{i+1})` as a chord of the block.
    pub fn face(&mut self, window: [Label; 4], l: usize, chords: &[bool]) -> Option<Vec<Label>> {
        let internal = internal_demand(l);
        let tabled = if self.strategy.mode == Mode::CertifiedSearch {
            None
        } else {
            let cands = face_candidates(window, l);
            self.consult(cands, |c| check_face(window, l, c, &internal, &ATTACHABLE))
        };
        if self.strategy.mode == Mode::CaseTables && tabled.is_some() {
            return tabled;
        }
        solve_face(window, l, &internal, &GOOD).or_else(|| {
            self.telemetry.relaxations += 1;
            solve_face(window, l, chords, &ATTACHABLE)
        })
    }

    /// Labels `x0 … x_{l−1}` of a face attached through `x1` to the middle of
    /// `prefix`. `chords[i]` marks the edge `(x_i, x_{i+1})` as a chord.
    pub fn attach(&mut self, prefix: [Label; 3], chords: &[bool]) -> Option<Vec<Label>> {
        let l = chords.len();
        let tabled = if self.strategy.mode == Mode::CertifiedSearch {
            None
        } else {
            let exempt_free: Vec<bool> = (0..l).map(|i| (1..=l - 2).contains(&i) || chords[i]).collect();
            let cands = attach_candidates(prefix, l);
            self.consult(cands, |c| check_attach(prefix, c, &exempt_free, &ATTACHABLE))
        };
        if self.strategy.mode == Mode::CaseTables && tabled.is_some() {
            return tabled;
        }
        solve_attach(prefix, l, chords, &GOOD).or_else(|| {
            self.telemetry.relaxations += 1;
            solve_attach(prefix, l, chords, &ATTACHABLE)
        })
    }

    /// Labels the first face of a block, trying rotations and reflections of
    /// the seed before searching.
    pub fn root(&mut self, chords: &[bool]) -> Option<Vec<Label>> {
        let l = chords.len();
        let set: &WindowSet = if self.strategy.mode == Mode::CaseTables { &ATTACHABLE } else { &GOOD };
        let seed = seed_labels(l);
        for reflect in [false, true] {
            for r in 0..l {
                let cand: Vec<Label> = (0..l)
                    .map(|i| if reflect { seed[(r + l - i) % l] } else { seed[(r + i) % l] })
                    .collect();
                if (0..l).all(|i| !chords[i] || set.contains(cycle_window(&cand, i))) {
                    self.telemetry.fast_path_hits += 1;
                    return Some(cand);
                }
            }
        }
        self.telemetry.fallbacks += 1;
        solve_root(l, chords, set).or_else(|| {
            self.telemetry.relaxations += 1;
            solve_root(l, chords, &ATTACHABLE)
        })
    }
}

/// Seed labeling for a root face of length `l`.
pub fn seed_face_labeling(l: usize) -> Result<Vec<Label>, ExtendError> {
    if l < 3 {
        return Err(ExtendError::TooShort(l));
    }
    Ok(seed_labels(l))
}

/// Labels `u3 … ul` for a child face across the chord `(u1, u2)` of the
/// path-extendable window `(v1, u1, u2, v2)`. For `l ≥ 5` the boundary path
/// `u2, u3, …, ul, u1` with pendants `v2`, `v1` comes out path-extendable.
/// Faces of length 3 and 4 are leaves and only need a proper labeling.
pub fn extend_over_face(window: [Label; 4], l: usize) -> Result<Vec<Label>, ExtendError> {
    if l < 3 {
        return Err(ExtendError::TooShort(l));
    }
    let [v1, u1, u2, v2] = window;
    if !matches!(is_path_extendable(Some(v1), &[u1, u2], Some(v2)), Ok(true)) {
        return Err(ExtendError::NotExtendable(window));
    }
    if l <= 4 {
        return solve_face(window, l, &internal_demand(l), &GOOD)
            .or_else(|| solve_face(window, l, &vec![false; l + 1], &GOOD))
            .ok_or_else(|| ExtendError::NoExtension(format!("window {window:?}, face length {l}")));
    }
    let boundary_ok = |labels: &Vec<Label>| {
        let mut inner = vec![u2];
        inner.extend(labels);
        inner.push(u1);
        matches!(is_path_extendable(Some(v2), &inner, Some(v1)), Ok(true))
    };
    let whole = path_demand(l);
    solve_face(window, l, &internal_demand(l), &GOOD)
        .filter(boundary_ok)
        .or_else(|| solve_face(window, l, &whole, &GOOD))
        .or_else(|| solve_face(window, l, &whole, &ATTACHABLE))
        .ok_or_else(|| ExtendError::NoExtension(format!("window {window:?}, face length {l}")))
}

/// Greedy labels for the `q − 1` new vertices of a branch leaving a vertex
/// labeled `b` whose two other neighbors carry `a1` and `a2`.
pub fn fill_branch(a1: Label, a2: Label, b: Label, q: usize) -> Vec<Label> {
    let mut out: Vec<Label> = Vec::with_capacity(q.saturating_sub(1));
    let near = |x: Label| [x.saturating_sub(1), x, (x + 1).min(MAX_LABEL)];
    for i in 1..q {
        let (prev, prev2) = if i == 1 { (b, None) } else { (out[i - 2], Some(if i == 2 { b } else { out[i - 3] })) };
        let mut forbidden: Vec<Label> = near(prev).to_vec();
        match prev2 {
            Some(x) => forbidden.push(x),
            None => forbidden.extend([a1, a2]),
        }
        let x = (0..=MAX_LABEL).find(|x| !forbidden.contains(x)).expect("at most five labels are forbidden");
        out.push(x);
    }
    out
}

/// Completes the labeled context `(a, p, b)` of an attachment vertex's
/// neighbor `p`. A missing label is replaced by the smallest label of the
/// parity of `f(p)` not yet used.
pub fn synthesize_prefix(a: Option<Label>, p: Label, b: Option<Label>) -> [Label; 3] {
    let pool: &[Label] = if p % 2 == 0 { &EVENS } else { &ODDS };
    let pick = |taken: &[Label]| *pool.iter().find(|x| !taken.contains(x)).expect("parity class has room");
    let a = a.unwrap_or_else(|| pick(&[p, b.unwrap_or(p)]));
    let b = b.unwrap_or_else(|| pick(&[p, a]));
    [a, p, b]
}

/// Labels the whole block `block`, entered through its vertex `u2` of block
/// degree 2 from an outside neighbor labeled `prefix[1]` whose other
/// neighbors carry `prefix[0]` and `prefix[2]`. Returns one label per block
/// vertex.
pub fn attach_block(
    block: &Graph,
    u2: usize,
    prefix: [Label; 3],
    strategy: Strategy,
) -> Result<(Vec<Label>, Telemetry), ExtendError> {
    let [a, p, b] = prefix;
    if a.abs_diff(p) < 2 || b.abs_diff(p) < 2 || a == b || prefix.iter().any(|&x| x > MAX_LABEL) {
        return Err(ExtendError::BadPrefix(prefix));
    }
    if block.degree(u2) != 2 {
        return Err(ExtendError::AttachDegree { vertex: u2, degree: block.degree(u2) });
    }
    let emb = OuterEmbedding::new(block)?;
    let mut labels = vec![None; block.n()];
    let mut engine = Engine::new(strategy);
    label_attached_block(&emb, u2, prefix, &mut labels, &mut engine)?;
    Ok((labels.into_iter().map(|x| x.expect("block fully labeled")).collect(), engine.telemetry))
}

/// Cycle order of the face containing `c` with `c` second, oriented so that
/// the edges at the first vertex are not chords when possible.
fn attach_order(emb: &OuterEmbedding, c: usize) -> (usize, Vec<usize>, Vec<bool>) {
    let f = emb.faces.iter().position(|face| face.position(c).is_some()).expect("vertex lies on a face");
    let bd = &emb.faces[f].boundary;
    let l = bd.len();
    let i = emb.faces[f].position(c).unwrap();
    let mut best = None;
    for forward in [true, false] {
        let seq: Vec<usize> = (0..l)
            .map(|j| if forward { bd[(i + l - 1 + j) % l] } else { bd[(i + 1 + l - j % l) % l] })
            .collect();
        let chords: Vec<bool> = (0..l).map(|j| emb.is_chord(seq[j], seq[(j + 1) % l])).collect();
        let clean = !chords[l - 1] && !chords[0];
        if best.is_none() || clean {
            let done = clean;
            best = Some((seq, chords));
            if done {
                break;
            }
        }
    }
    let (seq, chords) = best.unwrap();
    (f, seq, chords)
}

pub(crate) fn label_attached_block(
    emb: &OuterEmbedding,
    c: usize,
    prefix: [Label; 3],
    labels: &mut [Option<Label>],
    engine: &mut Engine,
) -> Result<(), ExtendError> {
    let (f, seq, chords) = attach_order(emb, c);
    let cyc = engine
        .attach(prefix, &chords)
        .ok_or_else(|| ExtendError::NoExtension(format!("attach prefix {prefix:?}, face length {}", seq.len())))?;
    for (&v, &x) in seq.iter().zip(&cyc) {
        labels[v] = Some(x);
    }
    label_faces_from(emb, f, labels, engine)
}

/// Labels a block from scratch, starting at its largest face.
pub(crate) fn label_root_block(
    emb: &OuterEmbedding,
    labels: &mut [Option<Label>],
    engine: &mut Engine,
) -> Result<(), ExtendError> {
    let root = (0..emb.faces.len()).max_by_key(|&f| (emb.faces[f].len(), std::cmp::Reverse(f))).unwrap();
    let seq = &emb.faces[root].boundary;
    let l = seq.len();
    let chords: Vec<bool> = (0..l).map(|j| emb.is_chord(seq[j], seq[(j + 1) % l])).collect();
    let cyc = engine.root(&chords).ok_or_else(|| ExtendError::NoExtension(format!("root face of length {l}")))?;
    for (&v, &x) in seq.iter().zip(&cyc) {
        labels[v] = Some(x);
    }
    label_faces_from(emb, root, labels, engine)
}

/// Labels every face reachable from the already-labeled face `root` in
/// breadth-first order over the weak dual.
pub(crate) fn label_faces_from(
    emb: &OuterEmbedding,
    root: usize,
    labels: &mut [Option<Label>],
    engine: &mut Engine,
) -> Result<(), ExtendError> {
    for (f, parent) in emb.dual_bfs(root).into_iter().skip(1) {
        let (pf, (x, y)) = parent.expect("non-root faces have a parent");
        let cb = &emb.faces[f].boundary;
        let l = cb.len();
        let pos = |v: usize| emb.faces[f].position(v).unwrap();
        let (u1, u2) = if cb[(pos(x) + 1) % l] != y { (y, x) } else { (x, y) };
        let pb = &emb.faces[pf].boundary;
        let lp = pb.len();
        let other = |v: usize, skip: usize| {
            let i = emb.faces[pf].position(v).unwrap();
            let next = pb[(i + 1) % lp];
            if next == skip {
                pb[(i + lp - 1) % lp]
            } else {
                next
            }
        };
        let (v1, v2) = (other(u1, u2), other(u2, u1));
        let lab = |v: usize| labels[v].expect("parent face is labeled");
        let window = [lab(v1), lab(u1), lab(u2), lab(v2)];
        let start = pos(u2);
        let seq: Vec<usize> = (1..l - 1).map(|k| cb[(start + k) % l]).collect();
        let mut chords = vec![false; l + 1];
        for i in 3..l {
            chords[i] = emb.is_chord(seq[i - 3], seq[i - 2]);
        }
        let new = engine
            .face(window, l, &chords)
            .ok_or_else(|| ExtendError::NoExtension(format!("window {window:?}, face length {l}")))?;
        for (&v, &x) in seq.iter().zip(&new) {
            labels[v] = Some(x);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::windows::{is_cycle_extendable, CycleType};

    #[test]
    fn seeds_match_examples() {
        assert_eq!(seed_face_labeling(6).unwrap(), vec![0, 2, 4, 0, 2, 4]);
        assert_eq!(seed_face_labeling(7).unwrap(), vec![3, 6, 4, 0, 6, 4, 0]);
        assert_eq!(seed_face_labeling(5).unwrap(), vec![3, 1, 4, 2, 0]);
        assert!(seed_face_labeling(2).is_err());
    }

    #[test]
    fn seeds_are_type_one_except_two_mod_three() {
        for l in 3..=30 {
            let ok = is_cycle_extendable(&seed_face_labeling(l).unwrap(), CycleType::One).unwrap();
            assert_eq!(ok, l % 3 != 2, "l = {l}");
        }
    }

    #[test]
    fn extend_examples() {
        assert_eq!(extend_over_face([0, 2, 4, 0], 3).unwrap(), vec![6]);
        assert_eq!(extend_over_face([0, 2, 4, 0], 4).unwrap(), vec![1, 5]);
        assert_eq!(extend_over_face([2, 5, 3, 6], 6), Err(ExtendError::NotExtendable([2, 5, 3, 6])));
    }

    #[test]
    fn branch_examples() {
        assert_eq!(fill_branch(0, 4, 2, 2), vec![5]);
        assert_eq!(fill_branch(0, 4, 2, 3), vec![5, 0]);
        assert!(fill_branch(0, 4, 2, 1).is_empty());
        assert_eq!(fill_branch(1, 3, 5, 2), vec![0]);
    }

    #[test]
    fn dummy_prefix() {
        assert_eq!(synthesize_prefix(Some(6), 4, None), [6, 4, 0]);
        assert_eq!(synthesize_prefix(None, 3, None), [1, 3, 5]);
    }

    #[test]
    fn attach_example_from_case_tables() {
        let mut engine = Engine::new(Strategy { mode: Mode::CaseTables, strict: true });
        let got = engine.attach([1, 3, 5], &[false; 7]).unwrap();
        assert_eq!(got, vec![5, 0, 6, 2, 0, 6, 3]);
        assert_eq!(engine.telemetry.fast_path_hits, 1);
    }

    #[test]
    fn attach_block_rejects_degree_three() {
        let mut g = Graph::cycle(5);
        g.add_edge(0, 2).unwrap();
        let err = attach_block(&g, 0, [0, 2, 4], Strategy::default()).unwrap_err();
        assert_eq!(err, ExtendError::AttachDegree { vertex: 0, degree: 3 });
        let (labels, _) = attach_block(&g, 1, [0, 2, 4], Strategy::default()).unwrap();
        assert_eq!(labels.len(), 5);
    }
}
