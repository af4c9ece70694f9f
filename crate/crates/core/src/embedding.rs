//! Outerplanar embeddings of 2-connected blocks: outer cycle, chords, inner
//! faces and the weak dual.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("not outerplanar: {0}")]
    NotOuterplanar(String),
    #[error("block is not 2-connected")]
    NotBiconnected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Boundary in outer-cycle order; consecutive entries (cyclically) are adjacent.
    pub boundary: Vec<usize>,
    /// Chord `(u, v)` with `u < v` mapped to the face on its other side.
    pub shared_edges: BTreeMap<(usize, usize), usize>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.boundary.iter().position(|&x| x == v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterEmbedding {
    /// Hamiltonian cycle, starting at the smallest vertex, heading to its
    /// smaller cycle neighbor.
    pub outer_cycle: Vec<usize>,
    /// Edges `(u, v)`, `u < v`, not on the outer cycle.
    pub chords: Vec<(usize, usize)>,
    pub faces: Vec<Face>,
    /// `weak_dual[f]` lists `(neighbor face, shared chord)`.
    pub weak_dual: Vec<Vec<(usize, (usize, usize))>>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl OuterEmbedding {
    /// Embeds a 2-connected block or reports that it is not outerplanar.
    pub fn new(block: &Graph) -> Result<Self, EmbedError> {
        let n = block.n();
        if n < 3 || !block.is_connected() {
            return Err(EmbedError::NotBiconnected);
        }
        if block.m() > 2 * n - 3 {
            return Err(EmbedError::NotOuterplanar(format!(
                "{} edges exceed the bound 2n-3 = {}",
                block.m(),
                2 * n - 3
            )));
        }
        let outer_cycle = outer_cycle(block)?;

        let mut pos = vec![0; n];
        for (i, &v) in outer_cycle.iter().enumerate() {
            pos[v] = i;
        }
        let on_cycle = |u: usize, v: usize| {
            let d = pos[u].abs_diff(pos[v]);
            d == 1 || d == n - 1
        };
        let chords: Vec<(usize, usize)> =
            block.edges().into_iter().filter(|&(u, v)| !on_cycle(u, v)).collect();
        for (i, &a) in chords.iter().enumerate() {
            for &b in &chords[i + 1..] {
                if chords_cross(&pos, a, b) {
                    return Err(EmbedError::NotOuterplanar(format!(
                        "chords {a:?} and {b:?} cross"
                    )));
                }
            }
        }

        let faces = scan_faces(&outer_cycle, &pos, &chords);
        let mut weak_dual = vec![Vec::new(); faces.len()];
        for (f, face) in faces.iter().enumerate() {
            for (&chord, &g) in &face.shared_edges {
                weak_dual[f].push((g, chord));
            }
        }
        for (f, nbrs) in weak_dual.iter().enumerate() {
            let distinct: BTreeSet<usize> = nbrs.iter().map(|&(g, _)| g).collect();
            assert_eq!(distinct.len(), nbrs.len(), "faces {f} and a neighbor share two edges");
        }
        Ok(OuterEmbedding { outer_cycle, chords, faces, weak_dual })
    }

    /// The same embedding with every vertex `v` renamed to `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> OuterEmbedding {
        let edge = |(u, v): (usize, usize)| key(map[u], map[v]);
        let mut chords: Vec<(usize, usize)> = self.chords.iter().map(|&c| edge(c)).collect();
        chords.sort_unstable();
        OuterEmbedding {
            outer_cycle: self.outer_cycle.iter().map(|&v| map[v]).collect(),
            chords,
            faces: self
                .faces
                .iter()
                .map(|f| Face {
                    boundary: f.boundary.iter().map(|&v| map[v]).collect(),
                    shared_edges: f.shared_edges.iter().map(|(&c, &g)| (edge(c), g)).collect(),
                })
                .collect(),
            weak_dual: self.weak_dual.iter().map(|nb| nb.iter().map(|&(g, c)| (g, edge(c))).collect()).collect(),
        }
    }

    pub fn is_chord(&self, u: usize, v: usize) -> bool {
        self.chords.binary_search(&key(u, v)).is_ok()
    }

    /// Face ids in breadth-first order from `root`, each with its parent face
    /// and the chord shared with it.
    pub fn dual_bfs(&self, root: usize) -> Vec<(usize, Option<(usize, (usize, usize))>)> {
        let mut seen = vec![false; self.faces.len()];
        seen[root] = true;
        let mut order = vec![(root, None)];
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            for &(g, chord) in &self.weak_dual[f] {
                if !seen[g] {
                    seen[g] = true;
                    order.push((g, Some((f, chord))));
                    queue.push_back(g);
                }
            }
        }
        order
    }

    /// True if two triangular faces share a vertex.
    pub fn has_intersecting_triangles(&self) -> bool {
        let tris: Vec<&Face> = self.faces.iter().filter(|f| f.len() == 3).collect();
        tris.iter().enumerate().any(|(i, a)| {
            tris[i + 1..].iter().any(|b| a.boundary.iter().any(|v| b.boundary.contains(v)))
        })
    }

    /// Faces of length 3 or 4 that are not leaves of the weak dual rooted at
    /// `root`, i.e. that have a parent chord and at least one further chord.
    pub fn nonleaf_small_faces(&self, root: usize) -> Vec<usize> {
        self.dual_bfs(root)
            .into_iter()
            .filter(|&(f, parent)| {
                parent.is_some() && self.faces[f].len() <= 4 && self.weak_dual[f].len() > 1
            })
            .map(|(f, _)| f)
            .collect()
    }
}

/// Chords `{a,b}` and `{c,d}` cross iff exactly one of `c`, `d` lies strictly
/// inside the arc from `a` to `b`.
pub fn chords_cross(pos: &[usize], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    let inside = |x: usize| lo < pos[x] && pos[x] < hi;
    let shares = [a, b].contains(&c) || [a, b].contains(&d);
    !shares && inside(c) != inside(d)
}

/// Finds the Hamiltonian outer cycle by repeatedly removing a degree-2 vertex
/// and joining its two neighbors, then re-inserting in reverse order.
fn outer_cycle(block: &Graph) -> Result<Vec<usize>, EmbedError> {
    let n = block.n();
    let mut adj: Vec<BTreeSet<usize>> =
        (0..n).map(|v| block.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| adj[v].len() == 2).collect();
    let mut removed = Vec::with_capacity(n);
    let fail = |why: &str| Err(EmbedError::NotOuterplanar(why.to_string()));

    while remaining > 3 {
        let Some(v) = queue.pop_front() else {
            return fail("no vertex of degree 2 left to reduce");
        };
        if !alive[v] || adj[v].len() != 2 {
            continue;
        }
        let mut it = adj[v].iter().copied();
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        alive[v] = false;
        remaining -= 1;
        adj[a].remove(&v);
        adj[b].remove(&v);
        adj[v].clear();
        if !adj[a].insert(b) {
            for x in [a, b] {
                if adj[x].len() < 2 {
                    return Err(EmbedError::NotBiconnected);
                }
                if adj[x].len() == 2 {
                    queue.push_back(x);
                }
            }
        } else {
            adj[b].insert(a);
        }
        removed.push((v, a, b));
    }

    let tri: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if tri.iter().any(|&v| adj[v].len() != 2) {
        return fail("reduction did not end in a triangle");
    }
    let mut next = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    for i in 0..3 {
        next[tri[i]] = tri[(i + 1) % 3];
        prev[tri[(i + 1) % 3]] = tri[i];
    }
    for &(v, a, b) in removed.iter().rev() {
        let (x, y) = if next[a] == b {
            (a, b)
        } else if next[b] == a {
            (b, a)
        } else {
            return fail("reduction cannot be undone along a cycle");
        };
        next[x] = v;
        prev[v] = x;
        next[v] = y;
        prev[y] = v;
    }

    let start = 0;
    let mut cycle = Vec::with_capacity(n);
    let step_fwd = next[start] < prev[start];
    let mut v = start;
    loop {
        cycle.push(v);
        v = if step_fwd { next[v] } else { prev[v] };
        if v == start {
            break;
        }
    }
    debug_assert_eq!(cycle.len(), n);
    for i in 0..n {
        if !block.has_edge(cycle[i], cycle[(i + 1) % n]) {
            return fail("no Hamiltonian cycle with non-crossing chords");
        }
    }
    Ok(cycle)
}

/// Splits the disc into inner faces with one pass over the outer cycle: a
/// chord closing at position `i` pops the vertices strictly between its ends.
fn scan_faces(cycle: &[usize], pos: &[usize], chords: &[(usize, usize)]) -> Vec<Face> {
    let n = cycle.len();
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in chords {
        let (i, j) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        closing[j].push(i);
    }
    let mut boundaries: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for j in 0..n {
        closing[j].sort_unstable_by(|a, b| b.cmp(a));
        for &i in &closing[j] {
            let mut inner = Vec::new();
            while *stack.last().unwrap() != i {
                inner.push(stack.pop().unwrap());
            }
            inner.push(i);
            inner.reverse();
            inner.push(j);
            boundaries.push(inner);
        }
        stack.push(j);
    }
    boundaries.push(stack);

    let mut owners: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let faces_pos = boundaries;
    for (f, b) in faces_pos.iter().enumerate() {
        let k = b.len();
        for t in 0..k {
            let (x, y) = (cycle[b[t]], cycle[b[(t + 1) % k]]);
            let gap = b[t].abs_diff(b[(t + 1) % k]);
            if gap != 1 && gap != n - 1 {
                owners.entry(key(x, y)).or_default().push(f);
            }
        }
    }
    let mut faces: Vec<Face> = faces_pos
        .iter()
        .map(|b| Face {
            boundary: b.iter().map(|&p| cycle[p]).collect(),
            shared_edges: BTreeMap::new(),
        })
        .collect();
    for (chord, fs) in owners {
        assert_eq!(fs.len(), 2, "chord {chord:?} must border exactly two faces");
        faces[fs[0]].shared_edges.insert(chord, fs[1]);
        faces[fs[1]].shared_edges.insert(chord, fs[0]);
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_has_one_face() {
        let e = OuterEmbedding::new(&Graph::cycle(5)).unwrap();
        assert_eq!(e.outer_cycle, vec![0, 1, 2, 3, 4]);
        assert!(e.chords.is_empty());
        assert_eq!(e.faces.len(), 1);
        assert!(e.weak_dual[0].is_empty());
    }

    #[test]
    fn hexagon_with_chord() {
        let mut g = Graph::cycle(6);
        g.add_edge(0, 2).unwrap();
        let e = OuterEmbedding::new(&g).unwrap();
        let mut faces: Vec<Vec<usize>> = e
            .faces
            .iter()
            .map(|f| {
                let mut b = f.boundary.clone();
                b.sort_unstable();
                b
            })
            .collect();
        faces.sort();
        assert_eq!(faces, vec![vec![0, 1, 2], vec![0, 2, 3, 4, 5]]);
        assert_eq!(e.weak_dual.iter().map(Vec::len).sum::<usize>(), 2);
    }

    #[test]
    fn rejects_k4_and_k23() {
        assert!(matches!(OuterEmbedding::new(&Graph::complete(4)), Err(EmbedError::NotOuterplanar(_))));
        let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(matches!(OuterEmbedding::new(&k23), Err(EmbedError::NotOuterplanar(_))));
    }

    #[test]
    fn k4_minus_edge() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        let e = OuterEmbedding::new(&g).unwrap();
        assert_eq!(e.chords, vec![(0, 2)]);
        assert_eq!(e.faces.len(), 2);
        assert!(e.has_intersecting_triangles());
    }

    #[test]
    fn face_boundaries_follow_edges() {
        // fan-free dissection of an octagon with nested chords
        let mut g = Graph::cycle(8);
        for (u, v) in [(0, 4), (1, 3), (5, 7)] {
            g.add_edge(u, v).unwrap();
        }
        let e = OuterEmbedding::new(&g).unwrap();
        assert_eq!(e.faces.len(), e.chords.len() + 1);
        let total: usize = e.faces.iter().map(Face::len).sum();
        assert_eq!(total, 8 + 2 * e.chords.len());
        for f in &e.faces {
            let k = f.len();
            for i in 0..k {
                assert!(g.has_edge(f.boundary[i], f.boundary[(i + 1) % k]));
            }
        }
    }
}
