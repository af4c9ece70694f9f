//! The ladder family `G(l)`, exhaustive polygon dissections, and seeded random
//! outerplanar graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

/// Largest polygon size accepted by [`enumerate_2conn_outerplanar`].
pub const ENUMERATION_CAP: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("G(l) needs l >= 3, got {0}")]
    LadderTooShort(usize),
    #[error("polygon size {n} outside 3..={max}")]
    SizeOutOfRange { n: usize, max: usize },
}

/// `G(l)` with its vertex names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlInstance {
    pub l: usize,
    pub graph: Graph,
    /// `u`, `x1 … xl`, `y1 … yl`, `v` by vertex id.
    pub names: Vec<String>,
}

/// Two rails `x1 … xl` and `y1 … yl`, rungs `xi yi`, and end vertices `u`
/// (adjacent to `x1`, `y1`) and `v` (adjacent to `xl`, `yl`).
///
/// Ids: `u = 0`, `xi = i`, `yi = l + i`, `v = 2l + 1`.
pub fn gen_gl(l: usize) -> Result<GlInstance, GenError> {
    if l < 3 {
        return Err(GenError::LadderTooShort(l));
    }
    let (u, v) = (0, 2 * l + 1);
    let x = |i: usize| i;
    let y = |i: usize| l + i;
    let mut g = Graph::new(2 * l + 2);
    let mut add = |a, b| g.add_edge(a, b).expect("ladder edges are distinct");
    for i in 1..l {
        add(x(i), x(i + 1));
        add(y(i), y(i + 1));
    }
    for i in 1..=l {
        add(x(i), y(i));
    }
    add(u, x(1));
    add(u, y(1));
    add(v, x(l));
    add(v, y(l));
    let mut names = vec![String::new(); 2 * l + 2];
    names[u] = "u".into();
    names[v] = "v".into();
    for i in 1..=l {
        names[x(i)] = format!("x{i}");
        names[y(i)] = format!("y{i}");
    }
    Ok(GlInstance { l, graph: g, names })
}

/// An `n`-gon with non-crossing chords, each vertex in at most one chord.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DissectionCode {
    pub n: usize,
    /// Sorted pairs `(a, b)` with `a < b`.
    pub chords: Vec<(usize, usize)>,
}

impl DissectionCode {
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::cycle(self.n);
        for &(a, b) in &self.chords {
            g.add_edge(a, b).expect("chords are not polygon edges");
        }
        g
    }

    /// The chord set under rotation by `r` and optional reflection.
    pub fn transformed(&self, r: usize, reflect: bool) -> Vec<(usize, usize)> {
        let n = self.n;
        let map = |x: usize| if reflect { (n - x + r) % n } else { (x + r) % n };
        let mut out: Vec<(usize, usize)> = self
            .chords
            .iter()
            .map(|&(a, b)| {
                let (p, q) = (map(a), map(b));
                (p.min(q), p.max(q))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// True if no rotation or reflection gives a smaller chord list.
    pub fn is_canonical(&self) -> bool {
        (0..self.n).all(|r| [false, true].iter().all(|&f| self.transformed(r, f) >= self.chords))
    }
}

/// Chords `(a, b)` and `(c, d)` with `a < b`, `c < d` on a polygon cross iff
/// exactly one of `c`, `d` lies strictly between `a` and `b`.
pub fn polygon_chords_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d)
}

fn extend_matchings(n: usize, v: usize, used: &mut [bool], chords: &mut Vec<(usize, usize)>, out: &mut Vec<DissectionCode>) {
    if v == n {
        let code = DissectionCode { n, chords: chords.clone() };
        if code.is_canonical() {
            out.push(code);
        }
        return;
    }
    extend_matchings(n, v + 1, used, chords, out);
    if used[v] {
        return;
    }
    for w in v + 2..n {
        if used[w] || (v == 0 && w == n - 1) {
            continue;
        }
        if chords.iter().any(|&c| polygon_chords_cross(c, (v, w))) {
            continue;
        }
        used[v] = true;
        used[w] = true;
        chords.push((v, w));
        extend_matchings(n, v + 1, used, chords, out);
        chords.pop();
        used[v] = false;
        used[w] = false;
    }
}

/// All dissection codes of the `n`-gon with maximum degree 3, one per
/// dihedral class, in lexicographic order of chord lists.
pub fn dissection_codes(n: usize) -> Result<Vec<DissectionCode>, GenError> {
    if !(3..=ENUMERATION_CAP).contains(&n) {
        return Err(GenError::SizeOutOfRange { n, max: ENUMERATION_CAP });
    }
    let mut out = Vec::new();
    extend_matchings(n, 0, &mut vec![false; n], &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// 2-connected outerplanar graphs on `n` vertices with maximum degree 3,
/// up to polygon symmetry.
pub fn enumerate_2conn_outerplanar(n: usize) -> Result<impl Iterator<Item = Graph>, GenError> {
    Ok(dissection_codes(n)?.into_iter().map(|c| c.to_graph()))
}

/// Block sizes and branch lengths for [`random_outerplanar`].
const BLOCK_SIZES: std::ops::RangeInclusive<usize> = 3..=12;
const BRANCH_LENGTHS: std::ops::RangeInclusive<usize> = 0..=3;

/// Random chords on a `size`-gon, leaving at least two vertices chord-free.
fn random_chords(rng: &mut ChaCha8Rng, size: usize) -> Vec<(usize, usize)> {
    let mut chords: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; size];
    for _ in 0..size {
        if size - 2 * chords.len() < 4 {
            break;
        }
        let a = rng.gen_range(0..size);
        let b = rng.gen_range(0..size);
        let (a, b) = (a.min(b), a.max(b));
        if b < a + 2 || (a == 0 && b == size - 1) || used[a] || used[b] {
            continue;
        }
        if chords.iter().any(|&c| polygon_chords_cross(c, (a, b))) {
            continue;
        }
        used[a] = true;
        used[b] = true;
        chords.push((a, b));
    }
    chords
}

/// Seeded composition of random dissection blocks, branches and pendant
/// paths, glued at vertices of degree at most 2, with vertex ids shuffled at
/// the end. Every vertex has degree at most 3 and every block is a
/// dissected polygon.
pub fn random_outerplanar(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut deg: Vec<usize> = Vec::new();
    let new_vertex = |deg: &mut Vec<usize>| {
        deg.push(0);
        deg.len() - 1
    };
    let connect = |edges: &mut Vec<(usize, usize)>, deg: &mut Vec<usize>, a: usize, b: usize| {
        edges.push((a, b));
        deg[a] += 1;
        deg[b] += 1;
    };
    // Adds a dissected polygon of `size` new vertices and returns a chord-free
    // vertex of it.
    let add_block = |rng: &mut ChaCha8Rng, edges: &mut Vec<(usize, usize)>, deg: &mut Vec<usize>, size: usize| {
        let base = deg.len();
        deg.extend(std::iter::repeat(0).take(size));
        for i in 0..size {
            connect(edges, deg, base + i, base + (i + 1) % size);
        }
        let chords = random_chords(rng, size);
        for &(a, b) in &chords {
            connect(edges, deg, base + a, base + b);
        }
        let free: Vec<usize> = (0..size).filter(|&i| deg[base + i] == 2).map(|i| base + i).collect();
        *free.choose(rng).expect("two vertices stay chord-free")
    };

    while deg.len() < n {
        let remaining = n - deg.len();
        if deg.is_empty() {
            if remaining >= 3 && rng.gen_bool(0.8) {
                let size = rng.gen_range(3..=remaining.min(*BLOCK_SIZES.end()));
                add_block(&mut rng, &mut edges, &mut deg, size);
            } else {
                new_vertex(&mut deg);
            }
            continue;
        }
        let open: Vec<usize> = (0..deg.len()).filter(|&v| deg[v] <= 2).collect();
        let Some(&anchor) = open.choose(&mut rng) else { break };
        let mut end = anchor;
        let branch = rng.gen_range(BRANCH_LENGTHS).min(remaining);
        for _ in 0..branch {
            let w = new_vertex(&mut deg);
            connect(&mut edges, &mut deg, end, w);
            end = w;
        }
        let remaining = n - deg.len();
        if remaining >= 3 && rng.gen_bool(0.6) {
            let size = rng.gen_range(3..=remaining.min(*BLOCK_SIZES.end()));
            let c = add_block(&mut rng, &mut edges, &mut deg, size);
            connect(&mut edges, &mut deg, end, c);
        } else if branch == 0 && remaining >= 1 {
            let w = new_vertex(&mut deg);
            connect(&mut edges, &mut deg, end, w);
        }
    }

    let mut perm: Vec<usize> = (0..deg.len()).collect();
    perm.shuffle(&mut rng);
    let mut g = Graph::new(deg.len());
    for (a, b) in edges {
        g.add_edge(perm[a], perm[b]).expect("generated edges are simple");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::OuterEmbedding;

    #[test]
    fn ladder_counts() {
        for l in 3..=30 {
            let gl = gen_gl(l).unwrap();
            assert_eq!(gl.graph.n(), 2 * l + 2);
            assert_eq!(gl.graph.m(), 3 * l + 2);
            assert_eq!(gl.graph.max_degree(), 3);
            assert_eq!(gl.graph.degree(0), 2);
            assert_eq!(gl.graph.degree(2 * l + 1), 2);
            assert!(OuterEmbedding::new(&gl.graph).is_ok());
        }
        assert_eq!(gen_gl(2), Err(GenError::LadderTooShort(2)));
        assert_eq!(gen_gl(4).unwrap().names[5], "y1");
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_2conn_outerplanar(3).unwrap().count(), 1);
        let four: Vec<Graph> = enumerate_2conn_outerplanar(4).unwrap().collect();
        assert_eq!(four.iter().map(Graph::m).collect::<Vec<_>>(), vec![4, 5]);
        let five: Vec<Graph> = enumerate_2conn_outerplanar(5).unwrap().collect();
        assert_eq!(five.iter().map(Graph::m).collect::<Vec<_>>(), vec![5, 6]);
        assert!(enumerate_2conn_outerplanar(2).is_err());
        assert!(enumerate_2conn_outerplanar(ENUMERATION_CAP + 1).is_err());
    }

    #[test]
    fn enumerated_graphs_embed() {
        for n in 3..=10 {
            for g in enumerate_2conn_outerplanar(n).unwrap() {
                assert!(g.max_degree() <= 3);
                assert!(OuterEmbedding::new(&g).is_ok());
            }
        }
    }

    #[test]
    fn random_graphs_are_deterministic() {
        for seed in 0..20 {
            let a = random_outerplanar(60, seed);
            assert_eq!(a.to_edge_list(), random_outerplanar(60, seed).to_edge_list());
            assert_eq!(a.n(), 60);
            assert!(a.max_degree() <= 3);
        }
        assert_eq!(random_outerplanar(1, 7).n(), 1);
    }
}
