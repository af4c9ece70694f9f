//! Slow, independent reference implementations used to cross-check the fast
//! code paths in tests.

use std::collections::BTreeSet;

use crate::generators::{polygon_chords_cross, DissectionCode};
use crate::graph::Graph;
use crate::labeling::windows::{Label, MAX_LABEL};
use crate::labeling::{is_valid_l21, Labeling};

/// One attachment: a path of length 2 (`true`) or 3 (`false`) glued across
/// the interior edge `(u_i, u_{i+1})`.
type Site = (usize, bool);

/// Site subsets over `edges` interior edges with consecutive indices at
/// least 2 apart, each site carrying both attachment kinds.
fn attachment_families(edges: usize) -> Vec<Vec<Site>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, edges: usize, cur: &mut Vec<Site>, out: &mut Vec<Vec<Site>>) {
        out.push(cur.clone());
        for i in start..edges {
            for tri in [true, false] {
                cur.push((i, tri));
                rec(i + 2, edges, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, edges, &mut cur, &mut out);
    out
}

/// Builds the path `u, u_1, …, u_l, v` plus the attachments. Returns the
/// graph, the base labels, and the ids of the new vertices.
fn build_family_member(
    u: Option<Label>,
    inner: &[Label],
    v: Option<Label>,
    sites: &[Site],
) -> (Graph, Vec<Option<Label>>, Vec<usize>) {
    let mut base: Vec<Option<Label>> = Vec::new();
    base.extend(u.map(Some));
    let first_inner = base.len();
    base.extend(inner.iter().map(|&x| Some(x)));
    base.extend(v.map(Some));
    let extra: usize = sites.iter().map(|&(_, tri)| if tri { 1 } else { 2 }).sum();
    let n = base.len() + extra;
    let mut g = Graph::new(n);
    for i in 1..base.len() {
        g.add_edge(i - 1, i).unwrap();
    }
    let mut fresh = Vec::new();
    let mut next = base.len();
    for &(i, tri) in sites {
        let (a, b) = (first_inner + i, first_inner + i + 1);
        if tri {
            g.add_edge(a, next).unwrap();
            g.add_edge(b, next).unwrap();
            fresh.push(next);
            next += 1;
        } else {
            g.add_edge(a, next).unwrap();
            g.add_edge(next, next + 1).unwrap();
            g.add_edge(next + 1, b).unwrap();
            fresh.extend([next, next + 1]);
            next += 2;
        }
    }
    base.resize(n, None);
    (g, base, fresh)
}

/// Vertices within distance 2 of `v`.
fn ball2(g: &Graph, v: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &w in g.neighbors(v) {
        out.insert(w);
        out.extend(g.neighbors(w).iter().copied().filter(|&x| x != v));
    }
    out
}

fn consistent(g: &Graph, labels: &[Option<Label>], v: usize) -> bool {
    let x = labels[v].unwrap();
    let near = g.neighbors(v);
    ball2(g, v).into_iter().all(|w| match labels[w] {
        None => true,
        Some(y) if near.contains(&w) => x.abs_diff(y) >= 2,
        Some(y) => x != y,
    })
}

fn backtrack(g: &Graph, labels: &mut [Option<Label>], todo: &[usize]) -> bool {
    let Some((&v, rest)) = todo.split_first() else { return true };
    for x in 0..=MAX_LABEL {
        labels[v] = Some(x);
        if consistent(g, labels, v) && backtrack(g, labels, rest) {
            labels[v] = None;
            return true;
        }
    }
    labels[v] = None;
    false
}

/// Groups the unlabeled vertices of `g` into classes that interact (are
/// within distance 2 of each other, transitively).
fn interacting_groups(g: &Graph, fresh: &[usize]) -> Vec<Vec<usize>> {
    let mut group: Vec<usize> = (0..fresh.len()).collect();
    fn root(group: &mut [usize], i: usize) -> usize {
        if group[i] == i {
            i
        } else {
            let r = root(group, group[i]);
            group[i] = r;
            r
        }
    }
    for i in 0..fresh.len() {
        let near = ball2(g, fresh[i]);
        for j in i + 1..fresh.len() {
            if near.contains(&fresh[j]) {
                let (a, b) = (root(&mut group, i), root(&mut group, j));
                group[a] = b;
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; fresh.len()];
    for i in 0..fresh.len() {
        let r = root(&mut group, i);
        if index[r] == usize::MAX {
            index[r] = out.len();
            out.push(Vec::new());
        }
        out[index[r]].push(fresh[i]);
    }
    out
}

/// Path-extendability decided from the definition: the labeling must be a
/// proper 6-labeling of the path, and every member of the attachment family
/// must admit an extension with labels in `[0, 6]`.
pub fn path_extendable_by_enumeration(u: Option<Label>, inner: &[Label], v: Option<Label>) -> bool {
    let (path, base, _) = build_family_member(u, inner, v, &[]);
    let total = Labeling { k: MAX_LABEL as u32, labels: base.iter().map(|x| x.map(u32::from)).collect() };
    if !is_valid_l21(&path, &total) {
        return false;
    }
    attachment_families(inner.len() - 1).into_iter().all(|sites| {
        let (g, mut labels, fresh) = build_family_member(u, inner, v, &sites);
        interacting_groups(&g, &fresh).iter().all(|grp| backtrack(&g, &mut labels, grp))
    })
}

/// λ by trying every labeling in `[0, k]^n` for `k = 0, 1, …`.
pub fn lambda_naive(g: &Graph) -> u32 {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let pairs: Vec<(usize, usize, u32)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter_map(|(a, b)| {
            if g.has_edge(a, b) {
                Some((a, b, 2))
            } else if g.neighbors(a).iter().any(|&c| g.has_edge(c, b)) {
                Some((a, b, 1))
            } else {
                None
            }
        })
        .collect();
    for k in 0.. {
        let mut f = vec![0u32; n];
        loop {
            if pairs.iter().all(|&(a, b, d)| f[a].abs_diff(f[b]) >= d) {
                return k;
            }
            let mut i = 0;
            while i < n && f[i] == k {
                f[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            f[i] += 1;
        }
    }
    unreachable!()
}

/// Every chord subset of the `n`-gon that is pairwise non-crossing and keeps
/// the maximum degree at most 3, reduced to dihedral-minimal chord lists.
pub fn dissections_by_subsets(n: usize) -> BTreeSet<Vec<(usize, usize)>> {
    let diagonals: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 2..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !(a == 0 && b == n - 1))
        .collect();
    assert!(diagonals.len() < 32, "polygon too large for subset enumeration");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << diagonals.len()) {
        let chosen: Vec<(usize, usize)> =
            (0..diagonals.len()).filter(|&i| mask >> i & 1 == 1).map(|i| diagonals[i]).collect();
        let mut deg = vec![2; n];
        for &(a, b) in &chosen {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d > 3) {
            continue;
        }
        let crossing = chosen
            .iter()
            .enumerate()
            .any(|(i, &c)| chosen[i + 1..].iter().any(|&d| polygon_chords_cross(c, d)));
        if crossing {
            continue;
        }
        let code = DissectionCode { n, chords: chosen };
        let canon = (0..n).flat_map(|r| [false, true].map(|f| code.transformed(r, f))).min().unwrap();
        out.insert(canon);
    }
    out
}

/// Outerplanarity of a 2-connected graph by searching for a Hamiltonian cycle
/// whose remaining edges pairwise do not cross.
pub fn is_outerplanar_block_brute(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let mut cycle = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    fn rec(g: &Graph, cycle: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = g.n();
        let last = *cycle.last().unwrap();
        if cycle.len() == n {
            if !g.has_edge(last, cycle[0]) {
                return false;
            }
            let mut pos = vec![0; n];
            for (i, &v) in cycle.iter().enumerate() {
                pos[v] = i;
            }
            let chords: Vec<(usize, usize)> = g
                .edges()
                .into_iter()
                .map(|(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
                .filter(|&(a, b)| b - a != 1 && !(a == 0 && b == n - 1))
                .collect();
            return chords
                .iter()
                .enumerate()
                .all(|(i, &c)| chords[i + 1..].iter().all(|&d| !polygon_chords_cross(c, d)));
        }
        for &w in g.neighbors(last) {
            if !used[w] {
                used[w] = true;
                cycle.push(w);
                if rec(g, cycle, used) {
                    return true;
                }
                cycle.pop();
                used[w] = false;
            }
        }
        false
    }
    rec(g, &mut cycle, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        // One interior edge: nothing, a triangle, or a square.
        assert_eq!(attachment_families(1).len(), 3);
        assert_eq!(attachment_families(2).len(), 5);
        assert_eq!(attachment_families(3).len(), 11);
    }

    #[test]
    fn small_cases() {
        assert!(path_extendable_by_enumeration(None, &[0, 2, 4, 0], None));
        assert!(!path_extendable_by_enumeration(Some(4), &[1, 3], Some(0)));
        assert!(!path_extendable_by_enumeration(Some(0), &[2, 4], Some(6)));
        assert!(!path_extendable_by_enumeration(None, &[0, 1], None));
    }

    #[test]
    fn naive_lambda() {
        assert_eq!(lambda_naive(&Graph::path(2)), 2);
        assert_eq!(lambda_naive(&Graph::complete(3)), 4);
        assert_eq!(lambda_naive(&Graph::new(3)), 0);
    }

    #[test]
    fn brute_outerplanarity() {
        assert!(is_outerplanar_block_brute(&Graph::cycle(6)));
        assert!(!is_outerplanar_block_brute(&Graph::complete(4)));
        let mut g = Graph::cycle(6);
        g.add_edge(0, 3).unwrap();
        g.add_edge(1, 4).unwrap();
        assert!(!is_outerplanar_block_brute(&g));
    }
}
