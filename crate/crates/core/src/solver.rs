//! Exact λ and k-feasibility by backtracking.
//!
//! Vertices are visited in breadth-first order from a maximum-degree vertex
//! of each component; labels are tried in ascending order, so the first
//! witness found is the smallest in that order. When nothing is pre-labeled
//! the first vertex of a component is limited to labels `≤ ⌈k/2⌉`, which is
//! safe because `x ↦ k − x` maps labelings to labelings.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::labeling::Labeling;

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("graph has no vertices")]
    Empty,
    #[error("partial labeling covers {labels} vertices but the graph has {n}")]
    SizeMismatch { n: usize, labels: usize },
    #[error("pre-assigned labels already violate the constraints")]
    InconsistentPartial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Labeling),
    /// The whole search space was exhausted.
    Infeasible { nodes: u64 },
}

/// Exhaustion record for `k_tested`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k_tested: u32,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaResult {
    pub lambda: u32,
    pub witness: Labeling,
    /// Present whenever `lambda` exceeds the trivial lower bound.
    pub infeasibility_certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub p: u32,
    pub q: u32,
    pub budget: u64,
    /// Worker threads for the split on the first vertex's label; 1 is sequential.
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { p: 2, q: 1, budget: DEFAULT_BUDGET, threads: 1 }
    }
}

/// One component's search problem in visiting order.
struct Problem {
    order: Vec<usize>,
    /// `(earlier position, minimum difference)` per position.
    back: Vec<Vec<(usize, u32)>>,
    /// `(fixed label, minimum difference)` per position.
    fixed: Vec<Vec<(u32, u32)>>,
    symmetric: bool,
}

fn bfs_order(g: &Graph, comp: &[usize], free: &[bool]) -> Vec<usize> {
    let start = comp
        .iter()
        .copied()
        .filter(|&v| free[v])
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .expect("component has a free vertex");
    let mut seen = vec![false; g.n()];
    let mut order = Vec::new();
    // Free vertices are visited through fixed ones too, so that components
    // split by pre-labeled vertices are still covered.
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        if free[v] {
            order.push(v);
        }
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

fn build(g: &Graph, order: Vec<usize>, partial: &[Option<u32>], cfg: &SolverConfig) -> Problem {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut back = vec![Vec::new(); order.len()];
    let mut fixed = vec![Vec::new(); order.len()];
    for (i, &v) in order.iter().enumerate() {
        let mut add = |w: usize, d: u32| {
            if let Some(x) = partial[w] {
                fixed[i].push((x, d));
            } else if pos[w] < i {
                back[i].push((pos[w], d));
            }
        };
        for &w in g.neighbors(v) {
            add(w, cfg.p);
        }
        for w in g.distance_two(v) {
            add(w, cfg.q);
        }
    }
    let symmetric = order.iter().all(|&v| {
        g.neighbors(v).iter().all(|&w| partial[w].is_none())
            && g.distance_two(v).iter().all(|&w| partial[w].is_none())
    });
    Problem { order, back, fixed, symmetric }
}

enum Outcome {
    Found(Vec<u32>),
    Exhausted,
    OutOfBudget,
    Cancelled,
}

/// Depth-first search with the first label restricted to `first`.
fn search(
    prob: &Problem,
    k: u32,
    first: std::ops::RangeInclusive<u32>,
    nodes: &AtomicU64,
    budget: u64,
    cancel: &AtomicBool,
) -> Outcome {
    let len = prob.order.len();
    if len == 0 {
        return Outcome::Found(Vec::new());
    }
    let fits = |i: usize, x: u32, assign: &[u32]| {
        prob.back[i].iter().all(|&(j, d)| assign[j].abs_diff(x) >= d)
            && prob.fixed[i].iter().all(|&(y, d)| y.abs_diff(x) >= d)
    };
    let mut assign = vec![0u32; len];
    let mut next = vec![0u32; len];
    next[0] = *first.start();
    let mut i = 0usize;
    let mut local = 0u64;
    let mut base = nodes.load(Ordering::Relaxed);
    loop {
        let hi = if i == 0 { *first.end() } else { k };
        let mut found = None;
        let mut x = next[i];
        while x <= hi {
            if fits(i, x, &assign) {
                found = Some(x);
                break;
            }
            x += 1;
        }
        match found {
            Some(x) => {
                local += 1;
                if base + local > budget {
                    nodes.fetch_add(local, Ordering::Relaxed);
                    return Outcome::OutOfBudget;
                }
                if local == 4096 {
                    base = nodes.fetch_add(local, Ordering::Relaxed) + local;
                    local = 0;
                    if cancel.load(Ordering::Relaxed) {
                        return Outcome::Cancelled;
                    }
                }
                assign[i] = x;
                next[i] = x + 1;
                i += 1;
                if i == len {
                    nodes.fetch_add(local, Ordering::Relaxed);
                    return Outcome::Found(assign);
                }
                next[i] = 0;
            }
            None => {
                if i == 0 {
                    nodes.fetch_add(local, Ordering::Relaxed);
                    return Outcome::Exhausted;
                }
                i -= 1;
            }
        }
    }
}

/// Searches one component, splitting on the first label when `threads > 1`.
fn solve_problem(prob: &Problem, k: u32, cfg: &SolverConfig, nodes: &AtomicU64) -> Result<Option<Vec<u32>>, SolverError> {
    let top = if prob.symmetric { k.div_ceil(2) } else { k };
    let never = AtomicBool::new(false);
    let verdict = |o: Outcome| match o {
        Outcome::Found(a) => Ok(Some(a)),
        Outcome::Exhausted => Ok(None),
        Outcome::OutOfBudget | Outcome::Cancelled => Err(SolverError::BudgetExceeded(cfg.budget)),
    };
    if cfg.threads <= 1 || top == 0 {
        return verdict(search(prob, k, 0..=top, nodes, cfg.budget, &never));
    }
    // Each worker owns one first label; the smallest label with a witness
    // wins, which is exactly the sequential answer.
    let cancel_above = AtomicU64::new(u64::MAX);
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..=top)
            .map(|x| {
                let cancel_above = &cancel_above;
                let never = &never;
                s.spawn(move || {
                    if u64::from(x) > cancel_above.load(Ordering::Relaxed) {
                        return Outcome::Cancelled;
                    }
                    let o = search(prob, k, x..=x, nodes, cfg.budget, never);
                    if let Outcome::Found(_) = o {
                        cancel_above.fetch_min(u64::from(x), Ordering::Relaxed);
                    }
                    o
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for o in results {
        match o {
            Outcome::Found(a) => return Ok(Some(a)),
            Outcome::Exhausted | Outcome::Cancelled => {}
            Outcome::OutOfBudget => return Err(SolverError::BudgetExceeded(cfg.budget)),
        }
    }
    Ok(None)
}

/// Completes `partial` to an L(p,q)-labeling with labels in `[0, k]`, or
/// proves that none exists.
pub fn extend_partial_with(g: &Graph, partial: &Labeling, k: u32, cfg: &SolverConfig) -> Result<Feasibility, SolverError> {
    if partial.labels.len() != g.n() {
        return Err(SolverError::SizeMismatch { n: g.n(), labels: partial.labels.len() });
    }
    let pre = &partial.labels;
    for v in 0..g.n() {
        let Some(x) = pre[v] else { continue };
        let clash = x > k
            || g.neighbors(v).iter().any(|&w| pre[w].is_some_and(|y| y.abs_diff(x) < cfg.p))
            || g.distance_two(v).iter().any(|&w| pre[w].is_some_and(|y| y.abs_diff(x) < cfg.q));
        if clash {
            return Err(SolverError::InconsistentPartial);
        }
    }
    let nodes = AtomicU64::new(0);
    let mut out = pre.clone();
    let mut free: Vec<bool> = pre.iter().map(Option::is_none).collect();
    for comp in g.components() {
        if comp.iter().any(|&v| free[v]) {
            let order = bfs_order(g, &comp, &free);
            let prob = build(g, order, &out, cfg);
            match solve_problem(&prob, k, cfg, &nodes)? {
                Some(assign) => {
                    for (&v, &x) in prob.order.iter().zip(&assign) {
                        out[v] = Some(x);
                        free[v] = false;
                    }
                }
                None => return Ok(Feasibility::Infeasible { nodes: nodes.load(Ordering::Relaxed) }),
            }
        }
    }
    Ok(Feasibility::Feasible(Labeling { k, labels: out }))
}

pub fn extend_partial(g: &Graph, partial: &Labeling, k: u32, budget: u64) -> Result<Feasibility, SolverError> {
    extend_partial_with(g, partial, k, &SolverConfig { budget, ..SolverConfig::default() })
}

/// Decides whether `g` has an L(2,1)-labeling with labels in `[0, k]`.
pub fn k_feasible(g: &Graph, k: u32) -> Result<Feasibility, SolverError> {
    k_feasible_with(g, k, &SolverConfig::default())
}

pub fn k_feasible_with(g: &Graph, k: u32, cfg: &SolverConfig) -> Result<Feasibility, SolverError> {
    extend_partial_with(g, &Labeling::empty(g.n(), k), k, cfg)
}

/// Trivial lower bound: `Δ + 1` once there is an edge.
pub fn trivial_lower_bound(g: &Graph) -> u32 {
    if g.m() == 0 {
        0
    } else {
        g.max_degree() as u32 + 1
    }
}

pub fn lambda_exact(g: &Graph) -> Result<LambdaResult, SolverError> {
    lambda_exact_with(g, &SolverConfig::default())
}

/// Smallest feasible `k`, searched upward from the trivial lower bound.
pub fn lambda_exact_with(g: &Graph, cfg: &SolverConfig) -> Result<LambdaResult, SolverError> {
    if g.n() == 0 {
        return Err(SolverError::Empty);
    }
    let lower = trivial_lower_bound(g);
    let mut last = None;
    let mut k = lower;
    loop {
        match k_feasible_with(g, k, cfg)? {
            Feasibility::Feasible(witness) => {
                return Ok(LambdaResult { lambda: k, witness, infeasibility_certificate: last });
            }
            Feasibility::Infeasible { nodes } => {
                last = Some(Certificate { k_tested: k, nodes_explored: nodes });
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{is_valid_l21, verify};

    fn k4_minus_edge() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn triangle() {
        assert!(matches!(k_feasible(&Graph::cycle(3), 3).unwrap(), Feasibility::Infeasible { .. }));
        match k_feasible(&Graph::cycle(3), 4).unwrap() {
            Feasibility::Feasible(f) => assert_eq!(f.values(), vec![0, 2, 4]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_lambdas() {
        let r = lambda_exact(&Graph::path(2)).unwrap();
        assert_eq!((r.lambda, r.witness.values()), (2, vec![0, 2]));
        assert!(r.infeasibility_certificate.is_none());
        let r = lambda_exact(&k4_minus_edge()).unwrap();
        assert_eq!(r.lambda, 5);
        assert_eq!(r.infeasibility_certificate.as_ref().unwrap().k_tested, 4);
        assert!(is_valid_l21(&k4_minus_edge(), &r.witness));
        assert_eq!(lambda_exact(&Graph::new(1)).unwrap().lambda, 0);
        assert_eq!(lambda_exact(&Graph::new(0)), Err(SolverError::Empty));
    }

    #[test]
    fn budget_is_reported() {
        let cfg = SolverConfig { budget: 10, ..SolverConfig::default() };
        let g = Graph::cycle(40);
        assert_eq!(k_feasible_with(&g, 4, &cfg), Err(SolverError::BudgetExceeded(10)));
    }

    #[test]
    fn parallel_matches_sequential() {
        for n in 5..10 {
            for k in 3..6 {
                let g = Graph::cycle(n);
                let seq = k_feasible(&g, k).unwrap();
                let par = k_feasible_with(&g, k, &SolverConfig { threads: 4, ..SolverConfig::default() }).unwrap();
                match (seq, par) {
                    (Feasibility::Feasible(a), Feasibility::Feasible(b)) => assert_eq!(a, b),
                    (Feasibility::Infeasible { .. }, Feasibility::Infeasible { .. }) => {}
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn partial_extension() {
        let g = Graph::path(3);
        let partial = Labeling { k: 4, labels: vec![Some(4), None, Some(4)] };
        assert_eq!(extend_partial(&g, &partial, 4, 1000), Err(SolverError::InconsistentPartial));
        let partial = Labeling { k: 4, labels: vec![Some(4), None, None] };
        match extend_partial(&g, &partial, 4, 1000).unwrap() {
            Feasibility::Feasible(f) => assert!(verify(&g, &f, 2, 1).unwrap().is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn general_pq() {
        // L(1,1) on C5 is a proper colouring of C5 squared (K5): labels 0..=4.
        let cfg = SolverConfig { p: 1, q: 1, ..SolverConfig::default() };
        assert!(matches!(k_feasible_with(&Graph::cycle(5), 3, &cfg).unwrap(), Feasibility::Infeasible { .. }));
        assert!(matches!(k_feasible_with(&Graph::cycle(5), 4, &cfg).unwrap(), Feasibility::Feasible(_)));
    }
}
