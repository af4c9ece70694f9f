//! Whole-graph labeling: special shapes, root block, then outward over the
//! block tree.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use super::ops::{label_attached_block, label_root_block, synthesize_prefix, Engine, ExtendError, Strategy, Telemetry};
use super::cases::seed_labels;
use crate::blocks::BlockDecomposition;
use crate::embedding::{EmbedError, OuterEmbedding};
use crate::graph::Graph;
use crate::labeling::windows::{Label, MAX_LABEL};
use crate::labeling::{is_valid_l21, Labeling};
use crate::solver::{extend_partial, Feasibility, DEFAULT_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("not outerplanar: {0}")]
    NotOuterplanar(String),
    #[error("maximum degree {0} exceeds 3")]
    MaxDegreeExceeded(usize),
    #[error("no extension: {0}")]
    NoExtension(String),
    #[error("exact search gave up: {0}")]
    Solver(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelOutcome {
    pub labeling: Labeling,
    pub telemetry: Telemetry,
}

/// Embeddings of every 2-connected block, in global vertex ids.
pub struct Prepared {
    pub blocks: BlockDecomposition,
    pub embeddings: Vec<OuterEmbedding>,
    /// The 2-connected block containing each vertex, if any.
    pub block_of: Vec<Option<usize>>,
}

/// Checks the input and embeds its blocks.
pub fn prepare(g: &Graph) -> Result<Prepared, LabelError> {
    if g.max_degree() > 3 {
        return Err(LabelError::MaxDegreeExceeded(g.max_degree()));
    }
    let blocks = BlockDecomposition::new(g);
    let mut embeddings = Vec::with_capacity(blocks.blocks.len());
    let mut block_of = vec![None; g.n()];
    for (i, b) in blocks.blocks.iter().enumerate() {
        let (local, map) = b.to_graph();
        let emb = OuterEmbedding::new(&local).map_err(|e| match e {
            EmbedError::NotOuterplanar(msg) => LabelError::NotOuterplanar(msg),
            other => LabelError::NotOuterplanar(other.to_string()),
        })?;
        embeddings.push(emb.relabel(&map));
        for &v in &b.vertices {
            block_of[v] = Some(i);
        }
    }
    Ok(Prepared { blocks, embeddings, block_of })
}

/// A verifier-clean labeling with labels in `[0, 6]` of an outerplanar graph
/// with maximum degree at most 3.
pub fn label_graph(g: &Graph, strategy: &Strategy) -> Result<LabelOutcome, LabelError> {
    let prep = prepare(g)?;
    let mut labels: Vec<Option<Label>> = vec![None; g.n()];
    let mut engine = Engine::new(*strategy);
    for comp in g.components() {
        label_component(g, &prep, &comp, &mut labels, &mut engine)?;
    }
    let labeling = Labeling { k: MAX_LABEL as u32, labels: labels.iter().map(|x| x.map(u32::from)).collect() };
    assert!(is_valid_l21(g, &labeling), "pipeline produced an invalid labeling");
    Ok(LabelOutcome { labeling, telemetry: engine.telemetry })
}

/// Smallest label compatible with every labeled vertex within distance two.
fn greedy(g: &Graph, labels: &[Option<Label>], v: usize) -> Option<Label> {
    let mut forbidden = [false; MAX_LABEL as usize + 1];
    for &u in g.neighbors(v) {
        if let Some(x) = labels[u] {
            for y in x.saturating_sub(1)..=(x + 1).min(MAX_LABEL) {
                forbidden[y as usize] = true;
            }
        }
        for &w in g.neighbors(u) {
            if w != v {
                if let Some(x) = labels[w] {
                    forbidden[x as usize] = true;
                }
            }
        }
    }
    (0..=MAX_LABEL).find(|&x| !forbidden[x as usize])
}

fn is_k4_minus_edge_block(prep: &Prepared, b: usize) -> bool {
    let block = &prep.blocks.blocks[b];
    block.vertices.len() == 4 && block.edges.len() == 5
}

fn is_k4_minus_edge(g: &Graph, vertices: &[usize]) -> bool {
    let m: usize = vertices.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    vertices.len() == 4 && m == 5
}

fn label_component(
    g: &Graph,
    prep: &Prepared,
    comp: &[usize],
    labels: &mut [Option<Label>],
    engine: &mut Engine,
) -> Result<(), LabelError> {
    let m: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    let first = comp[0];

    if comp.iter().all(|&v| prep.block_of[v].is_none()) {
        // Forest component: breadth-first greedy. Each vertex sees its parent
        // and at most two of the parent's other neighbors, so at most five
        // labels are ever forbidden.
        debug_assert_eq!(m + 1, comp.len());
        let mut queue = VecDeque::from([first]);
        labels[first] = Some(0);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if labels[w].is_none() {
                    labels[w] = Some(greedy(g, labels, w).expect("tree greedy never runs out"));
                    queue.push_back(w);
                }
            }
        }
        return Ok(());
    }

    if m == comp.len() && comp.iter().all(|&v| g.degree(v) == 2) {
        let emb = &prep.embeddings[prep.block_of[first].unwrap()];
        for (&v, x) in emb.outer_cycle.iter().zip(seed_labels(comp.len())) {
            labels[v] = Some(x);
        }
        return Ok(());
    }

    if is_k4_minus_edge(g, comp) {
        fixed_k4_minus_edge(g, comp, labels);
        return Ok(());
    }

    let root = prep
        .blocks
        .blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| comp.binary_search(&b.vertices[0]).is_ok())
        .max_by_key(|(i, b)| (b.vertices.len(), std::cmp::Reverse(*i)))
        .map(|(i, _)| i)
        .expect("a component with a cycle has a 2-connected block");

    if is_k4_minus_edge_block(prep, root) {
        fixed_k4_minus_edge_block(prep, root, g, labels);
    } else if let Err(e) = label_root_block(&prep.embeddings[root], labels, engine) {
        escalate(g, prep, comp, root, labels, engine, e)?;
    }

    let mut queue: VecDeque<usize> = comp.iter().copied().filter(|&v| labels[v].is_some()).collect();
    while let Some(p) = queue.pop_front() {
        for &c in g.neighbors(p) {
            if labels[c].is_some() {
                continue;
            }
            match prep.block_of[c] {
                Some(b) => {
                    let others: Vec<Option<Label>> =
                        g.neighbors(p).iter().filter(|&&w| w != c).map(|&w| labels[w]).collect();
                    let fp = labels[p].unwrap();
                    let prefix = synthesize_prefix(others.first().copied().flatten(), fp, others.get(1).copied().flatten());
                    let result = label_attached_block(&prep.embeddings[b], c, prefix, labels, engine);
                    if let Err(e) = result {
                        escalate(g, prep, comp, b, labels, engine, e)?;
                        if comp.iter().all(|&v| labels[v].is_some()) {
                            return Ok(());
                        }
                    }
                    queue.extend(prep.blocks.blocks[b].vertices.iter().copied());
                }
                None => {
                    let x = greedy(g, labels, c).ok_or_else(|| LabelError::NoExtension(format!("vertex {c}")))?;
                    labels[c] = Some(x);
                    queue.push_back(c);
                }
            }
        }
    }
    Ok(())
}

fn block_degree(prep: &Prepared, b: usize, g: &Graph, v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&w| prep.blocks.blocks[b].contains(w)).count()
}

/// `K4 − e`: the two degree-3 vertices get 0 and 2, the other two 4 and 5.
fn fixed_k4_minus_edge(g: &Graph, comp: &[usize], labels: &mut [Option<Label>]) {
    let (hi, lo): (Vec<usize>, Vec<usize>) = comp.iter().partition(|&&v| g.degree(v) == 3);
    for (&v, x) in hi.iter().chain(&lo).zip([0, 2, 4, 5]) {
        labels[v] = Some(x);
    }
}

fn fixed_k4_minus_edge_block(prep: &Prepared, b: usize, g: &Graph, labels: &mut [Option<Label>]) {
    let vs = &prep.blocks.blocks[b].vertices;
    let (hi, lo): (Vec<usize>, Vec<usize>) = vs.iter().partition(|&&v| block_degree(prep, b, g, v) == 3);
    for (&v, x) in hi.iter().chain(&lo).zip([0, 2, 4, 5]) {
        labels[v] = Some(x);
    }
}

/// Engine failure inside block `b`: whole-block backtracking, then the exact
/// solver on the component.
fn escalate(
    g: &Graph,
    prep: &Prepared,
    comp: &[usize],
    b: usize,
    labels: &mut [Option<Label>],
    engine: &mut Engine,
    cause: ExtendError,
) -> Result<(), LabelError> {
    if engine.strategy.strict {
        return Err(LabelError::NoExtension(cause.to_string()));
    }
    log::warn!("engine failed ({cause}); escalating block {b}");
    let block = &prep.blocks.blocks[b].vertices;
    for &v in block {
        labels[v] = None;
    }
    engine.telemetry.face_escalations += 1;
    let mut scope: Vec<usize> = comp.iter().copied().filter(|&v| labels[v].is_some()).collect();
    scope.extend(block.iter().copied().filter(|&v| labels[v].is_none()));
    scope.sort_unstable();
    if solve_within(g, &scope, labels) {
        return Ok(());
    }

    log::warn!("whole-block search failed; solving component from scratch");
    engine.telemetry.solver_escalations += 1;
    for &v in comp {
        labels[v] = None;
    }
    if solve_within(g, comp, labels) {
        Ok(())
    } else {
        Err(LabelError::Solver(format!("component containing vertex {}", comp[0])))
    }
}

/// Exact completion of the labeling restricted to `scope`.
fn solve_within(g: &Graph, scope: &[usize], labels: &mut [Option<Label>]) -> bool {
    let sub = g.induced(scope);
    let partial = Labeling { k: MAX_LABEL as u32, labels: scope.iter().map(|&v| labels[v].map(u32::from)).collect() };
    match extend_partial(&sub, &partial, MAX_LABEL as u32, DEFAULT_BUDGET) {
        Ok(Feasibility::Feasible(f)) => {
            for (i, &v) in scope.iter().enumerate() {
                labels[v] = f.labels[i].map(|x| x as Label);
            }
            true
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::ops::Mode;

    fn run(g: &Graph) -> LabelOutcome {
        label_graph(g, &Strategy::default()).unwrap()
    }

    #[test]
    fn cycle_six_uses_the_seed() {
        let out = run(&Graph::cycle(6));
        assert_eq!(out.labeling.values(), vec![0, 2, 4, 0, 2, 4]);
        assert_eq!(out.labeling.span(), 4);
    }

    #[test]
    fn k4_minus_edge() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        let out = run(&g);
        assert_eq!(out.labeling.values(), vec![0, 4, 2, 5]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(label_graph(&Graph::complete(4), &Strategy::default()), Err(LabelError::NotOuterplanar(_))));
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(label_graph(&star, &Strategy::default()), Err(LabelError::MaxDegreeExceeded(4)));
    }

    #[test]
    fn small_shapes() {
        for g in [Graph::new(0), Graph::new(1), Graph::path(2), Graph::path(7), Graph::new(3)] {
            let out = run(&g);
            assert!(is_valid_l21(&g, &out.labeling));
        }
    }

    #[test]
    fn two_triangles_joined_by_a_path() {
        let g = Graph::from_edges(
            9,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 6)],
        )
        .unwrap();
        for mode in [Mode::CaseTables, Mode::CertifiedSearch, Mode::Hybrid] {
            let out = label_graph(&g, &Strategy { mode, strict: true }).unwrap();
            assert!(is_valid_l21(&g, &out.labeling));
        }
    }
}
