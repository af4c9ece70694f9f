//! Biconnected blocks, bridge chains and the tree they form.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// A 2-connected block with at least three vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex list.
    pub vertices: Vec<usize>,
    /// Edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// The block as a standalone graph plus the map from local to global ids.
    pub fn to_graph(&self) -> (Graph, Vec<usize>) {
        let local = |v: usize| self.vertices.binary_search(&v).unwrap();
        let mut g = Graph::new(self.vertices.len());
        for &(u, v) in &self.edges {
            g.add_edge(local(u), local(v)).unwrap();
        }
        (g, self.vertices.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeNode {
    Block(usize),
    Branch(usize),
    Pendant(usize),
    Junction(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Maximal 2-connected subgraphs.
    pub blocks: Vec<Block>,
    /// Single-edge blocks.
    pub bridges: Vec<(usize, usize)>,
    /// All vertices whose removal disconnects their component.
    pub articulation_points: Vec<usize>,
    /// Articulation points lying on a 2-connected block.
    pub cut_vertices: Vec<usize>,
    /// Maximal bridge paths whose interior vertices have degree 2 and whose
    /// two ends have degree at least 3.
    pub branches: Vec<Vec<usize>>,
    /// Maximal bridge paths with an end of degree 1.
    pub pendant_paths: Vec<Vec<usize>>,
    /// Degree-3-or-more vertices outside every 2-connected block.
    pub junctions: Vec<usize>,
    pub tree_nodes: Vec<TreeNode>,
    pub tree_edges: Vec<(TreeNode, TreeNode)>,
}

impl BlockDecomposition {
    pub fn new(g: &Graph) -> Self {
        let (components, articulation_points) = biconnected_components(g);
        let mut blocks = Vec::new();
        let mut bridges = Vec::new();
        for mut edges in components {
            if edges.len() == 1 {
                bridges.push(edges[0]);
                continue;
            }
            edges.sort_unstable();
            let mut vertices: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            blocks.push(Block { vertices, edges });
        }
        blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        bridges.sort_unstable();

        let mut block_of: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (i, b) in blocks.iter().enumerate() {
            for &v in &b.vertices {
                block_of[v].push(i);
            }
        }
        let cut_vertices = articulation_points
            .iter()
            .copied()
            .filter(|&v| !block_of[v].is_empty())
            .collect();

        let chains = bridge_chains(g, &bridges, &block_of);
        let mut branches = Vec::new();
        let mut pendant_paths = Vec::new();
        for c in chains {
            let ends_ok = g.degree(c[0]) >= 3 && g.degree(*c.last().unwrap()) >= 3;
            if ends_ok {
                branches.push(c);
            } else {
                pendant_paths.push(c);
            }
        }
        let junctions: Vec<usize> =
            (0..g.n()).filter(|&v| block_of[v].is_empty() && g.degree(v) >= 3).collect();

        let mut tree_nodes: Vec<TreeNode> = (0..blocks.len()).map(TreeNode::Block).collect();
        tree_nodes.extend((0..branches.len()).map(TreeNode::Branch));
        tree_nodes.extend((0..pendant_paths.len()).map(TreeNode::Pendant));
        tree_nodes.extend(junctions.iter().map(|&v| TreeNode::Junction(v)));

        let anchor = |v: usize| -> Option<TreeNode> {
            if let Some(&b) = block_of[v].first() {
                Some(TreeNode::Block(b))
            } else if g.degree(v) >= 3 {
                Some(TreeNode::Junction(v))
            } else {
                None
            }
        };
        let mut tree_edges = Vec::new();
        let chain_nodes = branches
            .iter()
            .enumerate()
            .map(|(i, c)| (TreeNode::Branch(i), c))
            .chain(pendant_paths.iter().enumerate().map(|(i, c)| (TreeNode::Pendant(i), c)));
        for (node, c) in chain_nodes {
            let mut ends = vec![c[0], *c.last().unwrap()];
            ends.dedup();
            for e in ends {
                if let Some(a) = anchor(e) {
                    tree_edges.push((a, node));
                }
            }
        }
        // Two blocks sharing a cut vertex (impossible when the maximum degree is 3).
        for v in 0..g.n() {
            for w in block_of[v].windows(2) {
                tree_edges.push((TreeNode::Block(w[0]), TreeNode::Block(w[1])));
            }
        }
        tree_edges.sort_unstable();

        BlockDecomposition {
            blocks,
            bridges,
            articulation_points,
            cut_vertices,
            branches,
            pendant_paths,
            junctions,
            tree_nodes,
            tree_edges,
        }
    }

    /// Index of the 2-connected block containing `v`, if any.
    pub fn block_containing(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(v))
    }
}

/// Splits a bridge forest into maximal paths through degree-2 vertices that lie
/// outside every 2-connected block.
fn bridge_chains(g: &Graph, bridges: &[(usize, usize)], block_of: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut bridge_nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in bridges {
        bridge_nbrs.entry(u).or_default().push(v);
        bridge_nbrs.entry(v).or_default().push(u);
    }
    let through = |v: usize| g.degree(v) == 2 && block_of[v].is_empty();
    let mut used = std::collections::BTreeSet::new();
    let mut chains = Vec::new();

    for &(a, b) in bridges {
        if used.contains(&(a, b)) {
            continue;
        }
        // Walk backwards from a, then forwards from b.
        let mut left = vec![a];
        let (mut prev, mut cur) = (b, a);
        while through(cur) {
            let next = bridge_nbrs[&cur].iter().copied().find(|&x| x != prev).unwrap();
            left.push(next);
            prev = cur;
            cur = next;
        }
        left.reverse();
        let mut right = vec![b];
        let (mut prev, mut cur) = (a, b);
        while through(cur) {
            let next = bridge_nbrs[&cur].iter().copied().find(|&x| x != prev).unwrap();
            right.push(next);
            prev = cur;
            cur = next;
        }
        let mut chain = left;
        chain.extend(right);
        if chain.first() > chain.last() {
            chain.reverse();
        }
        for w in chain.windows(2) {
            used.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        chains.push(chain);
    }
    chains.sort();
    chains
}

/// Edge sets of the biconnected components and the sorted articulation points.
pub fn biconnected_components(g: &Graph) -> (Vec<Vec<(usize, usize)>>, Vec<usize>) {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut is_art = vec![false; n];
    let mut comps = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, UNSEEN, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < g.degree(v) {
                top.2 += 1;
                let w = g.neighbors(v)[idx];
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                if parent != root {
                    is_art[parent] = true;
                }
                let mut comp = Vec::new();
                while let Some(e) = edge_stack.pop() {
                    comp.push((e.0.min(e.1), e.0.max(e.1)));
                    if e == (parent, v) {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
        if root_children > 1 {
            is_art[root] = true;
        }
    }
    let arts = (0..n).filter(|&v| is_art[v]).collect();
    (comps, arts)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Triangles 0-1-2 and 5-6-7 joined by the 3-edge path 2-3-4-5, plus a pendant 7-8.
    fn two_triangles_and_path() -> Graph {
        Graph::from_edges(
            9,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 7), (7, 8)],
        )
        .unwrap()
    }

    #[test]
    fn cycle_is_one_block() {
        let d = BlockDecomposition::new(&Graph::cycle(5));
        assert_eq!(d.blocks.len(), 1);
        assert!(d.cut_vertices.is_empty());
        assert!(d.branches.is_empty());
        assert_eq!(d.tree_nodes, vec![TreeNode::Block(0)]);
    }

    #[test]
    fn triangles_joined_by_branch() {
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 7)],
        )
        .unwrap();
        let d = BlockDecomposition::new(&g);
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cut_vertices, vec![2, 5]);
        assert_eq!(d.branches, vec![vec![2, 3, 4, 5]]);
        assert_eq!(d.branches[0].len() - 1, 3);
        assert!(d.pendant_paths.is_empty());
        assert_eq!(d.tree_edges.len(), 2);
    }

    #[test]
    fn junctions_and_pendants() {
        let g = two_triangles_and_path();
        let d = BlockDecomposition::new(&g);
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.pendant_paths, vec![vec![7, 8]]);
        assert_eq!(d.branches, vec![vec![2, 3, 4, 5]]);
        assert!(d.junctions.is_empty());
        // star: a junction with three pendant paths
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let d = BlockDecomposition::new(&star);
        assert_eq!(d.junctions, vec![0]);
        assert_eq!(d.pendant_paths.len(), 3);
        assert_eq!(d.tree_edges.len(), 3);
    }

    #[test]
    fn path_graph_is_one_pendant_chain() {
        let d = BlockDecomposition::new(&Graph::path(5));
        assert_eq!(d.pendant_paths, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(d.articulation_points, vec![1, 2, 3]);
        assert!(d.cut_vertices.is_empty());
    }

    #[test]
    fn empty_graph() {
        let d = BlockDecomposition::new(&Graph::new(0));
        assert!(d.blocks.is_empty() && d.tree_nodes.is_empty());
    }
}
