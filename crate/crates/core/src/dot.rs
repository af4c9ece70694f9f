//! Graphviz DOT output.

use std::fmt::Write as _;

use crate::graph::Graph;
use crate::labeling::Labeling;

/// An undirected DOT graph. Vertices show their label when one is given and
/// use `names` for their identifiers when provided.
pub fn to_dot(g: &Graph, labeling: Option<&Labeling>, names: Option<&[String]>) -> String {
    let id = |v: usize| names.map_or_else(|| v.to_string(), |n| n[v].clone());
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        match labeling.and_then(|f| f.labels.get(v).copied().flatten()) {
            Some(x) => writeln!(out, "  \"{}\" [xlabel=\"{x}\"];", id(v)).unwrap(),
            None => writeln!(out, "  \"{}\";", id(v)).unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  \"{}\" -- \"{}\";", id(u), id(v)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_path() {
        let f = Labeling::from_total(6, &[0, 2]);
        let dot = to_dot(&Graph::path(2), Some(&f), None);
        assert!(dot.contains("\"1\" [xlabel=\"2\"];"));
        assert!(dot.contains("\"0\" -- \"1\";"));
        let names = vec!["u".to_string(), "x1".to_string()];
        assert!(to_dot(&Graph::path(2), None, Some(&names)).contains("\"u\" -- \"x1\";"));
    }
}
