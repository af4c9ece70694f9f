//! L(2,1)-labelings of outerplanar graphs with maximum degree 3.
//!
//! [`construct::label_graph`] labels any such graph with labels in `[0, 6]`.
//! [`solver::lambda_exact`] computes the exact λ-number of small graphs, and
//! [`generators`] builds test families.

pub mod blocks;
pub mod construct;
pub mod dot;
pub mod embedding;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod labeling;
pub mod oracle;
pub mod selftest;
pub mod solver;

pub use construct::{label_graph, LabelError, LabelOutcome, Mode, Strategy};
pub use graph::Graph;
pub use labeling::{verify, Labeling};
