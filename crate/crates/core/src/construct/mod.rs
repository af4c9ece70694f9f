//! The constructive span-6 labeler.

pub mod certified;
pub mod ops;
pub mod cases;
pub mod pipeline;
pub mod search;

pub use ops::{
    attach_block, extend_over_face, fill_branch, seed_face_labeling, synthesize_prefix, ExtendError, Mode,
    Strategy, Telemetry,
};
pub use pipeline::{label_graph, LabelError, LabelOutcome};
