//! Dart-based embedded planar graphs.
//!
//! A [`PlaneGraph`] is a connected multigraph plus a rotation system (the
//! counterclockwise order of darts leaving each vertex). Faces, the dual and
//! cuts are all derived from the rotation; nothing geometric is stored.

mod cut;
mod dart;
mod format;
mod graph;
mod straight;

pub use cut::{cycle_cut_duality_check, is_simple_cut, order_cycle, CutCertificate, DualGraph};
pub use dart::{format_darts, parse_darts, Dart, DartParseError, Sign};
pub use format::{build_graph, EdgeSpec, GraphSpec, ParseError};
pub use graph::{Face, FaceId, PlaneGraph};
pub use straight::straight_line_graph;

/// Errors raised while validating an embedding.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbedError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("source and sink must differ")]
    SourceIsSink,
    #[error("no rotation given for vertex {0}")]
    MissingRotation(usize),
    #[error("rotation of vertex {vertex} is missing dart {dart}")]
    MissingRotationEntry { vertex: usize, dart: Dart },
    #[error("dart {dart} listed in the rotation of vertex {vertex} but does not leave it")]
    RotationMismatch { vertex: usize, dart: Dart },
    #[error("dart {dart} listed twice around vertex {vertex}")]
    DuplicateRotationEntry { vertex: usize, dart: Dart },
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("rotation system is not planar: |V| - |E| + |F| = {vertices} - {edges} + {faces} != 2")]
    EulerViolation { vertices: usize, edges: usize, faces: usize },
    #[error("sink is not incident to the infinite face")]
    OuterFaceNotIncidentToSink,
    #[error("darts do not form a simple cycle")]
    NotASimpleCycle,
}
