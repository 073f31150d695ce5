//! Left/right path lattices on embedded planar graphs.
//!
//! The crate is layered bottom-up:
//!
//! * [`embed`]: darts, rotation systems, faces, the dual, cuts.
//! * [`circulation`]: edge vectors, face potentials, subgraph restriction.
//! * [`lattice`]: the left/right order on simple s-t paths with meet and join.
//! * [`flow`]: uppermost-path and dual shortest-path max flow, weighted packing.
//! * [`verify`]: brute-force oracles, fixture graphs and the order-existence search.

pub mod circulation;
pub mod embed;
pub mod flow;
pub mod lattice;
pub mod verify;

pub use circulation::{CirculationError, EdgeVector, FacePotential, Subgraph};
pub use embed::{Dart, EmbedError, FaceId, PlaneGraph};
pub use flow::{CapacityMap, FlowError, FlowState, PathPacking, WeightTable};
pub use lattice::{Comparison, LatticeError, MeetJoinResult, PathSeq};
pub use verify::VerifyError;

/// Any error raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Parse(#[from] embed::ParseError),
    #[error(transparent)]
    Circulation(#[from] CirculationError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}
