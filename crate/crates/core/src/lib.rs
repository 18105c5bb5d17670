//! Plane signed graphs: face structure, weak duals, co-Hamiltonian sequences
//! and the signs of Hamiltonian circles.

pub mod cli;
pub mod embedding;
pub mod face_dual;
pub mod fixtures;
pub mod format;
pub mod gen;
pub mod grids;
pub mod ham_search;
pub mod local_configs;
pub mod peeling;
pub mod sign;

pub use embedding::{
    Circle, EdgeId, EmbeddingError, EmbeddingInput, FaceId, FaceWalk, HalfEdgeId, OuterHint,
    PlaneSignedGraph, VertexId,
};
pub use sign::Sign;
