//! Canonical labelling of vertex-colored graphs by individualization and
//! refinement, with emission of proofs that the result is canonical.

pub mod batch;
pub mod coloring;
pub mod dimacs;
pub mod emitter;
pub mod error;
pub mod graph;
pub mod invariant;
pub mod perm;
pub mod proof;
pub mod refine;
pub mod search;

pub use coloring::Coloring;
pub use error::DomainError;
pub use graph::{ColoredGraph, Graph, Vertex};
pub use perm::Permutation;
