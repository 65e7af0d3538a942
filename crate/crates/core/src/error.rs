use thiserror::Error;

/// Construction or domain errors for graphs, colorings and permutations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("size mismatch: expected {expected} vertices, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("coloring is not surjective onto 0..{colors}")]
    NotSurjective { colors: usize },
    #[error("image sequence is not a bijection")]
    NotBijection,
    #[error("vertex {0} occurs twice in a sequence")]
    DuplicateVertex(u32),
    #[error("cell index {index} out of range for {cells} cells")]
    CellOutOfRange { index: usize, cells: usize },
    #[error("coloring is not discrete")]
    NotDiscrete,
}
