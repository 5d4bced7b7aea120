use thiserror::Error;

use crate::vertex_set::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {0} is a member of the set it is compared against")]
    VertexInSet(Vertex),
    #[error("weight map has {weights} entries but the graph has {n} vertices")]
    WeightCount { weights: usize, n: usize },
    #[error("the two vertex sets do not partition the vertex set")]
    NotAPartition,
}

/// The input left the graph class the reduction pipeline is proven for.
///
/// Each variant names a structural fact that holds on every P6-free graph; observing its
/// failure proves the input contains an induced P6.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassViolation {
    #[error("vertex {vertex} lies at distance {distance} from root {root}")]
    DistanceLevel {
        root: Vertex,
        vertex: Vertex,
        distance: usize,
    },
    #[error("contact sets of {b1} and {b2} on non-clique components are incomparable")]
    IncomparableContacts { b1: Vertex, b2: Vertex },
    #[error("the overtake relation contains a directed cycle through {0}")]
    OvertakeCycle(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("input is outside the supported graph class: {0}")]
    ClassViolation(#[from] ClassViolation),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
