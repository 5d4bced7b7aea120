//! Minimum-weight efficient dominating sets on P6-free graphs.
//!
//! The solver branches on the vertices around a minimum-degree vertex, reduces each
//! branch through distance levels and join/component reductions to unipolar
//! instances, and solves those with the overtake-dag anchor search. Every solution
//! it returns is re-verified on the input graph; the brute-force exact-cover
//! [`oracle`] serves as an independent reference.

pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod recognition;
pub mod reduction;
pub mod solver;
pub mod unipolar;
pub mod vertex_set;
pub mod weight;

pub use error::{ClassViolation, GraphError, SolveError};
pub use graph::{DistanceLevels, Graph, SetAdjacency};
pub use instance::{verify_ed, Instance, Solution, Verdict};
pub use solver::{solve_wed, SolveStatus, SolverOptions, SolverReport, SolverStats};
pub use vertex_set::{Vertex, VertexSet};
pub use weight::{Weight, WeightMap};
