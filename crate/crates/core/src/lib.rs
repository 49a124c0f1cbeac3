//! Exact branch and bound for the maximum common induced subgraph problem
//! and its connected variant.
//!
//! The solver keeps the unmatched vertices as a list of label classes
//! ([`partition::BidomainList`]), bounds each node by the per-class minimum
//! of the two sides, and branches with one of four pair-selection policies
//! ([`policy::Heuristic`]). Leaf union matching ([`lum`]) optionally pairs
//! up pendant leaves together with their matched parents.
//!
//! ```
//! use mcs_core::graph::Graph;
//! use mcs_core::policy::{Heuristic, PolicyVariant};
//! use mcs_core::search::{solve, SolverConfig};
//!
//! let triangle = Graph::from_edges(3, false, &[(0, 1), (1, 2), (0, 2)]);
//! let path = Graph::from_edges(3, false, &[(0, 1), (1, 2)]);
//! let config = SolverConfig::new(PolicyVariant::new(Heuristic::Lsm, true));
//! let (solution, stats) = solve(&triangle, &path, &config).unwrap();
//! assert_eq!(solution.len(), 2);
//! assert!(stats.completed);
//! ```

pub mod fixtures;
pub mod graph;
pub mod lum;
pub mod partition;
pub mod policy;
pub mod search;
pub mod verify;

pub use graph::{Graph, Vertex};
pub use search::{solve, Solution, SolverConfig};
