//! The two small undirected graphs used throughout the tests.
//!
//! The first graph has vertices `1..=8`, stored as `0..=7`. The second has
//! vertices `a..=g`, stored as `0..=6` (see the letter constants). Edges
//! among vertices that stay unmatched in the worked example are free
//! choices; this instance adds `5-6`, `7-8`, `d-f` and `e-g`.

use crate::graph::{Graph, Vertex};

pub const A: Vertex = 0;
pub const B: Vertex = 1;
pub const C: Vertex = 2;
pub const D: Vertex = 3;
pub const E: Vertex = 4;
pub const F: Vertex = 5;
pub const G: Vertex = 6;

/// Edges of the first graph, 1-based as in the worked example.
pub const EXAMPLE_G0_EDGES: [(Vertex, Vertex); 11] =
    [(1, 2), (1, 3), (1, 4), (1, 7), (1, 8), (2, 3), (2, 4), (2, 5), (3, 5), (5, 6), (7, 8)];

pub const EXAMPLE_G1_EDGES: [(Vertex, Vertex); 11] =
    [(A, B), (A, C), (A, D), (A, E), (A, G), (B, C), (B, E), (B, G), (C, G), (D, F), (E, G)];

pub fn example_g0() -> Graph {
    let edges: Vec<_> = EXAMPLE_G0_EDGES.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Graph::from_edges(8, false, &edges)
}

pub fn example_g1() -> Graph {
    Graph::from_edges(7, false, &EXAMPLE_G1_EDGES)
}
