//! Immutable graph model shared by every solver run.
//!
//! Vertices are dense `0..n` indices in file order. Adjacency is a dense
//! `n * n` matrix: cell `(u, v)` is set iff the arc `u -> v` exists. For
//! undirected graphs the matrix is symmetric. Unlabelled graphs carry label
//! `0` on every vertex and edge, so the search has a single code path.

mod binary;
mod text;

pub use binary::{parse_binary_graph, parse_binary_graph_with, serialize_binary_graph, BinaryOptions};
pub use text::{parse_text_graph, to_text};

use thiserror::Error;

/// Vertex index inside one graph.
pub type Vertex = u32;

/// Vertex or edge label. The benchmark format stores labels as 16-bit words.
pub type Label = u16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("truncated input at byte offset {offset}")]
    Truncated { offset: usize },
    #[error("vertex {vertex} out of range (n = {n}) at byte offset {offset}")]
    VertexOutOfRange { offset: usize, vertex: usize, n: usize },
    #[error("duplicate edge {u} -> {v} at byte offset {offset}")]
    DuplicateEdge { offset: usize, u: usize, v: usize },
    #[error("self-loop on vertex {v} at byte offset {offset}")]
    SelfLoop { offset: usize, v: usize },
    #[error("conflicting labels for undirected edge {u} -- {v} at byte offset {offset}")]
    ConflictingEdge { offset: usize, u: usize, v: usize },
    #[error("{extra} trailing bytes after graph data at byte offset {offset}")]
    TrailingBytes { offset: usize, extra: usize },
    #[error("graph has {n} vertices, binary format holds at most 65535")]
    TooLarge { n: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// A simple graph, optionally directed and labelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    labelled: bool,
    vertex_labels: Vec<Label>,
    adj: Vec<bool>,
    /// Per-cell edge label, only allocated for labelled graphs.
    edge_labels: Option<Vec<Label>>,
    degrees: Vec<u32>,
    leaves: Vec<Vec<Vertex>>,
    binary_patterns: bool,
}

/// Incrementally assembles a [`Graph`]. Used by the parsers and by tests.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    directed: bool,
    labelled: bool,
    vertex_labels: Vec<Label>,
    adj: Vec<bool>,
    edge_labels: Vec<Label>,
}

impl GraphBuilder {
    pub fn new(n: usize, directed: bool, labelled: bool) -> Self {
        GraphBuilder {
            n,
            directed,
            labelled,
            vertex_labels: vec![0; n],
            adj: vec![false; n * n],
            edge_labels: if labelled { vec![0; n * n] } else { Vec::new() },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets a vertex label. Ignored for unlabelled graphs.
    pub fn set_label(&mut self, v: Vertex, label: Label) {
        if self.labelled {
            self.vertex_labels[v as usize] = label;
        }
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize * self.n + v as usize]
    }

    pub fn arc_label(&self, u: Vertex, v: Vertex) -> Label {
        if self.labelled {
            self.edge_labels[u as usize * self.n + v as usize]
        } else {
            0
        }
    }

    /// Adds the edge `u -> v` (and `v -> u` when undirected). The label is
    /// dropped for unlabelled graphs. Callers check for duplicates and loops.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, label: Label) {
        let (u, v) = (u as usize, v as usize);
        self.adj[u * self.n + v] = true;
        if !self.directed {
            self.adj[v * self.n + u] = true;
        }
        if self.labelled {
            self.edge_labels[u * self.n + v] = label;
            if !self.directed {
                self.edge_labels[v * self.n + u] = label;
            }
        }
    }

    pub fn build(self) -> Graph {
        let n = self.n;
        let mut degrees = vec![0u32; n];
        for u in 0..n {
            for v in 0..n {
                if self.adj[u * n + v] {
                    degrees[u] += 1;
                    if self.directed {
                        degrees[v] += 1;
                    }
                }
            }
        }
        let mut leaves = vec![Vec::new(); n];
        for (w, &d) in degrees.iter().enumerate() {
            if d != 1 {
                continue;
            }
            // degree 1 means exactly one incident arc, so exactly one neighbour
            let u =
                (0..n).find(|&u| self.adj[u * n + w] || self.adj[w * n + u]).expect("degree-1 vertex has a neighbour");
            leaves[u].push(w as Vertex);
        }
        let binary_patterns = !self.directed && self.edge_labels.iter().all(|&l| l == 0);
        Graph {
            n,
            binary_patterns,
            directed: self.directed,
            labelled: self.labelled,
            vertex_labels: self.vertex_labels,
            adj: self.adj,
            edge_labels: self.labelled.then_some(self.edge_labels),
            degrees,
            leaves,
        }
    }
}

impl Graph {
    /// Convenience constructor from an edge list with default labels.
    pub fn from_edges(n: usize, directed: bool, edges: &[(Vertex, Vertex)]) -> Graph {
        let mut b = GraphBuilder::new(n, directed, false);
        for &(u, v) in edges {
            b.add_edge(u, v, 0);
        }
        b.build()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_labelled(&self) -> bool {
        self.labelled
    }

    #[inline]
    pub fn label(&self, v: Vertex) -> Label {
        self.vertex_labels[v as usize]
    }

    pub fn vertex_labels(&self) -> &[Label] {
        &self.vertex_labels
    }

    /// True iff the arc `u -> v` exists (for undirected graphs, the edge).
    #[inline]
    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize * self.n + v as usize]
    }

    /// True iff `u` and `v` are joined in either direction.
    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// The edge record of cell `(u, v)`: `None` when absent, else its label.
    #[inline]
    pub fn arc(&self, u: Vertex, v: Vertex) -> Option<Label> {
        let i = u as usize * self.n + v as usize;
        if !self.adj[i] {
            return None;
        }
        Some(self.edge_labels.as_ref().map_or(0, |l| l[i]))
    }

    /// Compact code of cell `(u, v)`: 0 when absent, else `label + 1`.
    #[inline]
    pub fn arc_code(&self, u: Vertex, v: Vertex) -> u32 {
        match self.arc(u, v) {
            None => 0,
            Some(l) => l as u32 + 1,
        }
    }

    /// Adjacency pattern of `v` relative to `center`, as used to split
    /// label classes. Zero iff `v` is not adjacent to `center`.
    #[inline]
    pub fn pattern(&self, center: Vertex, v: Vertex) -> u64 {
        let out = self.arc_code(center, v) as u64;
        if self.directed {
            out | (self.arc_code(v, center) as u64) << 32
        } else {
            out
        }
    }

    /// Whether every edge carries the default label and the graph is
    /// undirected, so adjacency patterns are just 0/1.
    #[inline]
    pub fn has_binary_patterns(&self) -> bool {
        self.binary_patterns
    }

    /// Total degree: neighbour count, or in-degree + out-degree if directed.
    #[inline]
    pub fn degree(&self, v: Vertex) -> u32 {
        self.degrees[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Leaf neighbours of `u`: vertices of total degree 1 attached to `u`.
    #[inline]
    pub fn leaves(&self, u: Vertex) -> &[Vertex] {
        &self.leaves[u as usize]
    }

    /// Vertices joined to `v` in either direction, ascending.
    pub fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n as Vertex).filter(move |&u| u != v && self.adjacent(u, v))
    }

    /// Out-arcs of `u` with their labels, ascending by target.
    pub fn out_arcs(&self, u: Vertex) -> impl Iterator<Item = (Vertex, Label)> + '_ {
        (0..self.n as Vertex).filter_map(move |v| self.arc(u, v).map(|l| (v, l)))
    }

    /// Number of edges (arcs when directed).
    pub fn edge_count(&self) -> usize {
        let arcs = self.adj.iter().filter(|&&b| b).count();
        if self.directed {
            arcs
        } else {
            arcs / 2
        }
    }
}
