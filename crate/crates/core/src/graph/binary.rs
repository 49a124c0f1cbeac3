//! The 16-bit little-endian word format used by the benchmark datasets.
//!
//! Layout: `n`, then `n` vertex labels (only when labels are on disk), then
//! for each vertex `u` a count `d_u` followed by `d_u` records of
//! `target [edge_label]`. Undirected edges appear in both endpoint lists.

use super::{Graph, GraphBuilder, GraphError, Label, Vertex};

/// How to read a binary file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryOptions {
    pub directed: bool,
    /// Keep vertex and edge labels. When false every label reads as 0.
    pub labelled: bool,
    /// Whether label words are physically present. Normally equal to
    /// `labelled`; set it alone to read a labelled file as unlabelled.
    pub labels_on_disk: bool,
}

impl BinaryOptions {
    pub fn new(directed: bool, labelled: bool) -> Self {
        BinaryOptions { directed, labelled, labels_on_disk: labelled }
    }
}

struct Words<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Words<'_> {
    fn next(&mut self) -> Result<u16, GraphError> {
        match self.bytes.get(self.pos..self.pos + 2) {
            Some(b) => {
                self.pos += 2;
                Ok(u16::from_le_bytes([b[0], b[1]]))
            }
            None => Err(GraphError::Truncated { offset: self.pos }),
        }
    }
}

pub fn parse_binary_graph(bytes: &[u8], directed: bool, labelled: bool) -> Result<Graph, GraphError> {
    parse_binary_graph_with(bytes, BinaryOptions::new(directed, labelled))
}

pub fn parse_binary_graph_with(bytes: &[u8], opts: BinaryOptions) -> Result<Graph, GraphError> {
    let mut words = Words { bytes, pos: 0 };
    let n = words.next()? as usize;
    let labelled = opts.labelled && opts.labels_on_disk;
    let mut b = GraphBuilder::new(n, opts.directed, labelled);
    if opts.labels_on_disk {
        for v in 0..n {
            let l = words.next()?;
            b.set_label(v as Vertex, l);
        }
    }
    // listed[u * n + v]: u's record list already named v
    let mut listed = vec![false; n * n];
    for u in 0..n {
        let d = words.next()? as usize;
        for _ in 0..d {
            let offset = words.pos;
            let v = words.next()? as usize;
            let label: Label = if opts.labels_on_disk { words.next()? } else { 0 };
            if v >= n {
                return Err(GraphError::VertexOutOfRange { offset, vertex: v, n });
            }
            if v == u {
                return Err(GraphError::SelfLoop { offset, v });
            }
            if listed[u * n + v] {
                return Err(GraphError::DuplicateEdge { offset, u, v });
            }
            listed[u * n + v] = true;
            let (uu, vv) = (u as Vertex, v as Vertex);
            if !opts.directed && listed[v * n + u] {
                // second half of an undirected edge
                if labelled && b.arc_label(vv, uu) != label {
                    return Err(GraphError::ConflictingEdge { offset, u, v });
                }
                continue;
            }
            b.add_edge(uu, vv, label);
        }
    }
    if words.pos != bytes.len() {
        return Err(GraphError::TrailingBytes { offset: words.pos, extra: bytes.len() - words.pos });
    }
    Ok(b.build())
}

/// Writes `g` in the layout [`parse_binary_graph`] reads back with the same
/// `directed` / `labelled` flags as the graph itself.
pub fn serialize_binary_graph(g: &Graph) -> Result<Vec<u8>, GraphError> {
    let n = g.n();
    if n > u16::MAX as usize {
        return Err(GraphError::TooLarge { n });
    }
    let mut out = Vec::with_capacity(2 * (1 + 2 * n));
    let mut put = |w: u16| out.extend_from_slice(&w.to_le_bytes());
    put(n as u16);
    if g.is_labelled() {
        for &l in g.vertex_labels() {
            put(l);
        }
    }
    for u in 0..n as Vertex {
        let arcs: Vec<(Vertex, Label)> = g.out_arcs(u).collect();
        put(arcs.len() as u16);
        for (v, l) in arcs {
            put(v as u16);
            if g.is_labelled() {
                put(l);
            }
        }
    }
    Ok(out)
}
