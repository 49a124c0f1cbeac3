//! Leaf vertex union matching.
//!
//! Once `(p, q)` is matched, unmatched leaves of `p` and of `q` sit in one
//! label class for the rest of that branch and never split it again, so
//! pairing as many of them as possible right away cannot lose an optimum.
//! In directed or labelled graphs only leaves with equal attributes pair up.

use thiserror::Error;

use crate::graph::{Graph, Label, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LumError {
    #[error("vertex {vertex} has degree {degree}, not a leaf")]
    NotALeaf { vertex: Vertex, degree: u32 },
}

/// Orientation of a leaf's only arc, seen from the leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Undirected,
    /// The leaf is the head of the arc (`+`).
    Head,
    /// The leaf is the tail of the arc (`-`).
    Tail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafAttribute {
    pub vertex_label: Label,
    pub edge_label: Label,
    pub direction: Direction,
}

fn attribute_towards(g: &Graph, parent: Vertex, leaf: Vertex) -> LeafAttribute {
    let (edge_label, direction) = match (g.arc(parent, leaf), g.arc(leaf, parent)) {
        (Some(l), _) if !g.is_directed() => (l, Direction::Undirected),
        (Some(l), None) => (l, Direction::Head),
        (None, Some(l)) => (l, Direction::Tail),
        _ => unreachable!("a leaf has exactly one arc to its parent"),
    };
    LeafAttribute { vertex_label: g.label(leaf), edge_label, direction }
}

pub fn leaf_attribute(g: &Graph, leaf: Vertex) -> Result<LeafAttribute, LumError> {
    let degree = g.degree(leaf);
    if degree != 1 {
        return Err(LumError::NotALeaf { vertex: leaf, degree });
    }
    let parent = g.neighbours(leaf).next().expect("degree-1 vertex has a neighbour");
    Ok(attribute_towards(g, parent, leaf))
}

/// Pairs available leaves of `p` with available leaves of `q`, group by
/// group of equal attribute, `min(c0, c1)` pairs per group, ascending vertex
/// index on both sides.
pub fn union_match_leaves(
    g0: &Graph,
    g1: &Graph,
    p: Vertex,
    q: Vertex,
    available0: impl Fn(Vertex) -> bool,
    available1: impl Fn(Vertex) -> bool,
) -> Vec<(Vertex, Vertex)> {
    let (l0, l1) = (g0.leaves(p), g1.leaves(q));
    if l0.is_empty() || l1.is_empty() {
        return Vec::new();
    }
    let mut a: Vec<(LeafAttribute, Vertex)> =
        l0.iter().filter(|&&x| available0(x)).map(|&x| (attribute_towards(g0, p, x), x)).collect();
    let mut b: Vec<(LeafAttribute, Vertex)> =
        l1.iter().filter(|&&y| available1(y)).map(|&y| (attribute_towards(g1, q, y), y)).collect();
    a.sort_unstable();
    b.sort_unstable();

    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push((a[i].1, b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out
}
