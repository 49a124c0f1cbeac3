//! Independent checks: a solution verifier and an exhaustive oracle.
//!
//! Nothing here touches bidomains or bounds. The oracle is deliberately
//! naive and only meant for graphs of a handful of vertices.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("pair {index} names vertex {vertex} of graph {graph}, which has {n} vertices")]
    OutOfRange { index: usize, graph: u8, vertex: Vertex, n: usize },
    #[error("oracle capped at {cap} vertices, first graph has {n}")]
    CapExceeded { cap: usize, n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    NotInjective,
    AdjacencyMismatch,
    DirectionMismatch,
    LabelMismatch,
    EdgeLabelMismatch,
    NotConnected,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::NotInjective => "not-injective",
            ViolationKind::AdjacencyMismatch => "adjacency-mismatch",
            ViolationKind::DirectionMismatch => "direction-mismatch",
            ViolationKind::LabelMismatch => "label-mismatch",
            ViolationKind::EdgeLabelMismatch => "edge-label-mismatch",
            ViolationKind::NotConnected => "not-connected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// The offending pairs: one for vertex-level problems, two for
    /// pairwise ones. For `NotConnected`, the first pair of each component
    /// other than the first.
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind)?;
        for (p, q) in &self.pairs {
            write!(f, " ({p},{q})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// How two matched pairs disagree, if they do.
fn pair_conflict(
    g0: &Graph,
    g1: &Graph,
    (p, q): (Vertex, Vertex),
    (p2, q2): (Vertex, Vertex),
) -> Option<ViolationKind> {
    let (a_out, a_in) = (g0.arc(p, p2), g0.arc(p2, p));
    let (b_out, b_in) = (g1.arc(q, q2), g1.arc(q2, q));
    let touch_a = a_out.is_some() || a_in.is_some();
    let touch_b = b_out.is_some() || b_in.is_some();
    if touch_a != touch_b {
        return Some(ViolationKind::AdjacencyMismatch);
    }
    if a_out.is_some() != b_out.is_some() || a_in.is_some() != b_in.is_some() {
        return Some(ViolationKind::DirectionMismatch);
    }
    if a_out != b_out || a_in != b_in {
        return Some(ViolationKind::EdgeLabelMismatch);
    }
    None
}

fn is_connected(g: &Graph, vs: &[Vertex]) -> bool {
    component_roots(g, vs).len() <= 1
}

/// Index (into `vs`) of the first member of each connected component of the
/// subgraph induced by `vs`.
fn component_roots(g: &Graph, vs: &[Vertex]) -> Vec<usize> {
    let mut seen = vec![false; vs.len()];
    let mut roots = Vec::new();
    for start in 0..vs.len() {
        if seen[start] {
            continue;
        }
        roots.push(start);
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..vs.len() {
                if !seen[j] && g.adjacent(vs[i], vs[j]) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    roots
}

pub fn verify_solution(
    g0: &Graph,
    g1: &Graph,
    pairs: &[(Vertex, Vertex)],
    connected: bool,
) -> Result<VerifyReport, VerifyError> {
    for (index, &(p, q)) in pairs.iter().enumerate() {
        if p as usize >= g0.n() {
            return Err(VerifyError::OutOfRange { index, graph: 0, vertex: p, n: g0.n() });
        }
        if q as usize >= g1.n() {
            return Err(VerifyError::OutOfRange { index, graph: 1, vertex: q, n: g1.n() });
        }
    }
    let mut violations = Vec::new();
    for (i, &a) in pairs.iter().enumerate() {
        if g0.label(a.0) != g1.label(a.1) {
            violations.push(Violation { kind: ViolationKind::LabelMismatch, pairs: vec![a] });
        }
        for &b in &pairs[i + 1..] {
            if a.0 == b.0 || a.1 == b.1 {
                violations.push(Violation { kind: ViolationKind::NotInjective, pairs: vec![a, b] });
                continue;
            }
            if let Some(kind) = pair_conflict(g0, g1, a, b) {
                violations.push(Violation { kind, pairs: vec![a, b] });
            }
        }
    }
    if connected {
        let left: Vec<Vertex> = pairs.iter().map(|&(p, _)| p).collect();
        let roots = component_roots(g0, &left);
        if roots.len() > 1 {
            violations.push(Violation {
                kind: ViolationKind::NotConnected,
                pairs: roots[1..].iter().map(|&i| pairs[i]).collect(),
            });
        }
    }
    Ok(VerifyReport { violations })
}

/// Default vertex cap of the exhaustive oracle.
pub const ORACLE_CAP: usize = 8;

pub fn brute_force_best(g0: &Graph, g1: &Graph, connected: bool) -> Result<usize, VerifyError> {
    brute_force_best_with_cap(g0, g1, connected, ORACLE_CAP)
}

pub fn brute_force_best_with_cap(g0: &Graph, g1: &Graph, connected: bool, cap: usize) -> Result<usize, VerifyError> {
    if g0.n() > cap {
        return Err(VerifyError::CapExceeded { cap, n: g0.n() });
    }
    let all0: Vec<Vertex> = (0..g0.n() as Vertex).collect();
    let all1: Vec<Vertex> = (0..g1.n() as Vertex).collect();
    Ok(brute_force_extension(g0, g1, &[], &all0, &all1, connected))
}

/// Largest total size of a common induced subgraph that contains the
/// `fixed` pairs and otherwise only uses vertices from `free0` / `free1`.
/// Returns 0 if `fixed` itself is invalid. Enumerates subsets of `free0` by
/// decreasing size and searches for an injection of each.
pub fn brute_force_extension(
    g0: &Graph,
    g1: &Graph,
    fixed: &[(Vertex, Vertex)],
    free0: &[Vertex],
    free1: &[Vertex],
    connected: bool,
) -> usize {
    if !verify_solution(g0, g1, fixed, connected).is_ok_and(|r| r.is_valid()) {
        return 0;
    }
    assert!(free0.len() < 32, "oracle only handles tiny graphs");
    let fixed0: Vec<Vertex> = fixed.iter().map(|&(p, _)| p).collect();
    let mut masks: Vec<u32> = (0..1u32 << free0.len()).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    for mask in masks {
        let chosen: Vec<Vertex> = (0..free0.len()).filter(|&i| mask >> i & 1 == 1).map(|i| free0[i]).collect();
        if chosen.len() > free1.len() {
            continue;
        }
        if connected {
            let mut all = fixed0.clone();
            all.extend_from_slice(&chosen);
            if !is_connected(g0, &all) {
                continue;
            }
        }
        let mut pairs = fixed.to_vec();
        let mut used = vec![false; free1.len()];
        if assign(g0, g1, &chosen, free1, &mut used, &mut pairs) {
            return pairs.len();
        }
    }
    fixed.len()
}

fn assign(
    g0: &Graph,
    g1: &Graph,
    chosen: &[Vertex],
    free1: &[Vertex],
    used: &mut [bool],
    pairs: &mut Vec<(Vertex, Vertex)>,
) -> bool {
    let Some((&v, rest)) = chosen.split_first() else { return true };
    for (j, &w) in free1.iter().enumerate() {
        if used[j] || g0.label(v) != g1.label(w) {
            continue;
        }
        if pairs.iter().any(|&(a, b)| b == w || pair_conflict(g0, g1, (a, b), (v, w)).is_some()) {
            continue;
        }
        used[j] = true;
        pairs.push((v, w));
        if assign(g0, g1, rest, free1, used, pairs) {
            return true;
        }
        pairs.pop();
        used[j] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_g0, example_g1, A, B, C};
    use crate::graph::GraphBuilder;

    fn k3() -> Graph {
        Graph::from_edges(3, false, &[(0, 1), (1, 2), (0, 2)])
    }

    fn p3() -> Graph {
        Graph::from_edges(3, false, &[(0, 1), (1, 2)])
    }

    #[test]
    fn empty_solution_is_valid() {
        assert!(verify_solution(&k3(), &p3(), &[], true).unwrap().is_valid());
    }

    #[test]
    fn example_partial_solution_is_valid() {
        let r = verify_solution(&example_g0(), &example_g1(), &[(0, A), (1, B), (2, C)], true).unwrap();
        assert!(r.is_valid(), "{:?}", r);
    }

    #[test]
    fn adjacency_mismatch() {
        let r = verify_solution(&k3(), &p3(), &[(0, 0), (1, 2)], false).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::AdjacencyMismatch);
        assert_eq!(r.violations[0].pairs, vec![(0, 0), (1, 2)]);
    }

    #[test]
    fn injectivity_and_range() {
        let r = verify_solution(&k3(), &k3(), &[(0, 0), (1, 0)], false).unwrap();
        assert_eq!(r.violations[0].kind, ViolationKind::NotInjective);
        assert_eq!(
            verify_solution(&k3(), &k3(), &[(0, 3)], false),
            Err(VerifyError::OutOfRange { index: 0, graph: 1, vertex: 3, n: 3 })
        );
    }

    #[test]
    fn direction_and_labels() {
        let a = Graph::from_edges(2, true, &[(0, 1)]);
        let r = verify_solution(&a, &a, &[(0, 1), (1, 0)], false).unwrap();
        assert_eq!(r.violations[0].kind, ViolationKind::DirectionMismatch);

        let mut b0 = GraphBuilder::new(2, false, true);
        b0.add_edge(0, 1, 1);
        b0.set_label(0, 4);
        let mut b1 = GraphBuilder::new(2, false, true);
        b1.add_edge(0, 1, 2);
        b1.set_label(0, 4);
        let (x, y) = (b0.build(), b1.build());
        let r = verify_solution(&x, &y, &[(0, 0), (1, 1)], false).unwrap();
        assert_eq!(r.violations[0].kind, ViolationKind::EdgeLabelMismatch);
        let r = verify_solution(&x, &y, &[(1, 0)], false).unwrap();
        assert_eq!(r.violations[0].kind, ViolationKind::LabelMismatch);
    }

    #[test]
    fn disconnected_solution() {
        let g = Graph::from_edges(4, false, &[(0, 1), (2, 3)]);
        let r = verify_solution(&g, &g, &[(0, 0), (1, 1), (2, 2)], true).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::NotConnected);
        assert!(verify_solution(&g, &g, &[(0, 0), (1, 1), (2, 2)], false).unwrap().is_valid());
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(brute_force_best(&k3(), &k3(), false), Ok(3));
        assert_eq!(brute_force_best(&k3(), &p3(), false), Ok(2));
        let p5 = Graph::from_edges(5, false, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let two_edges = Graph::from_edges(4, false, &[(0, 1), (2, 3)]);
        assert_eq!(brute_force_best(&p5, &two_edges, true), Ok(2));
        assert_eq!(brute_force_best(&p5, &two_edges, false), Ok(4));
        let big = Graph::from_edges(9, false, &[]);
        assert_eq!(brute_force_best(&big, &k3(), false), Err(VerifyError::CapExceeded { cap: 8, n: 9 }));
    }

    #[test]
    fn oracle_extension_respects_fixed_pairs() {
        // with a K3 vertex on the P3 centre only one more pair fits
        assert_eq!(brute_force_extension(&k3(), &p3(), &[(0, 1)], &[1, 2], &[0, 2], false), 2);
        // an invalid fixed set yields 0
        assert_eq!(brute_force_extension(&k3(), &k3(), &[(0, 0), (1, 0)], &[2], &[1, 2], false), 0);
    }
}
