//! Seeded random graphs for fixtures and randomized tests.

use mcs_core::graph::{Graph, GraphBuilder, Label, Vertex};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphSpec {
    pub n: usize,
    /// Probability of each edge (each arc when directed).
    pub density: f64,
    pub directed: bool,
    /// Vertex and edge labels are drawn from `0..labels`; 1 means unlabelled.
    pub labels: Label,
    /// Each of the `n` core vertices gets this many pendant leaves, drawn
    /// uniformly from the inclusive range.
    pub leaves: (usize, usize),
}

impl GraphSpec {
    pub fn new(n: usize, density: f64) -> Self {
        GraphSpec { n, density, directed: false, labels: 1, leaves: (0, 0) }
    }

    pub fn directed(mut self, directed: bool) -> Self {
        self.directed = directed;
        self
    }

    pub fn labels(mut self, labels: Label) -> Self {
        self.labels = labels.max(1);
        self
    }

    pub fn leaves(mut self, min: usize, max: usize) -> Self {
        self.leaves = (min, max.max(min));
        self
    }
}

pub fn random_graph<R: Rng>(rng: &mut R, spec: &GraphSpec) -> Graph {
    let labelled = spec.labels > 1;
    let mut pendant = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        pendant.push(rng.gen_range(spec.leaves.0..=spec.leaves.1));
    }
    let total = spec.n + pendant.iter().sum::<usize>();
    let mut b = GraphBuilder::new(total, spec.directed, labelled);
    let label = |rng: &mut R| if labelled { rng.gen_range(0..spec.labels) } else { 0 };
    for v in 0..total as Vertex {
        let l = label(rng);
        b.set_label(v, l);
    }
    for u in 0..spec.n as Vertex {
        for v in 0..spec.n as Vertex {
            if u == v || (!spec.directed && v < u) {
                continue;
            }
            if rng.gen_bool(spec.density) {
                let l = label(rng);
                b.add_edge(u, v, l);
            }
        }
    }
    let mut next = spec.n as Vertex;
    for (u, &k) in pendant.iter().enumerate() {
        for _ in 0..k {
            let l = label(rng);
            if spec.directed && rng.gen_bool(0.5) {
                b.add_edge(next, u as Vertex, l);
            } else {
                b.add_edge(u as Vertex, next, l);
            }
            next += 1;
        }
    }
    b.build()
}
