#![allow(dead_code)]

use mcs_core::graph::{Graph, GraphBuilder, Label, Vertex};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64, directed: bool, labels: Label) -> Graph {
    let labelled = labels > 1;
    let mut b = GraphBuilder::new(n, directed, labelled);
    if labelled {
        for v in 0..n as Vertex {
            b.set_label(v, rng.gen_range(0..labels));
        }
    }
    for u in 0..n as Vertex {
        for v in 0..n as Vertex {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.gen_bool(density) {
                let label = if labelled { rng.gen_range(0..labels) } else { 0 };
                b.add_edge(u, v, label);
            }
        }
    }
    b.build()
}

pub type LabelString = (Label, Vec<(Option<Label>, Option<Label>)>);

/// The relation of `v` to each matched vertex, in match order, as the
/// sequence of `(arc to, arc from)` label options.
pub fn label_string(g: &Graph, v: Vertex, matched: &[Vertex]) -> LabelString {
    (g.label(v), matched.iter().map(|&m| (g.arc(m, v), g.arc(v, m))).collect())
}
