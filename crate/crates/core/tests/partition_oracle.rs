//! Random divide/remove/undo sequences checked against a partition
//! recomputed from scratch by grouping vertices on their full label strings.

mod common;

use std::collections::BTreeMap;

use common::{label_string, random_graph};
use mcs_core::graph::{Graph, Vertex};
use mcs_core::partition::BidomainList;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Class = (Vec<Vertex>, Vec<Vertex>, bool);

fn observed(list: &BidomainList) -> Vec<Class> {
    let mut out: Vec<Class> = list
        .iter()
        .map(|b| {
            let (mut l, mut r) = (b.left.to_vec(), b.right.to_vec());
            l.sort_unstable();
            r.sort_unstable();
            (l, r, b.adjacent)
        })
        .collect();
    out.sort();
    out
}

fn reference(g0: &Graph, g1: &Graph, matched: &[(Vertex, Vertex)], removed: &[Vertex]) -> Vec<Class> {
    let m0: Vec<Vertex> = matched.iter().map(|&(p, _)| p).collect();
    let m1: Vec<Vertex> = matched.iter().map(|&(_, q)| q).collect();
    let mut groups: BTreeMap<_, (Vec<Vertex>, Vec<Vertex>)> = BTreeMap::new();
    for v in 0..g0.n() as Vertex {
        if !m0.contains(&v) && !removed.contains(&v) {
            groups.entry(label_string(g0, v, &m0)).or_default().0.push(v);
        }
    }
    for w in 0..g1.n() as Vertex {
        if !m1.contains(&w) {
            groups.entry(label_string(g1, w, &m1)).or_default().1.push(w);
        }
    }
    let mut out: Vec<Class> = groups
        .into_iter()
        .filter(|(_, (l, r))| !l.is_empty() && !r.is_empty())
        .map(|((_, s), (l, r))| (l, r, s.iter().any(|&(a, b)| a.is_some() || b.is_some())))
        .collect();
    out.sort();
    out
}

/// Removing a vertex hides it for good, but the reference regroups from
/// scratch. A class emptied on the left by removals stays gone in both,
/// so the two agree as long as removed vertices are left out.
fn run_sequence(seed: u64, directed: bool, labels: u16) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n0 = rng.gen_range(1..=6);
    let n1 = rng.gen_range(1..=6);
    let g0 = random_graph(&mut rng, n0, 0.45, directed, labels);
    let g1 = random_graph(&mut rng, n1, 0.45, directed, labels);
    let mut list = BidomainList::initial(&g0, &g1);
    let mut matched = Vec::new();
    let mut removed = Vec::new();
    let mut history: Vec<(Vec<Class>, usize, usize)> = Vec::new();
    assert_eq!(observed(&list), reference(&g0, &g1, &matched, &removed));

    for _ in 0..12 {
        let action = rng.gen_range(0..10);
        if action < 2 && !history.is_empty() {
            list.undo().unwrap();
            let (snap, m, r) = history.pop().unwrap();
            matched.truncate(m);
            removed.truncate(r);
            assert_eq!(observed(&list), snap, "undo restores the earlier state");
        } else if !list.is_empty() {
            let i = rng.gen_range(0..list.len());
            let b = list.get(i);
            let p = *b.left.choose(&mut rng).unwrap();
            history.push((observed(&list), matched.len(), removed.len()));
            if action < 4 {
                list.remove_left_vertex(p).unwrap();
                removed.push(p);
            } else {
                let q = *b.right.choose(&mut rng).unwrap();
                list.divide(&g0, &g1, p, q, &[]).unwrap();
                matched.push((p, q));
            }
        }
        assert_eq!(list.depth(), history.len());
        assert_eq!(observed(&list), reference(&g0, &g1, &matched, &removed), "seed {seed}");
        let bound: usize = list.iter().map(|b| b.left.len().min(b.right.len())).sum();
        assert_eq!(list.over_estimate(), bound);
    }
    while let Some((snap, _, _)) = history.pop() {
        list.undo().unwrap();
        assert_eq!(observed(&list), snap);
    }
    assert!(list.undo().is_err());
}

#[test]
fn undirected_unlabelled_sequences() {
    for seed in 0..400 {
        run_sequence(seed, false, 1);
    }
}

#[test]
fn directed_labelled_sequences() {
    for seed in 0..400 {
        run_sequence(seed, true, 3);
    }
}

#[test]
fn undirected_labelled_sequences() {
    for seed in 0..400 {
        run_sequence(seed, false, 2);
    }
}

#[test]
fn bound_never_increases_along_a_branch() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let g0 = random_graph(&mut rng, 7, 0.4, false, 1);
        let g1 = random_graph(&mut rng, 7, 0.4, false, 1);
        let mut list = BidomainList::initial(&g0, &g1);
        let mut last = list.over_estimate();
        while !list.is_empty() {
            let b = list.get(rng.gen_range(0..list.len()));
            let (p, q) = (b.left[0], b.right[0]);
            list.divide(&g0, &g1, p, q, &[]).unwrap();
            assert!(list.over_estimate() < last);
            last = list.over_estimate();
        }
    }
}
