mod common;

use std::collections::BTreeMap;

use common::{label_string, random_graph};
use mcs_core::graph::{Graph, Vertex};
use mcs_core::partition::BidomainList;
use mcs_core::policy::{Heuristic, PolicyVariant, Thresholds};
use mcs_core::search::{solve, solve_with_observer, SearchObserver, SolverConfig};
use mcs_core::verify::{brute_force_best, brute_force_extension, verify_solution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn variants() -> Vec<PolicyVariant> {
    Heuristic::ALL.iter().flat_map(|&h| [PolicyVariant::new(h, false), PolicyVariant::new(h, true)]).collect()
}

fn instance(rng: &mut ChaCha8Rng, directed: bool) -> (Graph, Graph) {
    let n0 = rng.gen_range(1..=7);
    let n1 = rng.gen_range(1..=7);
    let d = rng.gen_range(0.15..0.6);
    let labels = if rng.gen_bool(0.3) { 2 } else { 1 };
    (random_graph(rng, n0, d, directed, labels), random_graph(rng, n1, d, directed, labels))
}

#[test]
fn matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        for directed in [false, true] {
            let (g0, g1) = instance(&mut rng, directed);
            for connected in [false, true] {
                let want = brute_force_best(&g0, &g1, connected).unwrap();
                for v in variants() {
                    let (s, stats) = solve(&g0, &g1, &SolverConfig::new(v).connected(connected)).unwrap();
                    assert!(stats.completed);
                    assert_eq!(s.len(), want, "{v} connected={connected}");
                    assert!(verify_solution(&g0, &g1, &s.pairs, connected).unwrap().is_valid());
                }
            }
        }
    }
}

#[test]
fn small_thresholds_stay_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let thresholds = Thresholds { short: 3, long: 5 };
    for _ in 0..80 {
        let (g0, g1) = instance(&mut rng, false);
        let want = brute_force_best(&g0, &g1, false).unwrap();
        for v in variants() {
            let (s, _) = solve(&g0, &g1, &SolverConfig::new(v).thresholds(thresholds)).unwrap();
            assert_eq!(s.len(), want);
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let g0 = random_graph(&mut rng, 14, 0.3, false, 1);
        let g1 = random_graph(&mut rng, 14, 0.3, false, 1);
        for v in variants() {
            let config = SolverConfig::new(v);
            let (a, sa) = solve(&g0, &g1, &config).unwrap();
            let (b, sb) = solve(&g0, &g1, &config).unwrap();
            assert_eq!(a, b);
            assert_eq!(sa.nodes_expanded, sb.nodes_expanded);
            assert_eq!(sa.lum_pairs_matched, sb.lum_pairs_matched);
        }
    }
}

#[test]
fn connected_never_beats_unconnected() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let g0 = random_graph(&mut rng, 10, 0.25, false, 1);
        let g1 = random_graph(&mut rng, 10, 0.25, false, 1);
        let v = PolicyVariant::with_default_lum(Heuristic::Lsm);
        let (c, _) = solve(&g0, &g1, &SolverConfig::new(v).connected(true)).unwrap();
        let (u, _) = solve(&g0, &g1, &SolverConfig::new(v)).unwrap();
        assert!(c.len() <= u.len());
        let (swapped, _) = solve(&g1, &g0, &SolverConfig::new(v)).unwrap();
        assert_eq!(swapped.len(), u.len());
    }
}

/// Checks every node: live vertices are unmatched, each bidomain holds
/// vertices sharing one label string, distinct bidomains have distinct
/// strings, and the bound admits the best extension the oracle finds.
struct Audit<'a> {
    g0: &'a Graph,
    g1: &'a Graph,
    connected: bool,
    nodes: u64,
    prunes: u64,
    improvements: Vec<usize>,
}

impl Audit<'_> {
    fn live(domains: &BidomainList) -> (Vec<Vertex>, Vec<Vertex>) {
        (domains.live_left().collect(), domains.live_right().collect())
    }
}

impl SearchObserver for Audit<'_> {
    fn on_node(&mut self, current: &[(Vertex, Vertex)], domains: &BidomainList, _best: usize) {
        self.nodes += 1;
        let m0: Vec<Vertex> = current.iter().map(|&(p, _)| p).collect();
        let m1: Vec<Vertex> = current.iter().map(|&(_, q)| q).collect();
        let mut seen = BTreeMap::new();
        for (i, b) in domains.iter().enumerate() {
            let key = label_string(self.g0, b.left[0], &m0);
            for &v in b.left {
                assert!(!m0.contains(&v));
                assert_eq!(label_string(self.g0, v, &m0), key);
            }
            for &w in b.right {
                assert!(!m1.contains(&w));
                assert_eq!(label_string(self.g1, w, &m1), key);
            }
            assert_eq!(b.adjacent, key.1.iter().any(|&(a, c)| a.is_some() || c.is_some()));
            assert!(seen.insert(key, i).is_none(), "two bidomains share a label string");
        }
        let (free0, free1) = Self::live(domains);
        let best = brute_force_extension(self.g0, self.g1, current, &free0, &free1, self.connected);
        assert!(current.len() + domains.over_estimate() >= best, "bound is not admissible");
    }

    fn on_prune(&mut self, current: &[(Vertex, Vertex)], domains: &BidomainList, best: usize) {
        self.prunes += 1;
        let (free0, free1) = Self::live(domains);
        assert!(brute_force_extension(self.g0, self.g1, current, &free0, &free1, self.connected) <= best);
    }

    fn on_improve(&mut self, best: &[(Vertex, Vertex)]) {
        assert!(verify_solution(self.g0, self.g1, best, self.connected).unwrap().is_valid());
        if let Some(&last) = self.improvements.last() {
            assert!(best.len() > last);
        }
        self.improvements.push(best.len());
    }
}

#[test]
fn instrumented_search_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut prunes = 0;
    for _ in 0..40 {
        for directed in [false, true] {
            let (g0, g1) = instance(&mut rng, directed);
            for connected in [false, true] {
                for v in variants() {
                    let mut audit = Audit { g0: &g0, g1: &g1, connected, nodes: 0, prunes: 0, improvements: vec![] };
                    let (s, stats) =
                        solve_with_observer(&g0, &g1, &SolverConfig::new(v).connected(connected), &mut audit).unwrap();
                    assert_eq!(audit.nodes, stats.nodes_expanded);
                    assert_eq!(audit.prunes, stats.prunes);
                    assert_eq!(audit.improvements.last().copied().unwrap_or(0), s.len());
                    prunes += audit.prunes;
                }
            }
        }
    }
    assert!(prunes > 0);
}
