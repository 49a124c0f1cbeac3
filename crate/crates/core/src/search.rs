//! Depth-first branch and bound over bidomain lists.
//!
//! At each node: prune when `|current| + over_estimate <= |best|`, else pick
//! a bidomain, a first vertex `p` from its left side, then try every `q` on
//! its right side in policy order, and finally the branch where `p` stays
//! unmatched. The recursion runs on an explicit stack, since depth can reach
//! the size of the smaller graph.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::lum::union_match_leaves;
use crate::partition::{BidomainList, PartitionError};
use crate::policy::{reward, PolicyError, PolicyVariant, ScoreState, Thresholds};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Policy(#[from] PolicyError),
}

/// Matched pairs, first-graph vertex first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Solution {
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl Solution {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The same matching with the two graphs' roles exchanged.
    pub fn swapped(&self) -> Solution {
        Solution { pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect() }
    }
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub variant: PolicyVariant,
    /// Require the common subgraph to be connected.
    pub connected: bool,
    pub timeout: Duration,
    pub node_budget: Option<u64>,
    pub thresholds: Thresholds,
}

impl SolverConfig {
    pub fn new(variant: PolicyVariant) -> Self {
        SolverConfig {
            variant,
            connected: false,
            timeout: Duration::MAX,
            node_budget: None,
            thresholds: Thresholds::default(),
        }
    }

    pub fn connected(mut self, connected: bool) -> Self {
        self.connected = connected;
        self
    }

    pub fn timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn node_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn thresholds(mut self, thresholds: Thresholds) -> Self {
        self.thresholds = thresholds;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub prunes: u64,
    pub lum_pairs_matched: u64,
    /// `(elapsed, size)` at every improvement of the incumbent.
    pub best_size_trajectory: Vec<(Duration, usize)>,
    pub wall_time: Duration,
    /// False when the search stopped on the timeout or node budget.
    pub completed: bool,
}

/// Hooks for instrumented runs. All methods default to no-ops.
pub trait SearchObserver {
    /// A node was counted and is about to be bounded.
    fn on_node(&mut self, _current: &[(Vertex, Vertex)], _domains: &BidomainList, _best: usize) {}

    /// A node is about to be cut because its bound cannot beat `best`.
    fn on_prune(&mut self, _current: &[(Vertex, Vertex)], _domains: &BidomainList, _best: usize) {}

    /// The incumbent just improved to `best`.
    fn on_improve(&mut self, _best: &[(Vertex, Vertex)]) {}
}

impl SearchObserver for () {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetCheck {
    Continue,
    Stop,
}

/// Stop once the node budget is exceeded or, on every 1024th node, once the
/// wall clock has passed the timeout.
pub fn check_budget(stats: &SearchStats, config: &SolverConfig, started: Instant) -> BudgetCheck {
    if config.node_budget.is_some_and(|b| stats.nodes_expanded > b) {
        return BudgetCheck::Stop;
    }
    if stats.nodes_expanded.is_multiple_of(TIME_CHECK_INTERVAL) && started.elapsed() > config.timeout {
        return BudgetCheck::Stop;
    }
    BudgetCheck::Continue
}

const TIME_CHECK_INTERVAL: u64 = 1 << 10;

pub fn solve(g0: &Graph, g1: &Graph, config: &SolverConfig) -> Result<(Solution, SearchStats), SearchError> {
    solve_with_observer(g0, g1, config, &mut ())
}

pub fn solve_with_observer<O: SearchObserver>(
    g0: &Graph,
    g1: &Graph,
    config: &SolverConfig,
    observer: &mut O,
) -> Result<(Solution, SearchStats), SearchError> {
    let mut engine = Engine {
        g0,
        g1,
        config,
        observer,
        domains: BidomainList::initial(g0, g1),
        scores: ScoreState::new(config.variant.heuristic, g0.n(), g1.n(), config.thresholds),
        current: Vec::new(),
        best: Vec::new(),
        stats: SearchStats::default(),
        started: Instant::now(),
        stopped: false,
        stack: Vec::new(),
        live0: vec![false; g0.n()],
        live1: vec![false; g1.n()],
    };
    engine.run()?;
    let mut stats = engine.stats;
    stats.wall_time = engine.started.elapsed();
    stats.completed = !engine.stopped;
    Ok((Solution { pairs: engine.best }, stats))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stage {
    Matching,
    Skipping,
}

struct Frame {
    p: Vertex,
    bound: usize,
    untried: Vec<Vertex>,
    stage: Stage,
    /// Pairs pushed for the child in progress; the child's divide (or
    /// removal) is undone together with them.
    pending: Option<usize>,
}

struct Engine<'a, O> {
    g0: &'a Graph,
    g1: &'a Graph,
    config: &'a SolverConfig,
    observer: &'a mut O,
    domains: BidomainList,
    scores: ScoreState,
    current: Vec<(Vertex, Vertex)>,
    best: Vec<(Vertex, Vertex)>,
    stats: SearchStats,
    started: Instant,
    stopped: bool,
    stack: Vec<Frame>,
    live0: Vec<bool>,
    live1: Vec<bool>,
}

impl<O: SearchObserver> Engine<'_, O> {
    fn run(&mut self) -> Result<(), SearchError> {
        self.enter()?;
        while !self.stopped {
            let Some(frame) = self.stack.last_mut() else { break };
            if let Some(k) = frame.pending.take() {
                self.domains.undo()?;
                self.current.truncate(self.current.len() - k);
            }
            let frame = self.stack.last_mut().expect("frame still on the stack");
            match frame.stage {
                Stage::Matching => {
                    let p = frame.p;
                    let bound = frame.bound;
                    match self.scores.next_second_vertex(&frame.untried, p, self.g1) {
                        Some(i) => {
                            let q = frame.untried.swap_remove(i);
                            let k = self.match_pair(p, q, bound)?;
                            self.stack.last_mut().expect("frame").pending = Some(k);
                        }
                        None => {
                            frame.stage = Stage::Skipping;
                            frame.pending = Some(0);
                            self.domains.remove_left_vertex(p)?;
                        }
                    }
                    self.enter()?;
                }
                Stage::Skipping => {
                    self.stack.pop();
                }
            }
        }
        Ok(())
    }

    /// Processes the node for the current state: counts it, prunes, or
    /// pushes a frame that will branch on it.
    fn enter(&mut self) -> Result<(), SearchError> {
        self.stats.nodes_expanded += 1;
        if check_budget(&self.stats, self.config, self.started) == BudgetCheck::Stop {
            self.stopped = true;
            return Ok(());
        }
        self.observer.on_node(&self.current, &self.domains, self.best.len());
        let bound = self.domains.over_estimate();
        if self.current.len() + bound <= self.best.len() {
            self.stats.prunes += 1;
            self.observer.on_prune(&self.current, &self.domains, self.best.len());
            return Ok(());
        }
        let Some(i) = self.domains.select_bidomain(self.g0, self.config.connected, !self.current.is_empty()) else {
            return Ok(());
        };
        let bd = self.domains.get(i);
        let p = self.scores.select_first_vertex(bd.left, self.g0);
        let untried = bd.right.to_vec();
        self.stack.push(Frame { p, bound, untried, stage: Stage::Matching, pending: None });
        Ok(())
    }

    /// Extends the current solution by `(p, q)` and any union-matched leaf
    /// pairs, refines the bidomains and credits the reward. Returns how many
    /// pairs were pushed.
    fn match_pair(&mut self, p: Vertex, q: Vertex, bound_before: usize) -> Result<usize, SearchError> {
        self.current.push((p, q));
        let leaves = if self.config.variant.lum { self.leaf_pairs(p, q) } else { Vec::new() };
        self.current.extend_from_slice(&leaves);
        self.stats.lum_pairs_matched += leaves.len() as u64;
        if self.current.len() > self.best.len() {
            self.best.clone_from(&self.current);
            self.stats.best_size_trajectory.push((self.started.elapsed(), self.best.len()));
            self.observer.on_improve(&self.best);
        }
        self.domains.divide(self.g0, self.g1, p, q, &leaves)?;
        let r = reward(bound_before, self.domains.over_estimate())?;
        self.scores.update(p, q, r);
        Ok(1 + leaves.len())
    }

    fn leaf_pairs(&mut self, p: Vertex, q: Vertex) -> Vec<(Vertex, Vertex)> {
        if self.g0.leaves(p).is_empty() || self.g1.leaves(q).is_empty() {
            return Vec::new();
        }
        for v in self.domains.live_left() {
            self.live0[v as usize] = true;
        }
        for w in self.domains.live_right() {
            self.live1[w as usize] = true;
        }
        let (live0, live1) = (&self.live0, &self.live1);
        let pairs = union_match_leaves(self.g0, self.g1, p, q, |x| live0[x as usize], |y| live1[y as usize]);
        for v in self.domains.live_left() {
            self.live0[v as usize] = false;
        }
        for w in self.domains.live_right() {
            self.live1[w as usize] = false;
        }
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_g0, example_g1};
    use crate::policy::Heuristic;

    fn all_variants() -> Vec<PolicyVariant> {
        Heuristic::ALL.into_iter().flat_map(|h| [PolicyVariant::new(h, false), PolicyVariant::new(h, true)]).collect()
    }

    fn path(n: u32) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n as usize, false, &edges)
    }

    #[test]
    fn triangle_with_itself() {
        let k3 = Graph::from_edges(3, false, &[(0, 1), (1, 2), (0, 2)]);
        for v in all_variants() {
            let (sol, stats) = solve(&k3, &k3, &SolverConfig::new(v)).unwrap();
            assert_eq!(sol.len(), 3);
            assert!(stats.completed);
        }
    }

    #[test]
    fn single_vertex_pattern() {
        let g0 = Graph::from_edges(1, false, &[]);
        let (sol, _) = solve(&g0, &example_g1(), &SolverConfig::new(PolicyVariant::new(Heuristic::Lsm, true))).unwrap();
        assert_eq!(sol.len(), 1);
    }

    #[test]
    fn connected_path_against_two_edges() {
        let g0 = path(5);
        let g1 = Graph::from_edges(4, false, &[(0, 1), (2, 3)]);
        for v in all_variants() {
            let cfg = SolverConfig::new(v).connected(true);
            assert_eq!(solve(&g0, &g1, &cfg).unwrap().0.len(), 2, "{v}");
            // without connectivity both edges fit
            assert_eq!(solve(&g0, &g1, &SolverConfig::new(v)).unwrap().0.len(), 4, "{v}");
        }
    }

    #[test]
    fn connected_single_edge() {
        let e = Graph::from_edges(2, false, &[(0, 1)]);
        let (sol, _) =
            solve(&e, &e, &SolverConfig::new(PolicyVariant::new(Heuristic::Rl, false)).connected(true)).unwrap();
        assert_eq!(sol.len(), 2);
    }

    #[test]
    fn zero_node_budget_stops_immediately() {
        let cfg = SolverConfig::new(PolicyVariant::new(Heuristic::McSplit, false)).node_budget(Some(0));
        let (sol, stats) = solve(&example_g0(), &example_g1(), &cfg).unwrap();
        assert!(sol.is_empty());
        assert!(!stats.completed);
        assert_eq!(stats.nodes_expanded, 1);
    }

    #[test]
    fn budget_hit_returns_trajectory_max() {
        let cfg = SolverConfig::new(PolicyVariant::new(Heuristic::Rl, false)).node_budget(Some(5));
        let (sol, stats) = solve(&example_g0(), &example_g1(), &cfg).unwrap();
        assert!(!stats.completed);
        let top = stats.best_size_trajectory.iter().map(|&(_, s)| s).max().unwrap_or(0);
        assert_eq!(sol.len(), top);
        assert!(stats.best_size_trajectory.windows(2).all(|w| w[0].1 < w[1].1));
    }

    #[test]
    fn deep_search_does_not_overflow_the_stack() {
        // depth equals the path length; a recursive engine would need a huge stack
        let g = path(2000);
        let cfg = SolverConfig::new(PolicyVariant::new(Heuristic::McSplit, false));
        let (sol, stats) = std::thread::Builder::new()
            .stack_size(256 * 1024)
            .spawn(move || solve(&g, &g, &cfg).unwrap())
            .unwrap()
            .join()
            .unwrap();
        assert_eq!(sol.len(), 2000);
        assert!(stats.completed);
    }
}
