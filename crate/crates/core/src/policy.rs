//! Branching-pair selection and the reward bookkeeping behind it.
//!
//! Four heuristics share one interface:
//!
//! | heuristic | first vertex `p`   | order of second vertices `q` | decay        |
//! |-----------|--------------------|------------------------------|--------------|
//! | `mcsplit` | max degree         | degree, descending           | none         |
//! | `rl`      | max `s0(p)`        | `s1(q)`, descending          | none         |
//! | `sm`      | max `s0(p)`        | `s1(q)`, descending          | `s0`, `s1` at the short threshold |
//! | `lsm`     | max `s0(p)`        | `st(p, q)`, descending       | `s0` at the short threshold, rows of `st` at the long one |
//!
//! Every ordering falls back to degree (descending) and then vertex index
//! (ascending), so runs are reproducible.

use std::cmp::Reverse;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolicyError {
    #[error("bound grew from {before} to {after} after a match")]
    NegativeReward { before: usize, after: usize },
    #[error("unknown heuristic `{0}` (expected mcsplit, rl, sm or lsm)")]
    UnknownHeuristic(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Heuristic {
    McSplit,
    Rl,
    Sm,
    Lsm,
}

impl Heuristic {
    pub const ALL: [Heuristic; 4] = [Heuristic::McSplit, Heuristic::Rl, Heuristic::Sm, Heuristic::Lsm];

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::McSplit => "mcsplit",
            Heuristic::Rl => "rl",
            Heuristic::Sm => "sm",
            Heuristic::Lsm => "lsm",
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = PolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Heuristic::ALL.into_iter().find(|h| h.name() == s).ok_or_else(|| PolicyError::UnknownHeuristic(s.to_string()))
    }
}

/// A heuristic plus whether leaf union matching is on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolicyVariant {
    pub heuristic: Heuristic,
    pub lum: bool,
}

impl PolicyVariant {
    pub fn new(heuristic: Heuristic, lum: bool) -> Self {
        PolicyVariant { heuristic, lum }
    }

    /// Leaf matching defaults to on for `lsm` only.
    pub fn with_default_lum(heuristic: Heuristic) -> Self {
        PolicyVariant { heuristic, lum: heuristic == Heuristic::Lsm }
    }
}

impl fmt::Display for PolicyVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lum {
            write!(f, "{}+lum", self.heuristic)
        } else {
            write!(f, "{}", self.heuristic)
        }
    }
}

impl FromStr for PolicyVariant {
    type Err = PolicyError;

    /// `rl`, `lsm+lum`, ... A bare name means leaf matching off.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.strip_suffix("+lum") {
            Some(h) => Ok(PolicyVariant::new(h.parse()?, true)),
            None => Ok(PolicyVariant::new(s.parse()?, false)),
        }
    }
}

/// Decay thresholds: the short one for vertex scores, the long one for
/// pair scores.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    pub short: u64,
    pub long: u64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { short: 100_000, long: 1_000_000_000 }
    }
}

/// Bound reduction caused by a match.
pub fn reward(bound_before: usize, bound_after: usize) -> Result<u64, PolicyError> {
    bound_before
        .checked_sub(bound_after)
        .map(|r| r as u64)
        .ok_or(PolicyError::NegativeReward { before: bound_before, after: bound_after })
}

/// Largest pair table allocated densely; above it rows become hash maps.
pub const DEFAULT_PAIR_CELL_BUDGET: usize = 1 << 24;

#[derive(Clone, Debug)]
enum PairTable {
    Dense { cols: usize, cells: Vec<u64> },
    Sparse { rows: Vec<HashMap<Vertex, u64>> },
}

impl PairTable {
    fn new(rows: usize, cols: usize, budget: usize) -> Self {
        if rows.saturating_mul(cols) <= budget {
            PairTable::Dense { cols, cells: vec![0; rows * cols] }
        } else {
            PairTable::Sparse { rows: vec![HashMap::new(); rows] }
        }
    }

    fn get(&self, p: Vertex, q: Vertex) -> u64 {
        match self {
            PairTable::Dense { cols, cells } => cells[p as usize * cols + q as usize],
            PairTable::Sparse { rows } => rows[p as usize].get(&q).copied().unwrap_or(0),
        }
    }

    fn cell(&mut self, p: Vertex, q: Vertex) -> &mut u64 {
        match self {
            PairTable::Dense { cols, cells } => &mut cells[p as usize * *cols + q as usize],
            PairTable::Sparse { rows } => rows[p as usize].entry(q).or_insert(0),
        }
    }

    fn set(&mut self, p: Vertex, q: Vertex, value: u64) {
        *self.cell(p, q) = value;
    }

    fn add(&mut self, p: Vertex, q: Vertex, r: u64) -> u64 {
        let cell = self.cell(p, q);
        *cell += r;
        *cell
    }

    fn halve_row(&mut self, p: Vertex) {
        match self {
            PairTable::Dense { cols, cells } => {
                let start = p as usize * *cols;
                cells[start..start + *cols].iter_mut().for_each(|x| *x /= 2);
            }
            PairTable::Sparse { rows } => rows[p as usize].values_mut().for_each(|x| *x /= 2),
        }
    }
}

fn halve(list: &mut [u64]) {
    list.iter_mut().for_each(|x| *x /= 2);
}

/// Learned scores of one solver run.
#[derive(Clone, Debug)]
pub struct ScoreState {
    heuristic: Heuristic,
    thresholds: Thresholds,
    s0: Vec<u64>,
    s1: Vec<u64>,
    st: Option<PairTable>,
}

impl ScoreState {
    pub fn new(heuristic: Heuristic, n0: usize, n1: usize, thresholds: Thresholds) -> Self {
        Self::with_cell_budget(heuristic, n0, n1, thresholds, DEFAULT_PAIR_CELL_BUDGET)
    }

    pub fn with_cell_budget(heuristic: Heuristic, n0: usize, n1: usize, thresholds: Thresholds, budget: usize) -> Self {
        let (s0, s1, st) = match heuristic {
            Heuristic::McSplit => (Vec::new(), Vec::new(), None),
            Heuristic::Rl | Heuristic::Sm => (vec![0; n0], vec![0; n1], None),
            Heuristic::Lsm => (vec![0; n0], Vec::new(), Some(PairTable::new(n0, n1, budget))),
        };
        ScoreState { heuristic, thresholds, s0, s1, st }
    }

    pub fn heuristic(&self) -> Heuristic {
        self.heuristic
    }

    pub fn thresholds(&self) -> Thresholds {
        self.thresholds
    }

    pub fn s0(&self, p: Vertex) -> u64 {
        self.s0.get(p as usize).copied().unwrap_or(0)
    }

    pub fn s1(&self, q: Vertex) -> u64 {
        self.s1.get(q as usize).copied().unwrap_or(0)
    }

    pub fn st(&self, p: Vertex, q: Vertex) -> u64 {
        self.st.as_ref().map_or(0, |t| t.get(p, q))
    }

    /// Overwrites a vertex score. Intended for tests and warm starts.
    pub fn set_s0(&mut self, p: Vertex, value: u64) {
        self.s0[p as usize] = value;
    }

    pub fn set_s1(&mut self, q: Vertex, value: u64) {
        self.s1[q as usize] = value;
    }

    /// Overwrites a pair score. Only meaningful for `lsm`.
    pub fn set_st(&mut self, p: Vertex, q: Vertex, value: u64) {
        if let Some(t) = self.st.as_mut() {
            t.set(p, q, value);
        }
    }

    /// Credits reward `r` to the branching pair `(p, q)` and applies decay.
    /// Decay is checked once, right after the addition.
    pub fn update(&mut self, p: Vertex, q: Vertex, r: u64) {
        let short = self.thresholds.short;
        let long = self.thresholds.long;
        match self.heuristic {
            Heuristic::McSplit => {}
            Heuristic::Rl => {
                self.s0[p as usize] += r;
                self.s1[q as usize] += r;
            }
            Heuristic::Sm => {
                self.s0[p as usize] += r;
                self.s1[q as usize] += r;
                if self.s0[p as usize] > short {
                    halve(&mut self.s0);
                }
                if self.s1[q as usize] > short {
                    halve(&mut self.s1);
                }
            }
            Heuristic::Lsm => {
                self.s0[p as usize] += r;
                if self.s0[p as usize] > short {
                    halve(&mut self.s0);
                }
                let t = self.st.as_mut().expect("lsm keeps a pair table");
                if t.add(p, q, r) > long {
                    t.halve_row(p);
                }
            }
        }
    }

    fn first_key(&self, g0: &Graph, v: Vertex) -> (u64, u32, Reverse<Vertex>) {
        let deg = g0.degree(v);
        let score = match self.heuristic {
            Heuristic::McSplit => deg as u64,
            _ => self.s0(v),
        };
        (score, deg, Reverse(v))
    }

    fn second_key(&self, g1: &Graph, p: Vertex, w: Vertex) -> (u64, u32, Reverse<Vertex>) {
        let deg = g1.degree(w);
        let score = match self.heuristic {
            Heuristic::McSplit => deg as u64,
            Heuristic::Rl | Heuristic::Sm => self.s1(w),
            Heuristic::Lsm => self.st(p, w),
        };
        (score, deg, Reverse(w))
    }

    /// The vertex to branch on from the left side of a bidomain.
    pub fn select_first_vertex(&self, left: &[Vertex], g0: &Graph) -> Vertex {
        *left.iter().max_by_key(|&&v| self.first_key(g0, v)).expect("left side is nonempty")
    }

    /// Position in `candidates` of the next second vertex to try for `p`,
    /// under the current scores.
    pub fn next_second_vertex(&self, candidates: &[Vertex], p: Vertex, g1: &Graph) -> Option<usize> {
        (0..candidates.len()).max_by_key(|&i| self.second_key(g1, p, candidates[i]))
    }

    /// All of `right` in the order the current scores would enumerate it.
    pub fn order_second_vertices(&self, right: &[Vertex], p: Vertex, g1: &Graph) -> Vec<Vertex> {
        let mut out = right.to_vec();
        out.sort_by_key(|&w| Reverse(self.second_key(g1, p, w)));
        out
    }
}
