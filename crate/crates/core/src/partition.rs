//! Label-class partition of the unmatched candidate vertices.
//!
//! A bidomain is a pair of vertex sets, one per graph, whose members share
//! the same adjacency pattern towards every matched pair. Any cross pair
//! inside one bidomain is a legal next match, and
//! `sum(min(|left|, |right|))` over the list bounds how many more pairs the
//! current state can still yield.
//!
//! Storage follows the usual compact layout: two vertex arrays, with every
//! bidomain a pair of slices into them. A mutation never touches the slices
//! of the state it came from; it writes the refined slices above the current
//! top of each array and journals the old bidomain records plus the old array
//! tops. Undo therefore truncates the arrays and swaps the records back, which
//! restores the previous state exactly.

use std::collections::BTreeMap;
use std::mem;

use thiserror::Error;

use crate::graph::{Graph, Label, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {0} of the first graph is not a live candidate")]
    MissingLeft(Vertex),
    #[error("vertex {0} of the second graph is not a live candidate")]
    MissingRight(Vertex),
    #[error("vertices {p} and {q} are not in the same bidomain")]
    SplitPair { p: Vertex, q: Vertex },
    #[error("undo requested with an empty journal")]
    EmptyJournal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Span {
    left: u32,
    left_len: u32,
    right: u32,
    right_len: u32,
    adjacent: bool,
}

impl Span {
    fn bound(&self) -> usize {
        self.left_len.min(self.right_len) as usize
    }
}

/// Borrowed view of one bidomain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bidomain<'a> {
    /// Candidates from the first graph.
    pub left: &'a [Vertex],
    /// Candidates from the second graph.
    pub right: &'a [Vertex],
    /// Whether the class is adjacent to at least one matched vertex.
    pub adjacent: bool,
}

impl Bidomain<'_> {
    /// `max(|left|, |right|)`, the size the bidomain selection minimises.
    pub fn size(&self) -> usize {
        self.left.len().max(self.right.len())
    }
}

struct Checkpoint {
    spans: Vec<Span>,
    left_top: usize,
    right_top: usize,
}

/// The live bidomain list with an undo journal.
pub struct BidomainList {
    left: Vec<Vertex>,
    right: Vec<Vertex>,
    spans: Vec<Span>,
    journal: Vec<Checkpoint>,
    spare: Vec<Vec<Span>>,
    skip_left: Vec<bool>,
    skip_right: Vec<bool>,
    keyed_left: Vec<(u64, Vertex)>,
    keyed_right: Vec<(u64, Vertex)>,
}

impl PartialEq for BidomainList {
    /// Compares the observable state: the bidomain records and the vertex
    /// arrays they index into. The journal is not part of the state.
    fn eq(&self, other: &Self) -> bool {
        self.spans == other.spans && self.left == other.left && self.right == other.right
    }
}

impl std::fmt::Debug for BidomainList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.iter().map(|b| (b.left, b.right, b.adjacent))).finish()
    }
}

impl BidomainList {
    /// One bidomain per vertex label shared by both graphs, ordered by label.
    pub fn initial(g0: &Graph, g1: &Graph) -> BidomainList {
        let mut classes: BTreeMap<Label, (Vec<Vertex>, Vec<Vertex>)> = BTreeMap::new();
        for v in 0..g0.n() as Vertex {
            classes.entry(g0.label(v)).or_default().0.push(v);
        }
        for v in 0..g1.n() as Vertex {
            classes.entry(g1.label(v)).or_default().1.push(v);
        }
        let classes: Vec<_> = classes.into_values().collect();
        Self::from_classes(g0.n(), g1.n(), &classes)
    }

    /// Builds a list from explicit classes. Classes with an empty side are
    /// dropped. `n0` and `n1` are the vertex counts of the two graphs.
    pub fn from_classes(n0: usize, n1: usize, classes: &[(Vec<Vertex>, Vec<Vertex>)]) -> BidomainList {
        let mut list = BidomainList {
            left: Vec::with_capacity(n0),
            right: Vec::with_capacity(n1),
            spans: Vec::new(),
            journal: Vec::new(),
            spare: Vec::new(),
            skip_left: vec![false; n0],
            skip_right: vec![false; n1],
            keyed_left: Vec::new(),
            keyed_right: Vec::new(),
        };
        for (l, r) in classes {
            if l.is_empty() || r.is_empty() {
                continue;
            }
            list.spans.push(Span {
                left: list.left.len() as u32,
                left_len: l.len() as u32,
                right: list.right.len() as u32,
                right_len: r.len() as u32,
                adjacent: false,
            });
            list.left.extend_from_slice(l);
            list.right.extend_from_slice(r);
        }
        list
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    /// Number of mutations that can still be undone.
    pub fn depth(&self) -> usize {
        self.journal.len()
    }

    fn view(&self, s: &Span) -> Bidomain<'_> {
        Bidomain {
            left: &self.left[s.left as usize..(s.left + s.left_len) as usize],
            right: &self.right[s.right as usize..(s.right + s.right_len) as usize],
            adjacent: s.adjacent,
        }
    }

    pub fn get(&self, i: usize) -> Bidomain<'_> {
        self.view(&self.spans[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = Bidomain<'_>> + '_ {
        self.spans.iter().map(|s| self.view(s))
    }

    /// Every live candidate of the first graph.
    pub fn live_left(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.iter().flat_map(|b| b.left.iter().copied())
    }

    /// Every live candidate of the second graph.
    pub fn live_right(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.iter().flat_map(|b| b.right.iter().copied())
    }

    /// Sum over bidomains of `min(|left|, |right|)`.
    pub fn over_estimate(&self) -> usize {
        self.spans.iter().map(Span::bound).sum()
    }

    fn checkpoint(&mut self) {
        let fresh = self.spare.pop().unwrap_or_default();
        let spans = mem::replace(&mut self.spans, fresh);
        self.journal.push(Checkpoint { spans, left_top: self.left.len(), right_top: self.right.len() });
    }

    /// Reverts the most recent [`divide`](Self::divide) or
    /// [`remove_left_vertex`](Self::remove_left_vertex).
    pub fn undo(&mut self) -> Result<(), PartitionError> {
        let cp = self.journal.pop().ok_or(PartitionError::EmptyJournal)?;
        let mut dropped = mem::replace(&mut self.spans, cp.spans);
        dropped.clear();
        self.spare.push(dropped);
        self.left.truncate(cp.left_top);
        self.right.truncate(cp.right_top);
        Ok(())
    }

    /// Refines every bidomain by adjacency to the newly matched pair
    /// `(p, q)`: a left vertex `v` and a right vertex `w` stay together iff
    /// `v` relates to `p` exactly as `w` relates to `q` (presence, direction,
    /// edge label). `p`, `q` and the vertices of `also_matched` leave the
    /// candidate sets. Children with an empty side are discarded.
    pub fn divide(
        &mut self,
        g0: &Graph,
        g1: &Graph,
        p: Vertex,
        q: Vertex,
        also_matched: &[(Vertex, Vertex)],
    ) -> Result<(), PartitionError> {
        for &(x, y) in also_matched {
            self.skip_left[x as usize] = true;
            self.skip_right[y as usize] = true;
        }
        self.checkpoint();
        let binary = g0.has_binary_patterns() && g1.has_binary_patterns();
        let mut found_p = None;
        let mut found_q = None;
        for i in 0..self.journal.last().map_or(0, |c| c.spans.len()) {
            let parent = self.journal.last().expect("checkpoint just pushed").spans[i];
            let lr = parent.left as usize..(parent.left + parent.left_len) as usize;
            let rr = parent.right as usize..(parent.right + parent.right_len) as usize;
            if binary {
                for key in [false, true] {
                    let (l0, r0) = (self.left.len(), self.right.len());
                    for k in lr.clone() {
                        let v = self.left[k];
                        if v == p {
                            found_p = Some(i);
                        } else if !self.skip_left[v as usize] && g0.has_arc(p, v) == key {
                            self.left.push(v);
                        }
                    }
                    for k in rr.clone() {
                        let w = self.right[k];
                        if w == q {
                            found_q = Some(i);
                        } else if !self.skip_right[w as usize] && g1.has_arc(q, w) == key {
                            self.right.push(w);
                        }
                    }
                    self.close_child(l0, r0, key || parent.adjacent);
                }
            } else {
                self.keyed_left.clear();
                self.keyed_right.clear();
                for k in lr {
                    let v = self.left[k];
                    if v == p {
                        found_p = Some(i);
                    } else if !self.skip_left[v as usize] {
                        self.keyed_left.push((g0.pattern(p, v), v));
                    }
                }
                for k in rr {
                    let w = self.right[k];
                    if w == q {
                        found_q = Some(i);
                    } else if !self.skip_right[w as usize] {
                        self.keyed_right.push((g1.pattern(q, w), w));
                    }
                }
                // stable sorts keep the parent's vertex order inside each child
                self.keyed_left.sort_by_key(|&(k, _)| k);
                self.keyed_right.sort_by_key(|&(k, _)| k);
                let (mut a, mut b) = (0, 0);
                while a < self.keyed_left.len() && b < self.keyed_right.len() {
                    let (ka, kb) = (self.keyed_left[a].0, self.keyed_right[b].0);
                    let a_end = run_end(&self.keyed_left, a);
                    let b_end = run_end(&self.keyed_right, b);
                    if ka < kb {
                        a = a_end;
                    } else if kb < ka {
                        b = b_end;
                    } else {
                        let (l0, r0) = (self.left.len(), self.right.len());
                        self.left.extend(self.keyed_left[a..a_end].iter().map(|&(_, v)| v));
                        self.right.extend(self.keyed_right[b..b_end].iter().map(|&(_, w)| w));
                        self.close_child(l0, r0, ka != 0 || parent.adjacent);
                        a = a_end;
                        b = b_end;
                    }
                }
            }
        }
        for &(x, y) in also_matched {
            self.skip_left[x as usize] = false;
            self.skip_right[y as usize] = false;
        }
        let failure = match (found_p, found_q) {
            (None, _) => Some(PartitionError::MissingLeft(p)),
            (_, None) => Some(PartitionError::MissingRight(q)),
            (Some(i), Some(j)) if i != j => Some(PartitionError::SplitPair { p, q }),
            _ => None,
        };
        match failure {
            Some(e) => {
                self.undo().expect("checkpoint exists");
                Err(e)
            }
            None => Ok(()),
        }
    }

    /// Turns the vertices pushed since `(l0, r0)` into a bidomain, or drops
    /// them when a side is empty.
    fn close_child(&mut self, l0: usize, r0: usize, adjacent: bool) {
        let (ln, rn) = (self.left.len() - l0, self.right.len() - r0);
        if ln == 0 || rn == 0 {
            self.left.truncate(l0);
            self.right.truncate(r0);
            return;
        }
        self.spans.push(Span {
            left: l0 as u32,
            left_len: ln as u32,
            right: r0 as u32,
            right_len: rn as u32,
            adjacent,
        });
    }

    /// Drops `p` from its bidomain (the "leave `p` unmatched" branch). The
    /// bidomain disappears if its left side empties.
    pub fn remove_left_vertex(&mut self, p: Vertex) -> Result<(), PartitionError> {
        let i = self.spans.iter().position(|s| self.view(s).left.contains(&p)).ok_or(PartitionError::MissingLeft(p))?;
        let old = self.spans.clone();
        self.checkpoint();
        self.spans.extend_from_slice(&old);
        let s = self.spans[i];
        let start = self.left.len();
        for k in s.left as usize..(s.left + s.left_len) as usize {
            let v = self.left[k];
            if v != p {
                self.left.push(v);
            }
        }
        if s.left_len == 1 {
            self.spans.remove(i);
        } else {
            self.spans[i].left = start as u32;
            self.spans[i].left_len -= 1;
        }
        Ok(())
    }

    /// Picks the bidomain to branch on: smallest `max(|left|, |right|)`,
    /// then the largest vertex degree on the left, then the lowest index of
    /// such a vertex, then the lowest position. In connected mode with a
    /// nonempty solution only adjacent bidomains qualify.
    pub fn select_bidomain(&self, g0: &Graph, connected: bool, solution_nonempty: bool) -> Option<usize> {
        let restrict = connected && solution_nonempty;
        self.iter()
            .enumerate()
            .filter(|(_, b)| !restrict || b.adjacent)
            .map(|(i, b)| {
                let (deg, v) =
                    b.left.iter().map(|&v| (std::cmp::Reverse(g0.degree(v)), v)).min().expect("bidomains are nonempty");
                (b.size(), deg, v, i)
            })
            .min()
            .map(|(.., i)| i)
    }
}

fn run_end(keyed: &[(u64, Vertex)], start: usize) -> usize {
    let k = keyed[start].0;
    start + keyed[start..].iter().take_while(|&&(x, _)| x == k).count()
}
