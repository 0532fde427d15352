//! Exact game values on small graphs, orientation bounds and brackets.
//!
//! The threshold search asks whether Bob can force a post-Bob round score of
//! at least `s`. Positions are bitsets of marked vertices and edges (so at
//! most 64 of each) and are memoised; the answer does not depend on move
//! order, only the effort does.

mod bounds;
mod orientation;
mod reach;

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::game::{GameState, Move, Side};
use crate::graph::PlanarGraph;

pub use bounds::{bounds_report, BoundsError, Bracket};
pub use orientation::{orientation_bound, orientation_feasible, Orientation};
pub use reach::{reach, Player, Reach};

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Node expansions allowed per threshold; `None` is unbounded.
    pub node_budget: Option<u64>,
    /// Split the root's children across threads.
    pub parallel: bool,
    /// Keep evaluating thresholds after the first one Alice holds.
    pub all_thresholds: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { node_budget: None, parallel: false, all_thresholds: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    BobWins,
    AliceHolds,
    /// The node budget ran out first.
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdResult {
    pub threshold: u32,
    pub verdict: Verdict,
    /// Principal variation from the root: for `BobWins`, Bob's winning moves
    /// against Alice's first-ordered replies, ending at the move that reaches
    /// the threshold; for `AliceHolds`, Alice's holding moves to the end.
    #[serde(skip)]
    pub line: Vec<Move>,
    pub nodes: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    /// Exact value when every needed threshold was decided.
    pub value: Option<u32>,
    /// Proven bracket `lo <= value <= hi`.
    pub lo: u32,
    pub hi: u32,
    pub thresholds: Vec<ThresholdResult>,
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph has {vertices} vertices and {edges} edges; the exact solver handles at most 64 of each")]
    TooLarge { vertices: usize, edges: usize },
    #[error("position belongs to a different graph")]
    ForeignState,
}

struct Exhausted;

/// Bitset view of a graph.
pub(crate) struct Board {
    ends: Vec<(usize, usize)>,
    incident: Vec<u64>,
    all_v: u64,
    all_e: u64,
}

impl Board {
    pub(crate) fn new(graph: &PlanarGraph) -> Result<Board, SolverError> {
        let (n, m) = (graph.vertex_count(), graph.edge_count());
        if n > 64 || m > 64 {
            return Err(SolverError::TooLarge { vertices: n, edges: m });
        }
        let mut incident = vec![0u64; n];
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            incident[u] |= 1 << e;
            incident[v] |= 1 << e;
        }
        Ok(Board { ends: graph.edges().to_vec(), incident, all_v: mask(n), all_e: mask(m) })
    }

    fn count(&self, v: usize, me: u64) -> u32 {
        (me & self.incident[v]).count_ones()
    }

    fn max_score(&self, mv: u64, me: u64) -> u32 {
        bits(self.all_v & !mv).map(|v| self.count(v, me)).max().unwrap_or(0)
    }

    fn game_over(&self, mv: u64, me: u64) -> bool {
        mv == self.all_v || me == self.all_e
    }

    fn bob_order(&self, mv: u64, me: u64) -> Vec<usize> {
        let mut edges: Vec<(u32, usize)> = bits(self.all_e & !me)
            .map(|e| {
                let (u, v) = self.ends[e];
                let heat = |w: usize| if mv >> w & 1 == 1 { 0 } else { 1 + self.count(w, me) };
                (heat(u).max(heat(v)) * 8 + heat(u).min(heat(v)), e)
            })
            .collect();
        edges.sort_by_key(|&(h, e)| (std::cmp::Reverse(h), e));
        edges.into_iter().map(|(_, e)| e).collect()
    }

    fn alice_order(&self, mv: u64, me: u64) -> Vec<usize> {
        let mut vs: Vec<(u32, usize)> = bits(self.all_v & !mv).map(|v| (self.count(v, me), v)).collect();
        vs.sort_by_key(|&(c, v)| (std::cmp::Reverse(c), v));
        vs.into_iter().map(|(_, v)| v).collect()
    }
}

pub(crate) fn mask(k: usize) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

pub(crate) fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

struct Search<'a> {
    board: &'a Board,
    s: u32,
    memo: DashMap<(u64, u64, bool), bool>,
    nodes: AtomicU64,
    budget: u64,
}

impl Search<'_> {
    fn bob_wins(&self, mv: u64, me: u64, bob: bool) -> Result<bool, Exhausted> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Exhausted);
        }
        if let Some(hit) = self.memo.get(&(mv, me, bob)) {
            return Ok(*hit);
        }
        let result = if self.board.game_over(mv, me) {
            false
        } else if bob {
            let mut win = false;
            for e in self.board.bob_order(mv, me) {
                if self.bob_move_wins(mv, me, e)? {
                    win = true;
                    break;
                }
            }
            win
        } else {
            let mut hold = false;
            for v in self.board.alice_order(mv, me) {
                if !self.bob_wins(mv | 1 << v, me, true)? {
                    hold = true;
                    break;
                }
            }
            !hold
        };
        self.memo.insert((mv, me, bob), result);
        Ok(result)
    }

    /// Whether Bob marking `e` reaches the threshold now or wins later.
    fn bob_move_wins(&self, mv: u64, me: u64, e: usize) -> Result<bool, Exhausted> {
        let me2 = me | 1 << e;
        if self.board.max_score(mv, me2) >= self.s {
            return Ok(true);
        }
        self.bob_wins(mv, me2, false)
    }

    fn root(&self, mv: u64, me: u64, bob: bool, parallel: bool) -> Result<bool, Exhausted> {
        if !parallel || self.board.game_over(mv, me) {
            return self.bob_wins(mv, me, bob);
        }
        let results: Vec<Result<bool, Exhausted>> = if bob {
            self.board.bob_order(mv, me).into_par_iter().map(|e| self.bob_move_wins(mv, me, e)).collect()
        } else {
            self.board
                .alice_order(mv, me)
                .into_par_iter()
                .map(|v| self.bob_wins(mv | 1 << v, me, true))
                .collect()
        };
        let mut values = Vec::with_capacity(results.len());
        for r in results {
            values.push(r?);
        }
        let result = if bob { values.iter().any(|&w| w) } else { values.iter().all(|&w| w) };
        self.memo.insert((mv, me, bob), result);
        Ok(result)
    }

    fn line(&self, mut mv: u64, mut me: u64, mut bob: bool, bob_wins: bool) -> Result<Vec<Move>, Exhausted> {
        let mut line = Vec::new();
        while !self.board.game_over(mv, me) {
            if bob {
                let mut chosen = None;
                for e in self.board.bob_order(mv, me) {
                    if !bob_wins || self.bob_move_wins(mv, me, e)? {
                        chosen = Some(e);
                        break;
                    }
                }
                let e = chosen.expect("a winning edge exists");
                line.push(Move::Edge(e));
                me |= 1 << e;
                if bob_wins && self.board.max_score(mv, me) >= self.s {
                    break;
                }
            } else {
                let mut chosen = None;
                for v in self.board.alice_order(mv, me) {
                    if bob_wins || !self.bob_wins(mv | 1 << v, me, true)? {
                        chosen = Some(v);
                        break;
                    }
                }
                let v = chosen.expect("a holding vertex exists");
                line.push(Move::Vertex(v));
                mv |= 1 << v;
            }
            bob = !bob;
        }
        Ok(line)
    }
}

fn state_bits(state: &GameState) -> (u64, u64) {
    let pack = |mask: &[bool]| mask.iter().enumerate().filter(|(_, &b)| b).fold(0u64, |acc, (i, _)| acc | 1 << i);
    (pack(state.marked_vertex_mask()), pack(state.marked_edge_mask()))
}

/// Whether Bob can force some post-Bob round score of at least `s` from
/// `from` (the empty position when absent).
pub fn bob_can_force(
    graph: &PlanarGraph,
    s: u32,
    from: Option<&GameState>,
    config: &SolverConfig,
) -> Result<ThresholdResult, SolverError> {
    let board = Board::new(graph)?;
    let (mv, me, bob) = match from {
        None => (0, 0, false),
        Some(state) => {
            if state.graph().vertex_count() != graph.vertex_count() || state.graph().edge_count() != graph.edge_count() {
                return Err(SolverError::ForeignState);
            }
            let (mv, me) = state_bits(state);
            (mv, me, state.to_move() == Side::Bob)
        }
    };
    let search = Search {
        board: &board,
        s,
        memo: DashMap::new(),
        nodes: AtomicU64::new(0),
        budget: config.node_budget.unwrap_or(u64::MAX),
    };
    let (verdict, line) = match search.root(mv, me, bob, config.parallel) {
        Err(Exhausted) => (Verdict::Unknown, Vec::new()),
        Ok(win) => {
            let line = search.line(mv, me, bob, win).unwrap_or_default();
            (if win { Verdict::BobWins } else { Verdict::AliceHolds }, line)
        }
    };
    Ok(ThresholdResult { threshold: s, verdict, line, nodes: search.nodes.load(Ordering::Relaxed) })
}

/// The game value: one more than the largest score Bob can force. A graph
/// without edges has value 1.
pub fn solve_colve(graph: &PlanarGraph, config: &SolverConfig) -> Result<SolveResult, SolverError> {
    Board::new(graph)?;
    let start = Instant::now();
    let top = graph.max_degree() as u32;
    let mut thresholds = Vec::new();
    let mut lo = 1;
    let mut hi = (top + 1).min(orientation_bound(graph).max_out_degree + 2);
    for s in 1..=top {
        let r = bob_can_force(graph, s, None, config)?;
        match r.verdict {
            Verdict::BobWins => lo = lo.max(s + 1),
            Verdict::AliceHolds => hi = hi.min(s),
            Verdict::Unknown => {}
        }
        let stop = r.verdict != Verdict::BobWins && !config.all_thresholds;
        thresholds.push(r);
        if stop {
            break;
        }
    }
    let nodes = thresholds.iter().map(|t| t.nodes).sum();
    Ok(SolveResult {
        value: (lo == hi).then_some(lo),
        lo,
        hi,
        thresholds,
        nodes,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(n: usize, edges: &[(usize, usize)]) -> u32 {
        let g = PlanarGraph::from_edge_list(n, edges).unwrap();
        solve_colve(&g, &SolverConfig::default()).unwrap().value.unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(value(1, &[]), 1);
        assert_eq!(value(2, &[(0, 1)]), 2);
        assert_eq!(value(3, &[(0, 1), (1, 2), (0, 2)]), 3);
        assert_eq!(value(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]), 3);
        assert_eq!(value(4, &[(0, 1), (0, 2), (0, 3)]), 2);
    }

    #[test]
    fn parallel_agrees() {
        let g = PlanarGraph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 3)]).unwrap();
        let seq = solve_colve(&g, &SolverConfig::default()).unwrap();
        let par = solve_colve(&g, &SolverConfig { parallel: true, ..Default::default() }).unwrap();
        assert_eq!(seq.value, par.value);
    }

    #[test]
    fn budget_gives_unknown() {
        let g = PlanarGraph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 3)]).unwrap();
        let r = solve_colve(&g, &SolverConfig { node_budget: Some(3), ..Default::default() }).unwrap();
        assert_eq!(r.value, None);
        assert!(r.lo < r.hi);
        assert!(r.thresholds.iter().any(|t| t.verdict == Verdict::Unknown));
    }

    #[test]
    fn winning_line_reaches_threshold() {
        let g = std::sync::Arc::new(PlanarGraph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap());
        let r = bob_can_force(&g, 2, None, &SolverConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::BobWins);
        let end = GameState::replay(g, &r.line).unwrap();
        assert!(end.max_score().0 >= 2);
    }

    #[test]
    fn from_midgame_state() {
        // path 0-1-2 with 0-1 marked and Bob to move: marking 1-2 scores 2 at 1
        let g = std::sync::Arc::new(PlanarGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap());
        let s = GameState::from_marks(g.clone(), &[Move::Vertex(0), Move::Edge(0)], Side::Bob).unwrap();
        let r = bob_can_force(&g, 2, Some(&s), &SolverConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::BobWins);
        assert_eq!(r.line, vec![Move::Edge(1)]);
    }
}
