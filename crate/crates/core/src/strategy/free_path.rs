use serde::Serialize;

use super::baseline::BobGreedy;
use super::{check_turn, Strategy, StrategyError};
use crate::game::{GameState, Move, Side};

/// A path `v0 .. vk` (`k >= 2`) whose first and last edges are marked, whose
/// interior vertices are unmarked, and where every interior vertex has at
/// least `n + 1` incident edges off the path, `n` of them marked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreePath {
    /// Vertex indices.
    pub vertices: Vec<usize>,
    pub n: u32,
}

impl FreePath {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn interior_ok(state: &GameState, prev: usize, v: usize, next: usize, n: u32) -> bool {
    if state.is_vertex_marked(v) {
        return false;
    }
    let graph = state.graph();
    let off_path = graph.degree(v) - 2;
    let on_path_marked = [prev, next]
        .iter()
        .filter(|&&w| state.is_edge_marked(graph.edge_between(v, w).expect("path follows edges")))
        .count() as u32;
    off_path > n as usize && state.marked_incident(v) - on_path_marked >= n
}

/// Direct check of the definition.
pub fn is_free_path(state: &GameState, path: &[usize], n: u32) -> bool {
    let graph = state.graph();
    if path.len() < 3 {
        return false;
    }
    let mut seen = vec![false; graph.vertex_count()];
    for &v in path {
        if v >= graph.vertex_count() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    let edges: Option<Vec<usize>> = path.windows(2).map(|w| graph.edge_between(w[0], w[1])).collect();
    let Some(edges) = edges else { return false };
    state.is_edge_marked(edges[0])
        && state.is_edge_marked(*edges.last().unwrap())
        && (1..path.len() - 1).all(|i| interior_ok(state, path[i - 1], path[i], path[i + 1], n))
}

struct Search<'a> {
    state: &'a GameState,
    n: u32,
    path: Vec<usize>,
    on_path: Vec<bool>,
}

impl Search<'_> {
    /// Extends the current path; calls `found` on every completed free path
    /// of at most `max_len` edges. Stops early when `found` returns true.
    fn extend(&mut self, max_len: usize, found: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let graph = self.state.graph().clone();
        let k = self.path.len() - 1;
        if k >= max_len {
            return false;
        }
        let cur = *self.path.last().unwrap();
        for &(w, e) in graph.neighbors(cur) {
            if self.on_path[w] {
                continue;
            }
            if k == 0 {
                // first edge must be marked and its far end becomes interior
                if !self.state.is_edge_marked(e) || self.state.is_vertex_marked(w) {
                    continue;
                }
            } else if !interior_ok(self.state, self.path[k - 1], cur, w, self.n) {
                continue;
            }
            self.path.push(w);
            self.on_path[w] = true;
            let stop = (k >= 1 && self.state.is_edge_marked(e) && found(&self.path))
                || (!self.state.is_vertex_marked(w) && self.extend(max_len, found));
            self.path.pop();
            self.on_path[w] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

fn search(state: &GameState, n: u32, max_len: usize, found: &mut dyn FnMut(&[usize]) -> bool) {
    let mut s = Search { state, n, path: Vec::new(), on_path: vec![false; state.graph().vertex_count()] };
    for v0 in 0..state.graph().vertex_count() {
        s.path.push(v0);
        s.on_path[v0] = true;
        let stop = s.extend(max_len, found);
        s.path.pop();
        s.on_path[v0] = false;
        if stop {
            return;
        }
    }
}

/// All `n`-free paths with at most `max_len` edges, each listed once in the
/// orientation that is lexicographically smaller, sorted lexicographically.
pub fn find_free_paths(state: &GameState, n: u32, max_len: usize) -> Vec<FreePath> {
    let mut out = Vec::new();
    search(state, n, max_len, &mut |p| {
        if p.first() < p.last() {
            out.push(FreePath { vertices: p.to_vec(), n });
        }
        false
    });
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

/// The shortest `n`-free path, ties broken lexicographically.
pub fn shortest_free_path(state: &GameState, n: u32, max_len: usize) -> Option<FreePath> {
    for len in 2..=max_len {
        let mut hit = None;
        search(state, n, len, &mut |p| {
            if p.len() - 1 == len {
                hit = Some(p.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(vertices) = hit {
            // depth-first order is lexicographic, so the first hit is the
            // smallest sequence and already in canonical orientation
            return Some(FreePath { vertices, n });
        }
    }
    None
}

/// Bob's forcing walk along the shortest `n`-free path `v0 v1 .. vk`: with
/// `k = 2` he marks an unmarked edge at `v1`; otherwise he marks `v1 v2`,
/// which shortens the path unless Alice answers by marking `v1`. Without a
/// free path he plays greedily.
#[derive(Debug, Clone)]
pub struct FreePathStrategy {
    n: u32,
    max_len: usize,
}

impl FreePathStrategy {
    pub fn new(n: u32, max_len: usize) -> Self {
        FreePathStrategy { n, max_len }
    }
}

impl Strategy for FreePathStrategy {
    fn side(&self) -> Side {
        Side::Bob
    }

    fn descriptor(&self) -> String {
        super::StrategySpec::BobFreePath { n: self.n, max_len: self.max_len }.to_string()
    }

    fn choose(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        check_turn(Side::Bob, state)?;
        let graph = state.graph();
        if let Some(path) = shortest_free_path(state, self.n, self.max_len) {
            let v1 = path.vertices[1];
            let e = if path.len() == 2 {
                graph.neighbors(v1).iter().map(|&(_, e)| e).find(|&e| !state.is_edge_marked(e))
            } else {
                graph.edge_between(v1, path.vertices[2]).filter(|&e| !state.is_edge_marked(e))
            };
            if let Some(e) = e {
                return Ok(Move::Edge(e));
            }
        }
        BobGreedy::pick(state).map(Move::Edge).ok_or(StrategyError::NoLegalMove)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PlanarGraph;
    use std::sync::Arc;

    /// Star with centre 0 and leaves 1..=3, edges (0,1) and (0,2) marked.
    fn cherry() -> GameState {
        let g = Arc::new(PlanarGraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        GameState::from_marks(g, &[Move::Edge(0), Move::Edge(1)], Side::Bob).unwrap()
    }

    #[test]
    fn minimal_free_path() {
        let s = cherry();
        let paths = find_free_paths(&s, 0, 5);
        assert_eq!(paths, vec![FreePath { vertices: vec![1, 0, 2], n: 0 }]);
        assert!(is_free_path(&s, &[2, 0, 1], 0));
        assert!(!is_free_path(&s, &[1, 0, 2], 1));
        let mut bob = FreePathStrategy::new(0, 5);
        assert_eq!(bob.choose(&s).unwrap(), Move::Edge(2));
    }

    #[test]
    fn fresh_game_has_none() {
        let g = Arc::new(PlanarGraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap());
        let s = GameState::new(g).unwrap();
        assert!(find_free_paths(&s, 0, 6).is_empty());
        assert!(shortest_free_path(&s, 0, 6).is_none());
    }

    #[test]
    fn marked_middle_breaks_path() {
        let g = Arc::new(PlanarGraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        let s = GameState::from_marks(g, &[Move::Vertex(0), Move::Edge(0), Move::Edge(1)], Side::Bob).unwrap();
        assert!(find_free_paths(&s, 0, 5).is_empty());
    }

    #[test]
    fn longer_path_through_unmarked_middle() {
        // path 0-1-2-3 with pendant edges 1-4 and 2-5; end edges marked
        let g = Arc::new(PlanarGraph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)]).unwrap());
        let e = |a, b| Move::Edge(g.edge_between(a, b).unwrap());
        let s = GameState::from_marks(g.clone(), &[e(0, 1), e(2, 3)], Side::Bob).unwrap();
        let p = shortest_free_path(&s, 0, 6).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2, 3]);
        let mut bob = FreePathStrategy::new(0, 6);
        assert_eq!(bob.choose(&s).unwrap(), e(1, 2));
    }
}
