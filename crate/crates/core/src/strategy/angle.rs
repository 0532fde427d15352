use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{any_unmarked_vertex, check_turn, pick, Strategy, StrategyError};
use crate::game::{GameState, Move, Side};
use crate::graph::PlanarGraph;
use crate::scheme::MarkingScheme;
use crate::validate::validate_scheme;

/// The gray triangle containing `edge`.
pub fn corresponding_triangle(graph: &PlanarGraph, scheme: &MarkingScheme, edge: usize) -> Result<usize, StrategyError> {
    graph
        .edge_faces(edge)
        .iter()
        .copied()
        .find(|&f| scheme.is_gray(f) && graph.face(f).is_triangle())
        .ok_or(StrategyError::NoGrayOwner(edge))
}

/// Whether `edge` was the 1st, 2nd or 3rd edge of its gray triangle to be
/// marked, by the order of the state's history.
pub fn marked_edge_rank(state: &GameState, scheme: &MarkingScheme, edge: usize) -> Result<u8, StrategyError> {
    let graph = state.graph();
    let t = corresponding_triangle(graph, scheme, edge)?;
    let sides = &graph.face(t).edges;
    let mut rank = 0;
    for mv in state.history() {
        if let Move::Edge(e) = *mv {
            if sides.contains(&e) {
                rank += 1;
                if e == edge {
                    return Ok(rank);
                }
            }
        }
    }
    Err(StrategyError::EdgeNotMarked(edge))
}

/// Alice's marked-angle strategy. After Bob marks an edge of gray triangle
/// `T`:
/// - first edge of `T`: mark the vertex at `T`'s marked angle;
/// - second edge: mark the vertex shared by `T`'s two marked edges;
/// - third edge: mark the remaining unmarked vertex of `T`.
///
/// If the chosen vertex is already marked she takes another unmarked vertex
/// of `T`, failing that any unmarked vertex. "Another" and "any" resolve to
/// the lowest id, or to a seeded random choice when a seed is given. Her
/// opening move follows the same rule.
#[derive(Debug, Clone)]
pub struct AngleStrategy {
    /// Gray owner of each edge.
    owner: Vec<usize>,
    /// Corners, sides and marked corner per gray triangle, indexed like `owner`.
    corners: Vec<[usize; 3]>,
    sides: Vec<[usize; 3]>,
    mark: Vec<usize>,
    rng: Option<(u64, ChaCha8Rng)>,
}

impl AngleStrategy {
    pub fn new(graph: &PlanarGraph, scheme: &MarkingScheme, seed: Option<u64>) -> Result<Self, StrategyError> {
        if scheme.face_count() != graph.face_count() {
            return Err(StrategyError::SchemeMismatch { scheme: scheme.face_count(), graph: graph.face_count() });
        }
        let report = validate_scheme(graph, scheme);
        if !report.passed() {
            return Err(StrategyError::InvalidScheme(Box::new(report)));
        }
        let mut slot = vec![usize::MAX; graph.face_count()];
        let mut corners = Vec::new();
        let mut sides = Vec::new();
        let mut mark = Vec::new();
        for f in scheme.gray_faces() {
            let face = graph.face(f);
            slot[f] = corners.len();
            corners.push([face.cycle[0], face.cycle[1], face.cycle[2]]);
            sides.push([face.edges[0], face.edges[1], face.edges[2]]);
            mark.push(scheme.marked_angle(f).expect("validated"));
        }
        let owner = (0..graph.edge_count())
            .map(|e| corresponding_triangle(graph, scheme, e).map(|f| slot[f]))
            .collect::<Result<_, _>>()?;
        Ok(AngleStrategy {
            owner,
            corners,
            sides,
            mark,
            rng: seed.map(|s| (s, ChaCha8Rng::seed_from_u64(s))),
        })
    }

    fn target(&self, state: &GameState, t: usize) -> Option<usize> {
        let marked: Vec<usize> = self.sides[t].iter().copied().filter(|&e| state.is_edge_marked(e)).collect();
        // The triggering edge is the most recent move, so the number of marked
        // sides equals its position in the triangle's marking order.
        match marked.len() {
            1 => Some(self.mark[t]),
            2 => {
                let graph = state.graph();
                let (a, b) = graph.edge(marked[0]);
                let (c, d) = graph.edge(marked[1]);
                [a, b].into_iter().find(|&v| v == c || v == d)
            }
            _ => None,
        }
    }
}

impl Strategy for AngleStrategy {
    fn side(&self) -> Side {
        Side::Alice
    }

    fn descriptor(&self) -> String {
        match &self.rng {
            None => "alice:angle".into(),
            Some((seed, _)) => format!("alice:angle:seed={seed}"),
        }
    }

    fn choose(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        check_turn(Side::Alice, state)?;
        let Some(Move::Edge(e)) = state.last_move() else {
            return any_unmarked_vertex(state, self.rng.as_mut().map(|(_, r)| r)).map(Move::Vertex);
        };
        let t = self.owner[e];
        if let Some(v) = self.target(state, t).filter(|&v| !state.is_vertex_marked(v)) {
            return Ok(Move::Vertex(v));
        }
        let rest: Vec<usize> = self.corners[t].iter().copied().filter(|&v| !state.is_vertex_marked(v)).collect();
        let fallback = match self.rng.as_mut().map(|(_, r)| r) {
            None => rest.iter().min().copied(),
            Some(rng) => pick(&rest, rng),
        };
        match fallback {
            Some(v) => Ok(Move::Vertex(v)),
            None => any_unmarked_vertex(state, self.rng.as_mut().map(|(_, r)| r)).map(Move::Vertex),
        }
    }
}
