//! Game state, legal moves, scoring and the match driver.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::PlanarGraph;
use crate::strategy::{Strategy, StrategyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Alice,
    Bob,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Alice => Side::Bob,
            Side::Bob => Side::Alice,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Alice => "alice",
            Side::Bob => "bob",
        })
    }
}

/// A half-move. Vertices and edges are graph indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Vertex(usize),
    Edge(usize),
}

impl Move {
    pub fn side(self) -> Side {
        match self {
            Move::Vertex(_) => Side::Alice,
            Move::Edge(_) => Side::Bob,
        }
    }

    /// `v:<vertex id>` or `e:<edge index>`.
    pub fn label(self, graph: &PlanarGraph) -> String {
        match self {
            Move::Vertex(v) => format!("v:{}", graph.vertex_id(v)),
            Move::Edge(e) => format!("e:{e}"),
        }
    }

    /// Parses `v:<vertex id>` or `e:<edge index>`.
    pub fn parse(text: &str, graph: &PlanarGraph) -> Result<Move, GameError> {
        let bad = || GameError::BadMoveSyntax(text.to_string());
        let (kind, num) = text.trim().split_once(':').ok_or_else(bad)?;
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "v" => u32::try_from(num)
                .ok()
                .and_then(|id| graph.index_of(id))
                .map(Move::Vertex)
                .ok_or(GameError::UnknownVertex(num)),
            "e" => usize::try_from(num)
                .ok()
                .filter(|&e| e < graph.edge_count())
                .map(Move::Edge)
                .ok_or(GameError::UnknownEdge(num)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("the game needs at least one vertex")]
    EmptyGraph,
    #[error("it is {expected}'s turn")]
    WrongSide { expected: Side },
    #[error("{0:?} is already marked")]
    AlreadyMarked(Move),
    #[error("the game is over")]
    GameOver,
    #[error("no vertex with id {0}")]
    UnknownVertex(u64),
    #[error("no edge with index {0}")]
    UnknownEdge(u64),
    #[error("cannot parse move {0:?}; expected v:<id> or e:<index>")]
    BadMoveSyntax(String),
}

#[derive(Debug, Clone)]
pub struct GameState {
    graph: Arc<PlanarGraph>,
    marked_vertices: Vec<bool>,
    marked_edges: Vec<bool>,
    /// Marked incident edges per vertex.
    incident: Vec<u32>,
    unmarked_vertices: usize,
    unmarked_edges: usize,
    to_move: Side,
    history: Vec<Move>,
}

impl GameState {
    pub fn new(graph: Arc<PlanarGraph>) -> Result<Self, GameError> {
        if graph.vertex_count() == 0 {
            return Err(GameError::EmptyGraph);
        }
        let (n, m) = (graph.vertex_count(), graph.edge_count());
        Ok(GameState {
            graph,
            marked_vertices: vec![false; n],
            marked_edges: vec![false; m],
            incident: vec![0; n],
            unmarked_vertices: n,
            unmarked_edges: m,
            to_move: Side::Alice,
            history: Vec::new(),
        })
    }

    /// Replays `moves` from the start, checking every move.
    pub fn replay(graph: Arc<PlanarGraph>, moves: &[Move]) -> Result<Self, GameError> {
        let mut state = GameState::new(graph)?;
        for &mv in moves {
            state.play(mv)?;
        }
        Ok(state)
    }

    /// Builds an arbitrary position: the given marks in the given order,
    /// without turn alternation or end-of-game checks. Used for analysing
    /// constructed positions and projections onto subgraphs.
    pub fn from_marks(graph: Arc<PlanarGraph>, moves: &[Move], to_move: Side) -> Result<Self, GameError> {
        let mut state = GameState::new(graph)?;
        for &mv in moves {
            state.check_object(mv)?;
            state.mark(mv);
        }
        state.to_move = to_move;
        Ok(state)
    }

    pub fn graph(&self) -> &Arc<PlanarGraph> {
        &self.graph
    }

    pub fn is_vertex_marked(&self, v: usize) -> bool {
        self.marked_vertices[v]
    }

    pub fn is_edge_marked(&self, e: usize) -> bool {
        self.marked_edges[e]
    }

    pub fn marked_vertex_mask(&self) -> &[bool] {
        &self.marked_vertices
    }

    pub fn marked_edge_mask(&self) -> &[bool] {
        &self.marked_edges
    }

    /// Number of marked edges at `v`, whether or not `v` is marked.
    pub fn marked_incident(&self, v: usize) -> u32 {
        self.incident[v]
    }

    pub fn unmarked_vertex_count(&self) -> usize {
        self.unmarked_vertices
    }

    pub fn unmarked_edge_count(&self) -> usize {
        self.unmarked_edges
    }

    pub fn to_move(&self) -> Side {
        self.to_move
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn last_move(&self) -> Option<Move> {
        self.history.last().copied()
    }

    /// Completed rounds, i.e. Bob moves so far.
    pub fn round(&self) -> usize {
        self.history.iter().filter(|m| matches!(m, Move::Edge(_))).count()
    }

    pub fn is_over(&self) -> bool {
        self.unmarked_vertices == 0 || self.unmarked_edges == 0
    }

    pub fn legal_moves(&self) -> Vec<Move> {
        if self.is_over() {
            return Vec::new();
        }
        match self.to_move {
            Side::Alice => self.unmarked_vertex_iter().map(Move::Vertex).collect(),
            Side::Bob => self.unmarked_edge_iter().map(Move::Edge).collect(),
        }
    }

    pub fn unmarked_vertex_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.marked_vertices.len()).filter(|&v| !self.marked_vertices[v])
    }

    pub fn unmarked_edge_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.marked_edges.len()).filter(|&e| !self.marked_edges[e])
    }

    /// Score of `v`: 0 once marked, otherwise its marked incident edges.
    pub fn score(&self, v: usize) -> u32 {
        if self.marked_vertices[v] {
            0
        } else {
            self.incident[v]
        }
    }

    pub fn vertex_score(&self, v: usize) -> Result<u32, GameError> {
        if v >= self.marked_vertices.len() {
            return Err(GameError::UnknownVertex(v as u64));
        }
        Ok(self.score(v))
    }

    /// Largest score and the lowest vertex attaining it (absent when every
    /// vertex is marked).
    pub fn max_score(&self) -> (u32, Option<usize>) {
        let mut best = (0, None);
        for v in self.unmarked_vertex_iter() {
            if best.1.is_none() || self.incident[v] > best.0 {
                best = (self.incident[v], Some(v));
            }
        }
        best
    }

    pub fn apply_move(&self, mv: Move) -> Result<GameState, GameError> {
        let mut next = self.clone();
        next.play(mv)?;
        Ok(next)
    }

    /// In-place [`GameState::apply_move`].
    pub fn play(&mut self, mv: Move) -> Result<(), GameError> {
        if self.is_over() {
            return Err(GameError::GameOver);
        }
        if mv.side() != self.to_move {
            return Err(GameError::WrongSide { expected: self.to_move });
        }
        self.check_object(mv)?;
        self.mark(mv);
        self.to_move = self.to_move.other();
        Ok(())
    }

    fn check_object(&self, mv: Move) -> Result<(), GameError> {
        let marked = match mv {
            Move::Vertex(v) => *self.marked_vertices.get(v).ok_or(GameError::UnknownVertex(v as u64))?,
            Move::Edge(e) => *self.marked_edges.get(e).ok_or(GameError::UnknownEdge(e as u64))?,
        };
        if marked {
            return Err(GameError::AlreadyMarked(mv));
        }
        Ok(())
    }

    fn mark(&mut self, mv: Move) {
        match mv {
            Move::Vertex(v) => {
                self.marked_vertices[v] = true;
                self.unmarked_vertices -= 1;
            }
            Move::Edge(e) => {
                self.marked_edges[e] = true;
                self.unmarked_edges -= 1;
                let (u, v) = self.graph.edge(e);
                self.incident[u] += 1;
                self.incident[v] += 1;
            }
        }
        self.history.push(mv);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    VerticesExhausted,
    EdgesExhausted,
    RoundCap,
}

#[derive(Debug, Clone)]
pub struct MatchResult {
    /// Largest post-Bob round score.
    pub final_score: u32,
    /// Vertex and round (1-based) where `final_score` was first reached.
    pub achieved_at: Option<(usize, usize)>,
    /// Round score after each Bob move.
    pub trace: Vec<u32>,
    /// Round score after each Alice move.
    pub post_alice: Vec<u32>,
    pub history: Vec<Move>,
    pub termination: Termination,
}

impl MatchResult {
    pub fn max_post_alice(&self) -> u32 {
        self.post_alice.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Error)]
pub enum MatchError {
    #[error("{side} strategy {descriptor} failed: {source}")]
    Strategy {
        side: Side,
        descriptor: String,
        #[source]
        source: StrategyError,
    },
    #[error("{side} strategy {descriptor} played an illegal move: {source}")]
    IllegalMove {
        side: Side,
        descriptor: String,
        #[source]
        source: GameError,
    },
    #[error(transparent)]
    Setup(#[from] GameError),
}

/// Plays Alice against Bob from the empty position until the game ends or
/// `round_cap` rounds have been played.
pub fn play_match(
    graph: Arc<PlanarGraph>,
    alice: &mut dyn Strategy,
    bob: &mut dyn Strategy,
    round_cap: Option<usize>,
) -> Result<MatchResult, MatchError> {
    let mut state = GameState::new(graph)?;
    let mut trace = Vec::new();
    let mut post_alice = Vec::new();
    let mut best: (u32, Option<(usize, usize)>) = (0, None);
    let termination = loop {
        if state.unmarked_vertex_count() == 0 {
            break Termination::VerticesExhausted;
        }
        if state.unmarked_edge_count() == 0 {
            break Termination::EdgesExhausted;
        }
        if round_cap.is_some_and(|cap| trace.len() >= cap) {
            break Termination::RoundCap;
        }
        let player: &mut dyn Strategy = match state.to_move() {
            Side::Alice => &mut *alice,
            Side::Bob => &mut *bob,
        };
        let side = state.to_move();
        let mv = player.choose(&state).map_err(|source| MatchError::Strategy {
            side,
            descriptor: player.descriptor(),
            source,
        })?;
        state.play(mv).map_err(|source| MatchError::IllegalMove {
            side,
            descriptor: player.descriptor(),
            source,
        })?;
        let (score, witness) = state.max_score();
        match side {
            Side::Alice => post_alice.push(score),
            Side::Bob => {
                trace.push(score);
                if best.1.is_none() || score > best.0 {
                    best = (score, witness.map(|v| (v, trace.len())));
                }
            }
        }
    };
    Ok(MatchResult {
        final_score: best.0,
        achieved_at: best.1,
        trace,
        post_alice,
        history: state.history().to_vec(),
        termination,
    })
}

/// Serialised record of a match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub graph_ref: String,
    pub moves: Vec<TranscriptMove>,
    pub trace: Vec<u32>,
    pub final_score: u32,
}

/// `object_id` is a vertex id for Alice and an edge index for Bob.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptMove {
    pub side: Side,
    pub object_id: u32,
}

impl Transcript {
    pub fn new(graph: &PlanarGraph, graph_ref: impl Into<String>, history: &[Move], trace: Vec<u32>) -> Self {
        let final_score = trace.iter().copied().max().unwrap_or(0);
        Transcript {
            graph_ref: graph_ref.into(),
            moves: history
                .iter()
                .map(|&mv| match mv {
                    Move::Vertex(v) => TranscriptMove { side: Side::Alice, object_id: graph.vertex_id(v) },
                    Move::Edge(e) => TranscriptMove { side: Side::Bob, object_id: e as u32 },
                })
                .collect(),
            trace,
            final_score,
        }
    }

    pub fn from_match(graph: &PlanarGraph, graph_ref: impl Into<String>, result: &MatchResult) -> Self {
        Self::new(graph, graph_ref, &result.history, result.trace.clone())
    }

    pub fn to_moves(&self, graph: &PlanarGraph) -> Result<Vec<Move>, GameError> {
        self.moves
            .iter()
            .map(|m| match m.side {
                Side::Alice => graph
                    .index_of(m.object_id)
                    .map(Move::Vertex)
                    .ok_or(GameError::UnknownVertex(m.object_id as u64)),
                Side::Bob => {
                    let e = m.object_id as usize;
                    if e < graph.edge_count() {
                        Ok(Move::Edge(e))
                    } else {
                        Err(GameError::UnknownEdge(m.object_id as u64))
                    }
                }
            })
            .collect()
    }
}
