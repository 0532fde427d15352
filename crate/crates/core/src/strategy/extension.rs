use std::sync::Arc;

use super::{check_turn, Strategy, StrategyError};
use crate::game::{GameState, Move, Side};
use crate::graph::PlanarGraph;

/// Lifts an Alice strategy from a core graph to a host graph that contains
/// the core as a vertex-induced subgraph and whose other vertices all have
/// degree below `n`.
///
/// After Bob's edge:
/// - both endpoints outside the core: free move (lowest unmarked vertex);
/// - exactly one endpoint in the core: mark it if unmarked, else free move;
/// - a core edge: ask the inner strategy, playing on the core projection.
///
/// The inner strategy must leave no unmarked core vertex with `n - 1` or more
/// marked core edges after each of Alice's moves; this is checked every move
/// and a violation is returned as an error.
pub struct ExtensionStrategy {
    core: Arc<PlanarGraph>,
    /// Core index of each host vertex.
    to_core: Vec<Option<usize>>,
    /// Host index of each core vertex.
    to_host: Vec<usize>,
    /// Core edge index of each host edge.
    core_edge: Vec<Option<usize>>,
    n: u32,
    inner: Box<dyn Strategy>,
}

impl ExtensionStrategy {
    pub fn new(
        host: &PlanarGraph,
        core: Arc<PlanarGraph>,
        n: u32,
        inner: Box<dyn Strategy>,
    ) -> Result<Self, StrategyError> {
        let mut to_core = vec![None; host.vertex_count()];
        let mut to_host = Vec::with_capacity(core.vertex_count());
        for (i, v) in core.vertices().iter().enumerate() {
            let h = host.index_of(v.id).ok_or(StrategyError::CoreVertexMissing(v.id))?;
            to_core[h] = Some(i);
            to_host.push(h);
        }
        let mut core_edge = vec![None; host.edge_count()];
        for e in 0..core.edge_count() {
            let (u, v) = core.edge(e);
            let h = host
                .edge_between(to_host[u], to_host[v])
                .ok_or_else(|| {
                    let [a, b] = core.edge_ids(e);
                    StrategyError::CoreEdgeMissing(a, b)
                })?;
            core_edge[h] = Some(e);
        }
        for e in 0..host.edge_count() {
            let (u, v) = host.edge(e);
            if to_core[u].is_some() && to_core[v].is_some() && core_edge[e].is_none() {
                let [a, b] = host.edge_ids(e);
                return Err(StrategyError::CoreNotInduced(a, b));
            }
        }
        for v in 0..host.vertex_count() {
            if to_core[v].is_none() && host.degree(v) >= n as usize {
                return Err(StrategyError::OutsideDegree { vertex: host.vertex_id(v), degree: host.degree(v), n });
            }
        }
        Ok(ExtensionStrategy { core, to_core, to_host, core_edge, n, inner })
    }

    fn project(&self, state: &GameState) -> Result<GameState, StrategyError> {
        let moves: Vec<Move> = state
            .history()
            .iter()
            .filter_map(|&mv| match mv {
                Move::Vertex(v) => self.to_core[v].map(Move::Vertex),
                Move::Edge(e) => self.core_edge[e].map(Move::Edge),
            })
            .collect();
        GameState::from_marks(self.core.clone(), &moves, Side::Alice).map_err(|_| StrategyError::NoLegalMove)
    }

    fn route(&mut self, state: &GameState) -> Result<usize, StrategyError> {
        let free = || state.unmarked_vertex_iter().next().ok_or(StrategyError::NoLegalMove);
        let Some(Move::Edge(e)) = state.last_move() else {
            return self.delegate(state);
        };
        if self.core_edge[e].is_some() {
            return self.delegate(state);
        }
        let (u, v) = state.graph().edge(e);
        match (self.to_core[u], self.to_core[v]) {
            (Some(_), None) if !state.is_vertex_marked(u) => Ok(u),
            (None, Some(_)) if !state.is_vertex_marked(v) => Ok(v),
            _ => free(),
        }
    }

    fn delegate(&mut self, state: &GameState) -> Result<usize, StrategyError> {
        let projected = self.project(state)?;
        if projected.unmarked_vertex_count() == 0 {
            return state.unmarked_vertex_iter().next().ok_or(StrategyError::NoLegalMove);
        }
        match self.inner.choose(&projected)? {
            Move::Vertex(c) => Ok(self.to_host[c]),
            Move::Edge(_) => Err(StrategyError::WrongSide(Side::Alice)),
        }
    }

    fn check_invariant(&self, state: &GameState, chosen: usize) -> Result<(), StrategyError> {
        let limit = self.n.saturating_sub(1);
        for (c, &h) in self.to_host.iter().enumerate() {
            if h == chosen || state.is_vertex_marked(h) {
                continue;
            }
            let marked = self
                .core
                .neighbors(c)
                .iter()
                .filter(|&&(w, _)| {
                    let e = state.graph().edge_between(h, self.to_host[w]).expect("core edges exist in the host");
                    state.is_edge_marked(e)
                })
                .count() as u32;
            if marked >= limit {
                return Err(StrategyError::ExtensionInvariant { vertex: state.graph().vertex_id(h), marked, limit });
            }
        }
        Ok(())
    }
}

impl Strategy for ExtensionStrategy {
    fn side(&self) -> Side {
        Side::Alice
    }

    fn descriptor(&self) -> String {
        let inner = self.inner.descriptor();
        match inner.strip_prefix("alice:angle:") {
            Some(params) => format!("alice:extension:n={}:{params}", self.n),
            None => format!("alice:extension:n={}", self.n),
        }
    }

    fn choose(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        check_turn(Side::Alice, state)?;
        let v = self.route(state)?;
        self.check_invariant(state, v)?;
        Ok(Move::Vertex(v))
    }
}
