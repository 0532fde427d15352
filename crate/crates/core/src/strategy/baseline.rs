use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_turn, pick, Strategy, StrategyError};
use crate::game::{GameState, Move, Side};

/// Marks the unmarked vertex with the most marked incident edges.
#[derive(Debug, Clone, Copy, Default)]
pub struct AliceGreedy;

impl Strategy for AliceGreedy {
    fn side(&self) -> Side {
        Side::Alice
    }

    fn descriptor(&self) -> String {
        "alice:greedy".into()
    }

    fn choose(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        check_turn(Side::Alice, state)?;
        state
            .unmarked_vertex_iter()
            .max_by_key(|&v| (state.marked_incident(v), std::cmp::Reverse(v)))
            .map(Move::Vertex)
            .ok_or(StrategyError::NoLegalMove)
    }
}

/// Marks the edge giving the largest round score afterwards. Ties go to the
/// edge with more unmarked endpoints (it raises more scores), then to the
/// lowest endpoint pair.
#[derive(Debug, Clone, Copy, Default)]
pub struct BobGreedy;

impl BobGreedy {
    pub(crate) fn pick(state: &GameState) -> Option<usize> {
        let graph = state.graph();
        let current = state.max_score().0;
        state.unmarked_edge_iter().max_by_key(|&e| {
            let (u, v) = graph.edge(e);
            let after = |w: usize| if state.is_vertex_marked(w) { 0 } else { state.marked_incident(w) + 1 };
            let open = [u, v].iter().filter(|&&w| !state.is_vertex_marked(w)).count();
            (current.max(after(u)).max(after(v)), open, std::cmp::Reverse(e))
        })
    }
}

impl Strategy for BobGreedy {
    fn side(&self) -> Side {
        Side::Bob
    }

    fn descriptor(&self) -> String {
        "bob:greedy".into()
    }

    fn choose(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        check_turn(Side::Bob, state)?;
        BobGreedy::pick(state).map(Move::Edge).ok_or(StrategyError::NoLegalMove)
    }
}

/// Uniform choice among legal moves under a per-instance seeded generator.
#[derive(Debug, Clone)]
pub struct RandomStrategy {
    side: Side,
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStrategy {
    pub fn new(side: Side, seed: u64) -> Self {
        RandomStrategy { side, seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Strategy for RandomStrategy {
    fn side(&self) -> Side {
        self.side
    }

    fn descriptor(&self) -> String {
        format!("{}:random:seed={}", self.side, self.seed)
    }

    fn choose(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        check_turn(self.side, state)?;
        pick(&state.legal_moves(), &mut self.rng).ok_or(StrategyError::NoLegalMove)
    }
}
