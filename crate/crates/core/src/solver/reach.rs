use std::collections::HashMap;

use thiserror::Error;

use crate::game::{GameError, GameState, Move, Side};
use crate::strategy::{Strategy, StrategyError};

/// A side in [`reach`]: either searched over every legal move, or a fixed
/// strategy. Fixed strategies must be deterministic functions of the marks
/// and the last move, since positions are memoised on exactly that.
pub enum Player<'a> {
    Free,
    Fixed(&'a mut dyn Strategy),
}

#[derive(Debug, Clone)]
pub struct Reach {
    /// `None` when the node budget ran out.
    pub reached: Option<bool>,
    /// A line consistent with the verdict: when the goal is reached, one
    /// that reaches it (ending at the move that does); otherwise one where a
    /// free Alice avoids it to the end of the game.
    pub line: Vec<Move>,
    pub nodes: u64,
}

#[derive(Debug, Error)]
pub enum ReachError {
    #[error("{side} strategy failed: {source}")]
    Strategy { side: Side, source: StrategyError },
    #[error("{side} strategy played an illegal move: {source}")]
    Illegal { side: Side, source: GameError },
}

enum Stop {
    Budget,
    Failed(ReachError),
}

type Key = (Vec<u64>, Option<Move>);

struct Search<'a, 'g> {
    alice: Player<'a>,
    bob: Player<'a>,
    goal: &'g dyn Fn(&GameState, Side) -> bool,
    memo: HashMap<Key, bool>,
    nodes: u64,
    budget: u64,
}

fn key(state: &GameState) -> Key {
    let mut words = Vec::new();
    for mask in [state.marked_vertex_mask(), state.marked_edge_mask()] {
        for chunk in mask.chunks(64) {
            words.push(chunk.iter().enumerate().filter(|(_, &b)| b).fold(0u64, |acc, (i, _)| acc | 1 << i));
        }
    }
    // the side to move is implied by the last move except at the root
    words.push(state.to_move() as u64);
    (words, state.last_move())
}

impl Search<'_, '_> {
    /// Children to consider at `state`: the fixed strategy's move or all moves.
    fn options(&mut self, state: &GameState) -> Result<(bool, Vec<Move>), Stop> {
        let side = state.to_move();
        let player = match side {
            Side::Alice => &mut self.alice,
            Side::Bob => &mut self.bob,
        };
        match player {
            Player::Free => Ok((true, state.legal_moves())),
            Player::Fixed(s) => {
                let mv = s.choose(state).map_err(|source| Stop::Failed(ReachError::Strategy { side, source }))?;
                Ok((false, vec![mv]))
            }
        }
    }

    fn child(&self, state: &GameState, mv: Move) -> Result<(GameState, bool), Stop> {
        let side = state.to_move();
        let next = state
            .apply_move(mv)
            .map_err(|source| Stop::Failed(ReachError::Illegal { side, source }))?;
        let hit = (self.goal)(&next, side);
        Ok((next, hit))
    }

    fn reaches(&mut self, state: &GameState) -> Result<bool, Stop> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Stop::Budget);
        }
        if state.is_over() {
            return Ok(false);
        }
        let k = key(state);
        if let Some(&v) = self.memo.get(&k) {
            return Ok(v);
        }
        let bob = state.to_move() == Side::Bob;
        let (_, moves) = self.options(state)?;
        // Bob needs one reaching child, Alice must have all children reach
        let mut result = !bob;
        for mv in moves {
            let (next, hit) = self.child(state, mv)?;
            let r = hit || self.reaches(&next)?;
            if r == bob {
                result = bob;
                break;
            }
        }
        self.memo.insert(k, result);
        Ok(result)
    }

    fn line(&mut self, start: &GameState, reached: bool) -> Result<Vec<Move>, Stop> {
        let mut state = start.clone();
        let mut line = Vec::new();
        while !state.is_over() {
            let bob = state.to_move() == Side::Bob;
            let (_, moves) = self.options(&state)?;
            let mut pick = None;
            for mv in moves {
                let (next, hit) = self.child(&state, mv)?;
                let r = hit || self.reaches(&next)?;
                // follow a child with the same verdict; at nodes where the
                // verdict is forced any child will do
                if r == reached || (bob && !reached) || (!bob && reached) {
                    pick = Some((mv, next, hit));
                    break;
                }
            }
            let (mv, next, hit) = pick.expect("a child matches the verdict");
            line.push(mv);
            state = next;
            if hit && reached {
                break;
            }
        }
        Ok(line)
    }
}

/// Whether Bob can bring about `goal`, checked after every half-move with
/// the side that just moved. Free Bob picks any move, free Alice must avoid
/// the goal along every move.
pub fn reach<'a>(
    start: &GameState,
    alice: Player<'a>,
    bob: Player<'a>,
    goal: &dyn Fn(&GameState, Side) -> bool,
    budget: Option<u64>,
) -> Result<Reach, ReachError> {
    let mut search = Search { alice, bob, goal, memo: HashMap::new(), nodes: 0, budget: budget.unwrap_or(u64::MAX) };
    let reached = match search.reaches(start) {
        Ok(r) => r,
        Err(Stop::Budget) => return Ok(Reach { reached: None, line: Vec::new(), nodes: search.nodes }),
        Err(Stop::Failed(e)) => return Err(e),
    };
    search.budget = u64::MAX;
    let line = match search.line(start, reached) {
        Ok(line) => line,
        Err(Stop::Failed(e)) => return Err(e),
        Err(Stop::Budget) => unreachable!("budget lifted"),
    };
    Ok(Reach { reached: Some(reached), line, nodes: search.nodes })
}
