use serde::{Deserialize, Serialize};

use markgame_core::game::{GameError, Transcript};
use markgame_core::lattice::{generate, LatticeError, LatticeMeta};
use markgame_core::strategy::{Strategy, StrategyError, StrategySpec, DEFAULT_FREE_PATH_LEN};
use markgame_core::{FaceColor, GameState, LatticeBundle, Move, Side};

#[derive(Debug, Clone, Deserialize)]
pub struct CreateRequest {
    #[serde(flatten)]
    pub lattice: LatticeMeta,
    pub human: Side,
    /// Strategy descriptor for the machine side, e.g. `alice:angle`.
    pub machine: String,
    /// Replaces the machine strategy's seed when it takes one.
    #[serde(default)]
    pub machine_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SessionError {
    BadRequest(String),
    Illegal { reason: String, legal: Vec<String> },
    Machine(String),
}

impl From<LatticeError> for SessionError {
    fn from(e: LatticeError) -> Self {
        SessionError::BadRequest(e.to_string())
    }
}

impl From<StrategyError> for SessionError {
    fn from(e: StrategyError) -> Self {
        SessionError::BadRequest(e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VertexView {
    pub id: u32,
    pub x: f64,
    pub y: f64,
    pub marked: bool,
    pub score: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EdgeView {
    /// Object id, `e:<index>`.
    pub object: String,
    pub ends: [u32; 2],
    pub marked: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FaceView {
    pub id: u32,
    pub cycle: Vec<u32>,
    pub color: Option<FaceColor>,
    pub marked_angle: Option<u32>,
}

/// Everything the board needs; no graph logic on the client.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct View {
    pub id: String,
    pub lattice: LatticeMeta,
    pub human: Side,
    pub machine: String,
    pub to_move: Option<Side>,
    pub round: usize,
    pub game_over: bool,
    /// Largest post-Bob score so far.
    pub score: u32,
    pub trace: Vec<u32>,
    pub history: Vec<String>,
    pub last_machine_move: Option<String>,
    pub vertices: Vec<VertexView>,
    pub edges: Vec<EdgeView>,
    pub faces: Vec<FaceView>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Hint {
    pub object: String,
    pub strategy: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TranscriptView {
    pub lattice: LatticeMeta,
    pub human: Side,
    pub machine: String,
    pub transcript: Transcript,
}

pub struct Session {
    id: String,
    bundle: LatticeBundle,
    human: Side,
    machine_spec: StrategySpec,
    machine: Box<dyn Strategy>,
    state: GameState,
    trace: Vec<u32>,
    last_machine_move: Option<Move>,
}

impl Session {
    /// Builds the lattice and machine strategy; when the human plays Bob the
    /// machine's opening move is already on the board.
    pub fn create(id: String, req: &CreateRequest) -> Result<Session, SessionError> {
        let bundle = generate(&req.lattice)?;
        let mut machine_spec: StrategySpec = req.machine.parse()?;
        if machine_spec.side() == req.human {
            return Err(SessionError::BadRequest(format!("machine strategy {machine_spec} plays the human's side")));
        }
        if let Some(seed) = req.machine_seed {
            machine_spec = match machine_spec {
                StrategySpec::AliceAngle { .. } => StrategySpec::AliceAngle { seed: Some(seed) },
                StrategySpec::AliceExtension { n, .. } => StrategySpec::AliceExtension { n, seed: Some(seed) },
                other => other.with_seed(seed),
            };
        }
        let machine = machine_spec.build(&bundle)?;
        let state = GameState::new(bundle.graph.clone()).map_err(|e| SessionError::BadRequest(e.to_string()))?;
        let mut session =
            Session { id, bundle, human: req.human, machine_spec, machine, state, trace: Vec::new(), last_machine_move: None };
        session.machine_reply()?;
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    fn legal_labels(&self) -> Vec<String> {
        let g = self.state.graph();
        self.state.legal_moves().into_iter().map(|m| m.label(g)).collect()
    }

    fn apply(&mut self, mv: Move) -> Result<(), GameError> {
        self.state.play(mv)?;
        if mv.side() == Side::Bob {
            self.trace.push(self.state.max_score().0);
        }
        Ok(())
    }

    fn machine_reply(&mut self) -> Result<(), SessionError> {
        if self.state.is_over() || self.state.to_move() == self.human {
            return Ok(());
        }
        let mv = self.machine.choose(&self.state).map_err(|e| SessionError::Machine(e.to_string()))?;
        self.apply(mv).map_err(|e| SessionError::Machine(e.to_string()))?;
        self.last_machine_move = Some(mv);
        Ok(())
    }

    /// Applies the human's move, then the machine's reply if the game goes on.
    pub fn submit(&mut self, object: &str) -> Result<(), SessionError> {
        let graph = self.state.graph().clone();
        let mv = match Move::parse(object, &graph) {
            Ok(mv) => mv,
            Err(GameError::BadMoveSyntax(s)) => return Err(SessionError::BadRequest(format!("bad object {s:?}"))),
            Err(e) => return Err(SessionError::Illegal { reason: e.to_string(), legal: self.legal_labels() }),
        };
        if self.state.is_over() {
            return Err(SessionError::Illegal { reason: "game over".into(), legal: Vec::new() });
        }
        if mv.side() != self.human {
            return Err(SessionError::Illegal {
                reason: format!("the human plays {}", self.human),
                legal: self.legal_labels(),
            });
        }
        if let Err(e) = self.apply(mv) {
            return Err(SessionError::Illegal { reason: e.to_string(), legal: self.legal_labels() });
        }
        self.machine_reply()
    }

    /// What the human's side would play: the free-path walk for Bob, the
    /// angle strategy (or its extension on centred lattices) for Alice.
    pub fn hint(&self) -> Result<Hint, SessionError> {
        if self.state.is_over() {
            return Err(SessionError::Illegal { reason: "game over".into(), legal: Vec::new() });
        }
        let candidates = match self.human {
            Side::Bob => vec![StrategySpec::BobFreePath { n: 0, max_len: DEFAULT_FREE_PATH_LEN }],
            Side::Alice => vec![
                StrategySpec::AliceAngle { seed: None },
                StrategySpec::AliceExtension { n: 4, seed: None },
                StrategySpec::AliceGreedy,
            ],
        };
        let (spec, mut strategy) = candidates
            .into_iter()
            .find_map(|spec| spec.build(&self.bundle).ok().map(|s| (spec, s)))
            .ok_or_else(|| SessionError::Machine("no hint strategy applies".into()))?;
        let mv = strategy.choose(&self.state).map_err(|e| SessionError::Machine(e.to_string()))?;
        Ok(Hint { object: mv.label(self.state.graph()), strategy: spec.to_string() })
    }

    pub fn transcript(&self) -> TranscriptView {
        let graph_ref = format!("session:{}", self.id);
        TranscriptView {
            lattice: self.bundle.meta.clone(),
            human: self.human,
            machine: self.machine_spec.to_string(),
            transcript: Transcript::new(self.state.graph(), graph_ref, self.state.history(), self.trace.clone()),
        }
    }

    pub fn view(&self) -> View {
        let g = self.state.graph();
        let scheme = self.bundle.scheme.as_ref();
        View {
            id: self.id.clone(),
            lattice: self.bundle.meta.clone(),
            human: self.human,
            machine: self.machine_spec.to_string(),
            to_move: (!self.state.is_over()).then(|| self.state.to_move()),
            round: self.state.round(),
            game_over: self.state.is_over(),
            score: self.trace.iter().copied().max().unwrap_or(0),
            trace: self.trace.clone(),
            history: self.state.history().iter().map(|m| m.label(g)).collect(),
            last_machine_move: self.last_machine_move.map(|m| m.label(g)),
            vertices: g
                .vertices()
                .iter()
                .enumerate()
                .map(|(v, vx)| VertexView {
                    id: vx.id,
                    x: vx.x,
                    y: vx.y,
                    marked: self.state.is_vertex_marked(v),
                    score: self.state.score(v),
                })
                .collect(),
            edges: (0..g.edge_count())
                .map(|e| EdgeView {
                    object: Move::Edge(e).label(g),
                    ends: g.edge_ids(e),
                    marked: self.state.is_edge_marked(e),
                })
                .collect(),
            faces: g
                .faces()
                .iter()
                .enumerate()
                .map(|(f, face)| FaceView {
                    id: face.id,
                    cycle: face.cycle.iter().map(|&v| g.vertex_id(v)).collect(),
                    color: scheme.and_then(|s| s.color(f)),
                    marked_angle: scheme.and_then(|s| s.marked_angle(f)).map(|v| g.vertex_id(v)),
                })
                .collect(),
        }
    }
}
