//! Strategies for both sides and the descriptor strings that name them.
//!
//! Descriptors look like `alice:angle`, `bob:freepath:n=3` or
//! `bob:random:seed=42`: side, kind, then `key=value` parameters.

mod angle;
mod baseline;
mod extension;
mod free_path;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::{GameState, Move, Side};
use crate::lattice::LatticeBundle;
use crate::validate::ValidationReport;

pub use angle::{corresponding_triangle, marked_edge_rank, AngleStrategy};
pub use baseline::{AliceGreedy, BobGreedy, RandomStrategy};
pub use extension::ExtensionStrategy;
pub use free_path::{find_free_paths, is_free_path, shortest_free_path, FreePath, FreePathStrategy};

pub trait Strategy: Send {
    fn side(&self) -> Side;

    /// Descriptor string that rebuilds an equivalent strategy.
    fn descriptor(&self) -> String;

    /// A legal move for `state`, which has this strategy's side to move.
    fn choose(&mut self, state: &GameState) -> Result<Move, StrategyError>;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StrategyError {
    #[error("no legal move")]
    NoLegalMove,
    #[error("asked to move for {0}, but it is the other side's turn")]
    WrongSide(Side),
    #[error("the marking scheme does not satisfy the hypotheses:\n{0}")]
    InvalidScheme(Box<ValidationReport>),
    #[error("the marking scheme has {scheme} faces but the graph has {graph}")]
    SchemeMismatch { scheme: usize, graph: usize },
    #[error("edge {0} lies in no gray triangle")]
    NoGrayOwner(usize),
    #[error("edge {0} is not marked")]
    EdgeNotMarked(usize),
    #[error("core vertex {0} is missing from the host graph")]
    CoreVertexMissing(u32),
    #[error("core edge ({0}, {1}) is missing from the host graph")]
    CoreEdgeMissing(u32, u32),
    #[error("host edge ({0}, {1}) joins core vertices but is not in the core")]
    CoreNotInduced(u32, u32),
    #[error("vertex {vertex} outside the core has degree {degree}, needs less than {n}")]
    OutsideDegree { vertex: u32, degree: usize, n: u32 },
    #[error("after Alice's move core vertex {vertex} is unmarked with {marked} marked core edges (limit {limit})")]
    ExtensionInvariant { vertex: u32, marked: u32, limit: u32 },
    #[error("bad strategy descriptor {0:?}")]
    BadDescriptor(String),
    #[error("strategy {0} needs a marking scheme")]
    NeedsScheme(String),
    #[error("strategy {0} needs a graph with an un-centred base (a T-prime or D family)")]
    NeedsCore(String),
}

/// Parsed descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategySpec {
    AliceAngle { seed: Option<u64> },
    AliceExtension { n: u32, seed: Option<u64> },
    AliceGreedy,
    AliceRandom { seed: u64 },
    BobGreedy,
    BobRandom { seed: u64 },
    BobFreePath { n: u32, max_len: usize },
}

pub const DEFAULT_FREE_PATH_LEN: usize = 8;

impl StrategySpec {
    pub fn side(&self) -> Side {
        match self {
            StrategySpec::AliceAngle { .. }
            | StrategySpec::AliceExtension { .. }
            | StrategySpec::AliceGreedy
            | StrategySpec::AliceRandom { .. } => Side::Alice,
            _ => Side::Bob,
        }
    }

    /// The same strategy with its random seed replaced, where it has one.
    pub fn with_seed(&self, seed: u64) -> StrategySpec {
        match self {
            StrategySpec::AliceAngle { seed: Some(_) } => StrategySpec::AliceAngle { seed: Some(seed) },
            StrategySpec::AliceExtension { n, seed: Some(_) } => {
                StrategySpec::AliceExtension { n: *n, seed: Some(seed) }
            }
            StrategySpec::AliceRandom { .. } => StrategySpec::AliceRandom { seed },
            StrategySpec::BobRandom { .. } => StrategySpec::BobRandom { seed },
            other => other.clone(),
        }
    }

    pub fn is_seeded(&self) -> bool {
        self.with_seed(0) != self.with_seed(1)
    }

    pub fn build(&self, bundle: &LatticeBundle) -> Result<Box<dyn Strategy>, StrategyError> {
        Ok(match *self {
            StrategySpec::AliceAngle { seed } => {
                let scheme = bundle.scheme.as_ref().ok_or_else(|| StrategyError::NeedsScheme(self.to_string()))?;
                Box::new(AngleStrategy::new(&bundle.graph, scheme, seed)?)
            }
            StrategySpec::AliceExtension { n, seed } => {
                let base = bundle.base.as_ref().ok_or_else(|| StrategyError::NeedsCore(self.to_string()))?;
                let inner = StrategySpec::AliceAngle { seed }.build(base)?;
                Box::new(ExtensionStrategy::new(&bundle.graph, base.graph.clone(), n, inner)?)
            }
            StrategySpec::AliceGreedy => Box::new(AliceGreedy),
            StrategySpec::AliceRandom { seed } => Box::new(RandomStrategy::new(Side::Alice, seed)),
            StrategySpec::BobGreedy => Box::new(BobGreedy),
            StrategySpec::BobRandom { seed } => Box::new(RandomStrategy::new(Side::Bob, seed)),
            StrategySpec::BobFreePath { n, max_len } => Box::new(FreePathStrategy::new(n, max_len)),
        })
    }
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategySpec::AliceAngle { seed: None } => write!(f, "alice:angle"),
            StrategySpec::AliceAngle { seed: Some(s) } => write!(f, "alice:angle:seed={s}"),
            StrategySpec::AliceExtension { n, seed: None } => write!(f, "alice:extension:n={n}"),
            StrategySpec::AliceExtension { n, seed: Some(s) } => write!(f, "alice:extension:n={n}:seed={s}"),
            StrategySpec::AliceGreedy => write!(f, "alice:greedy"),
            StrategySpec::AliceRandom { seed } => write!(f, "alice:random:seed={seed}"),
            StrategySpec::BobGreedy => write!(f, "bob:greedy"),
            StrategySpec::BobRandom { seed } => write!(f, "bob:random:seed={seed}"),
            StrategySpec::BobFreePath { n, max_len } if *max_len == DEFAULT_FREE_PATH_LEN => {
                write!(f, "bob:freepath:n={n}")
            }
            StrategySpec::BobFreePath { n, max_len } => write!(f, "bob:freepath:n={n}:max_len={max_len}"),
        }
    }
}

impl FromStr for StrategySpec {
    type Err = StrategyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || StrategyError::BadDescriptor(text.to_string());
        let mut parts = text.trim().split(':');
        let side = parts.next().ok_or_else(bad)?;
        let kind = parts.next().ok_or_else(bad)?;
        let mut n = None;
        let mut seed = None;
        let mut max_len = None;
        for param in parts {
            let (key, value) = param.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.parse().map_err(|_| bad())?;
            match key {
                "n" => n = Some(u32::try_from(value).map_err(|_| bad())?),
                "seed" => seed = Some(value),
                "max_len" => max_len = Some(value as usize),
                _ => return Err(bad()),
            }
        }
        let spec = match (side, kind) {
            ("alice", "angle") => StrategySpec::AliceAngle { seed },
            ("alice", "extension") => StrategySpec::AliceExtension { n: n.unwrap_or(4), seed },
            ("alice", "greedy") => StrategySpec::AliceGreedy,
            ("alice", "random") => StrategySpec::AliceRandom { seed: seed.unwrap_or(0) },
            ("bob", "greedy") => StrategySpec::BobGreedy,
            ("bob", "random") => StrategySpec::BobRandom { seed: seed.unwrap_or(0) },
            ("bob", "freepath") => StrategySpec::BobFreePath {
                n: n.unwrap_or(0),
                max_len: max_len.unwrap_or(DEFAULT_FREE_PATH_LEN),
            },
            _ => return Err(bad()),
        };
        // reject parameters the kind does not take
        let takes_n = matches!(spec, StrategySpec::AliceExtension { .. } | StrategySpec::BobFreePath { .. });
        let takes_seed = matches!(
            spec,
            StrategySpec::AliceAngle { .. }
                | StrategySpec::AliceExtension { .. }
                | StrategySpec::AliceRandom { .. }
                | StrategySpec::BobRandom { .. }
        );
        let takes_len = matches!(spec, StrategySpec::BobFreePath { .. });
        if (n.is_some() && !takes_n) || (seed.is_some() && !takes_seed) || (max_len.is_some() && !takes_len) {
            return Err(bad());
        }
        Ok(spec)
    }
}

pub(crate) fn check_turn(side: Side, state: &GameState) -> Result<(), StrategyError> {
    if state.to_move() != side {
        return Err(StrategyError::WrongSide(side));
    }
    if state.is_over() {
        return Err(StrategyError::NoLegalMove);
    }
    Ok(())
}

/// Lowest unmarked vertex, or a seeded uniform choice.
pub(crate) fn any_unmarked_vertex(
    state: &GameState,
    rng: Option<&mut rand_chacha::ChaCha8Rng>,
) -> Result<usize, StrategyError> {
    match rng {
        None => state.unmarked_vertex_iter().next().ok_or(StrategyError::NoLegalMove),
        Some(rng) => {
            let all: Vec<usize> = state.unmarked_vertex_iter().collect();
            pick(&all, rng).ok_or(StrategyError::NoLegalMove)
        }
    }
}

pub(crate) fn pick<T: Copy>(items: &[T], rng: &mut rand_chacha::ChaCha8Rng) -> Option<T> {
    use rand::Rng;
    if items.is_empty() {
        None
    } else {
        Some(items[rng.random_range(0..items.len())])
    }
}
