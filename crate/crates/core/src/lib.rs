//! Vertex-edge marking game toolkit.
//!
//! Alice marks vertices, Bob marks edges, alternately. The score of an
//! unmarked vertex is its number of marked incident edges; Bob tries to push
//! some score high, Alice tries to keep every score low. This crate has the
//! graph model, lattice generators, the game engine, strategies for both
//! sides, and an exact solver for small graphs.

pub mod catalog;
pub mod doc;
pub mod game;
pub mod graph;
pub mod lattice;
pub mod rng;
pub mod scheme;
pub mod solver;
pub mod strategy;
pub mod validate;

pub use game::{play_match, GameState, MatchResult, Move, Side};
pub use graph::{build_graph, GraphSpec, PlanarGraph, Vertex};
pub use lattice::LatticeBundle;
pub use scheme::{FaceColor, MarkingScheme};
pub use validate::{validate_scheme, ValidationReport};
