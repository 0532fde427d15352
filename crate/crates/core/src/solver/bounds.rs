use serde::Serialize;
use thiserror::Error;

use super::{orientation_bound, solve_colve, SolverConfig, SolverError};
use crate::graph::{PlanarGraph, SubgraphError};

/// Proven range for the game value of a graph.
#[derive(Debug, Clone, Serialize)]
pub struct Bracket {
    pub lo: u32,
    pub hi: u32,
    pub max_degree: u32,
    /// Smallest achievable maximum out-degree over all orientations.
    pub orientation_d: u32,
    /// Lower bound contributed by each supplied subgraph, in order.
    pub subgraph_lower_bounds: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("subgraph {index}: {source}")]
    NotSubgraph {
        index: usize,
        #[source]
        source: SubgraphError,
    },
    #[error("subgraph {index}: {source}")]
    Solver {
        index: usize,
        #[source]
        source: SolverError,
    },
}

/// Upper bound `min(max degree + 1, d + 2)`; lower bound 2 for any graph with
/// an edge, raised by the solved value of each subgraph (the value never
/// grows when passing to a subgraph). Subgraphs refer to vertices by id.
pub fn bounds_report(
    graph: &PlanarGraph,
    subgraphs: &[PlanarGraph],
    config: &SolverConfig,
) -> Result<Bracket, BoundsError> {
    let max_degree = graph.max_degree() as u32;
    let d = orientation_bound(graph).max_out_degree;
    let hi = (max_degree + 1).min(d + 2);
    let mut lo = if graph.edge_count() > 0 { 2 } else { 1 };
    let mut sub_bounds = Vec::with_capacity(subgraphs.len());
    for (index, h) in subgraphs.iter().enumerate() {
        h.check_subgraph_of(graph).map_err(|source| BoundsError::NotSubgraph { index, source })?;
        let r = solve_colve(h, config).map_err(|source| BoundsError::Solver { index, source })?;
        sub_bounds.push(r.lo);
        lo = lo.max(r.lo);
    }
    Ok(Bracket { lo: lo.min(hi), hi, max_degree, orientation_d: d, subgraph_lower_bounds: sub_bounds })
}
