#![allow(dead_code)]

use std::sync::Arc;

use markgame_core::{GameState, Move, PlanarGraph, Side};

/// Largest final score Bob can force, by plain minimax over every line of
/// play. No memo, no pruning, no shared code with the solver.
pub fn oracle_score(n: usize, edges: &[(usize, usize)]) -> u32 {
    let mut vm = vec![false; n];
    let mut em = vec![false; edges.len()];
    minimax(n, edges, &mut vm, &mut em, true)
}

fn minimax(n: usize, edges: &[(usize, usize)], vm: &mut [bool], em: &mut [bool], alice: bool) -> u32 {
    if vm.iter().all(|&m| m) || em.iter().all(|&m| m) {
        return 0;
    }
    if alice {
        let mut best = u32::MAX;
        for v in 0..n {
            if !vm[v] {
                vm[v] = true;
                best = best.min(minimax(n, edges, vm, em, false));
                vm[v] = false;
            }
        }
        best
    } else {
        let mut best = 0;
        for e in 0..edges.len() {
            if !em[e] {
                em[e] = true;
                let now = round_score(n, edges, vm, em);
                best = best.max(now.max(minimax(n, edges, vm, em, true)));
                em[e] = false;
            }
        }
        best
    }
}

fn round_score(n: usize, edges: &[(usize, usize)], vm: &[bool], em: &[bool]) -> u32 {
    let mut count = vec![0u32; n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        if em[e] {
            count[u] += 1;
            count[v] += 1;
        }
    }
    (0..n).filter(|&v| !vm[v]).map(|v| count[v]).max().unwrap_or(0)
}

/// Smallest maximum out-degree over all `2^m` orientations.
pub fn brute_orientation(graph: &PlanarGraph) -> u32 {
    let m = graph.edge_count();
    assert!(m <= 20, "brute force is for small graphs");
    let mut best = u32::MAX;
    for mask in 0u32..(1 << m) {
        let mut out = vec![0u32; graph.vertex_count()];
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            out[if mask >> e & 1 == 1 { u } else { v }] += 1;
        }
        best = best.min(out.into_iter().max().unwrap_or(0));
    }
    best
}

/// Path `0..=k` whose first and last edges are marked. Each interior vertex
/// gets `n` marked pendant edges and one unmarked one. Leaves and path ends
/// are marked vertices when `mark_outer` holds. Bob is to move.
pub fn free_path_instance(n: u32, k: usize, mark_outer: bool) -> GameState {
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, i + 1)).collect();
    let mut marked_edges = vec![(0, 1), (k - 1, k)];
    let mut leaves = Vec::new();
    let mut next = k + 1;
    for v in 1..k {
        for j in 0..=n {
            edges.push((v, next));
            if j < n {
                marked_edges.push((v, next));
            }
            leaves.push(next);
            next += 1;
        }
    }
    let graph = Arc::new(PlanarGraph::from_edge_list(next, &edges).unwrap());
    let mut moves: Vec<Move> =
        marked_edges.iter().map(|&(u, v)| Move::Edge(graph.edge_between(u, v).unwrap())).collect();
    if mark_outer {
        moves.extend(leaves.iter().chain([0, k].iter()).map(|&v| Move::Vertex(v)));
    }
    GameState::from_marks(graph, &moves, Side::Bob).unwrap()
}

/// A 3-free path of length 5 whose four interior vertices each carry four
/// pendant edges, three of them marked.
pub fn long_three_free_path() -> GameState {
    free_path_instance(3, 5, true)
}

pub fn k(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub fn cycle(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}
