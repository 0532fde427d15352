use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::PlanarGraph;

/// An orientation of every edge. `tails[e]` is the vertex edge `e` points
/// away from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub tails: Vec<usize>,
    pub max_out_degree: u32,
}

impl Orientation {
    pub fn out_degrees(&self, graph: &PlanarGraph) -> Vec<u32> {
        let mut out = vec![0; graph.vertex_count()];
        for &t in &self.tails {
            out[t] += 1;
        }
        out
    }

    /// Each tail is an endpoint of its edge and the claimed maximum is exact.
    pub fn verify(&self, graph: &PlanarGraph) -> bool {
        self.tails.len() == graph.edge_count()
            && self.tails.iter().enumerate().all(|(e, &t)| {
                let (u, v) = graph.edge(e);
                t == u || t == v
            })
            && self.out_degrees(graph).into_iter().max().unwrap_or(0) == self.max_out_degree
    }
}

/// An orientation with maximum out-degree at most `d`, if one exists.
///
/// Max-flow on source -> edge (capacity 1) -> either endpoint (1) -> sink
/// (capacity `d`); the orientation exists iff every edge carries flow.
pub fn orientation_feasible(graph: &PlanarGraph, d: u32) -> Option<Orientation> {
    let m = graph.edge_count();
    let n = graph.vertex_count();
    let source = m + n;
    let sink = source + 1;
    let mut net = Dinic::new(m + n + 2);
    let mut choice = Vec::with_capacity(m);
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        net.add(source, e, 1);
        choice.push((net.add(e, m + u, 1), net.add(e, m + v, 1)));
    }
    for v in 0..n {
        net.add(m + v, sink, d as i64);
    }
    if net.max_flow(source, sink) < m as i64 {
        return None;
    }
    let tails: Vec<usize> = graph
        .edges()
        .iter()
        .zip(&choice)
        .map(|(&(u, v), &(to_u, _))| if net.flow(to_u) > 0 { u } else { v })
        .collect();
    let mut out = vec![0u32; n];
    for &t in &tails {
        out[t] += 1;
    }
    Some(Orientation { tails, max_out_degree: out.into_iter().max().unwrap_or(0) })
}

/// An orientation minimising the maximum out-degree.
pub fn orientation_bound(graph: &PlanarGraph) -> Orientation {
    let (mut lo, mut hi) = (0u32, graph.max_degree() as u32);
    let mut best = orientation_feasible(graph, hi).expect("orienting by degree always works");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match orientation_feasible(graph, mid) {
            Some(o) => {
                hi = mid;
                best = o;
            }
            None => lo = mid + 1,
        }
    }
    best
}

struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new(), level: vec![0; n], next: vec![0; n] }
    }

    /// Adds an arc and its residual twin; returns the arc's index.
    fn add(&mut self, a: usize, b: usize, c: i64) -> usize {
        let id = self.to.len();
        self.head[a].push(id);
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(id + 1);
        self.to.push(a);
        self.cap.push(0);
        id
    }

    fn flow(&self, arc: usize) -> i64 {
        self.cap[arc ^ 1]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &arc in &self.head[a] {
                let b = self.to[arc];
                if self.cap[arc] > 0 && self.level[b] < 0 {
                    self.level[b] = self.level[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, a: usize, t: usize, pushed: i64) -> i64 {
        if a == t {
            return pushed;
        }
        while self.next[a] < self.head[a].len() {
            let arc = self.head[a][self.next[a]];
            let b = self.to[arc];
            if self.cap[arc] > 0 && self.level[b] == self.level[a] + 1 {
                let got = self.dfs(b, t, pushed.min(self.cap[arc]));
                if got > 0 {
                    self.cap[arc] -= got;
                    self.cap[arc ^ 1] += got;
                    return got;
                }
            }
            self.next[a] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|n| *n = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}
