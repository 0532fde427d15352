//! Connected graphs by edge count, up to isomorphism.
//!
//! Graphs with `m + 1` edges are grown from those with `m` edges by adding a
//! pendant edge or an edge between two existing vertices; every connected
//! graph arises this way because it has an edge whose removal leaves a
//! connected graph (a cycle edge, or a leaf edge of a tree). Duplicates are
//! removed by a canonical form: the smallest sorted edge list over all
//! labellings that respect a vertex invariant.

use std::collections::BTreeSet;

use crate::graph::PlanarGraph;

/// A graph on vertices `0..n` in canonical labelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SmallGraph {
    pub fn to_graph(&self) -> PlanarGraph {
        PlanarGraph::from_edge_list(self.n, &self.edges).expect("catalogue graphs are simple")
    }
}

pub fn canonical_form(n: usize, edges: &[(usize, usize)]) -> SmallGraph {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let invariant = |v: usize| {
        let mut nd: Vec<usize> = adj[v].iter().map(|&w| adj[w].len()).collect();
        nd.sort_unstable_by(|a, b| b.cmp(a));
        (std::cmp::Reverse(adj[v].len()), nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| invariant(v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if invariant(c[0]) == invariant(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }

    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut label = vec![0usize; n];
    relabel(&classes, 0, 0, &mut label, edges, &mut best);
    SmallGraph { n, edges: best.unwrap_or_default() }
}

fn relabel(
    classes: &[Vec<usize>],
    class: usize,
    next: usize,
    label: &mut Vec<usize>,
    edges: &[(usize, usize)],
    best: &mut Option<Vec<(usize, usize)>>,
) {
    if class == classes.len() {
        let mut mapped: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| (label[u].min(label[v]), label[u].max(label[v])))
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| mapped < *b) {
            *best = Some(mapped);
        }
        return;
    }
    let mut members = classes[class].clone();
    permute(&mut members, 0, &mut |perm| {
        for (i, &v) in perm.iter().enumerate() {
            label[v] = next + i;
        }
        relabel(classes, class + 1, next + perm.len(), label, edges, best);
    });
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Connected graphs with exactly `m` edges (`m >= 1`), sorted.
pub fn connected_graphs(m: usize) -> Vec<SmallGraph> {
    connected_graphs_up_to(m).pop().unwrap_or_default()
}

/// `result[i]` holds the connected graphs with `i + 1` edges.
pub fn connected_graphs_up_to(max_edges: usize) -> Vec<Vec<SmallGraph>> {
    let mut layers: Vec<Vec<SmallGraph>> = Vec::new();
    if max_edges == 0 {
        return layers;
    }
    layers.push(vec![canonical_form(2, &[(0, 1)])]);
    while layers.len() < max_edges {
        let mut next = BTreeSet::new();
        for g in layers.last().unwrap() {
            let present: BTreeSet<(usize, usize)> = g.edges.iter().copied().collect();
            for u in 0..g.n {
                let mut grown = g.edges.clone();
                grown.push((u, g.n));
                next.insert(canonical_form(g.n + 1, &grown));
                for v in u + 1..g.n {
                    if !present.contains(&(u, v)) {
                        let mut grown = g.edges.clone();
                        grown.push((u, v));
                        next.insert(canonical_form(g.n, &grown));
                    }
                }
            }
        }
        layers.push(next.into_iter().collect());
    }
    layers
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_inputs_agree() {
        let a = canonical_form(4, &[(0, 1), (1, 2), (2, 3)]);
        let b = canonical_form(4, &[(2, 0), (0, 3), (3, 1)]);
        assert_eq!(a, b);
        let star = canonical_form(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_ne!(a, star);
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = connected_graphs_up_to(5).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 3, 5, 12]);
    }
}
