use std::sync::Arc;

use super::{LatticeBundle, LatticeMeta};
use crate::graph::{build_graph, GraphSpec, Vertex};
use crate::rng::SplitMix64;

/// Apollonian network grown from a triangle by `insertions` face splits.
///
/// Faces are kept in a list, initially `[(0, 1, 2)]`. Each step draws an index
/// `f` uniformly from the list with [`SplitMix64::below`], adds vertex `d` at
/// the centroid of face `(a, b, c)`, overwrites slot `f` with `(a, b, d)` and
/// appends `(b, c, d)` then `(c, a, d)`. Vertex ids are `0, 1, 2` followed by
/// insertion order; face ids are list positions.
pub fn gen_apollonian(insertions: u32, seed: u64) -> LatticeBundle {
    let mut rng = SplitMix64::new(seed);
    let h = 3f64.sqrt() / 2.0;
    let mut vertices = vec![
        Vertex { id: 0, x: 0.0, y: 0.0 },
        Vertex { id: 1, x: 1.0, y: 0.0 },
        Vertex { id: 2, x: 0.5, y: h },
    ];
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces: Vec<[u32; 3]> = vec![[0, 1, 2]];
    for _ in 0..insertions {
        let f = rng.below(faces.len() as u64) as usize;
        let [a, b, c] = faces[f];
        let d = vertices.len() as u32;
        let (x, y) = [a, b, c].iter().fold((0.0, 0.0), |(x, y), &v| {
            (x + vertices[v as usize].x / 3.0, y + vertices[v as usize].y / 3.0)
        });
        vertices.push(Vertex { id: d, x, y });
        edges.extend([(a, d), (b, d), (c, d)]);
        faces[f] = [a, b, d];
        faces.push([b, c, d]);
        faces.push([c, a, d]);
    }
    let spec = GraphSpec {
        vertices,
        edges,
        faces: faces.iter().enumerate().map(|(i, f)| (i as u32, f.to_vec())).collect(),
        faces_complete: true,
    };
    let graph = build_graph(spec).expect("Apollonian construction is a valid plane graph");
    LatticeBundle {
        meta: LatticeMeta::apollonian(insertions, seed),
        graph: Arc::new(graph),
        scheme: None,
        base: None,
    }
}
