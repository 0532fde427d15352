use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::triangular::position;
use super::{canonical_cycle, check_window, Family, LatticeBundle, LatticeError, LatticeMeta};
use crate::graph::{build_graph, GraphSpec, Vertex};

/// Centre of hexagon `(a, b)` in triangular-lattice axial coordinates.
fn centre(a: i32, b: i32, cols: i32) -> (i32, i32) {
    (1 + 2 * a + b, cols - a + b)
}

const RING: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

/// Window of `rows * cols` hexagons. Vertices sit on triangular-lattice
/// points, so the window is a subgraph of the triangular window of size
/// [`hexagonal_host_window`].
pub fn gen_hexagonal(rows: u32, cols: u32) -> Result<LatticeBundle, LatticeError> {
    check_window(rows, cols)?;
    let mut cycles = Vec::new();
    for a in 0..cols as i32 {
        for b in 0..rows as i32 {
            let (c, k) = centre(a, b, cols as i32);
            cycles.push(RING.map(|(dc, dk)| (c + dc, k + dk)));
        }
    }
    let points: BTreeSet<(i32, i32)> = cycles.iter().flatten().copied().collect();
    let snap = |v: f64| (v * 1e6).round() as i64;
    let mut ordered: Vec<(i32, i32)> = points.into_iter().collect();
    ordered.sort_by_key(|&(c, k)| {
        let (x, y) = position(c, k);
        (snap(x), snap(y))
    });
    let id: BTreeMap<(i32, i32), u32> = ordered.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let mut edges = BTreeSet::new();
    for cycle in &cycles {
        for i in 0..6 {
            let (a, b) = (id[&cycle[i]], id[&cycle[(i + 1) % 6]]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let spec = GraphSpec {
        vertices: ordered
            .iter()
            .map(|&(c, k)| {
                let (x, y) = position(c, k);
                Vertex { id: id[&(c, k)], x, y }
            })
            .collect(),
        edges: edges.into_iter().collect(),
        faces: cycles
            .iter()
            .enumerate()
            .map(|(f, cycle)| (f as u32, canonical_cycle(cycle.iter().map(|p| (id[p], position(p.0, p.1))).collect())))
            .collect(),
        faces_complete: true,
    };
    Ok(LatticeBundle {
        meta: LatticeMeta::window(Family::H, rows, cols),
        graph: Arc::new(build_graph(spec)?),
        scheme: None,
        base: None,
    })
}

/// `(rows, cols)` of the smallest triangular window containing the
/// hexagonal window of the given size at the same coordinates.
pub fn hexagonal_host_window(rows: u32, cols: u32) -> (u32, u32) {
    (cols + rows + 1, 2 * cols + rows)
}
