//! Face colourings and angle markings, plus searches that construct them.

use serde::{Deserialize, Serialize};

use crate::graph::PlanarGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceColor {
    Gray,
    White,
}

/// Per-face colour and marked angle, indexed by face index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MarkingScheme {
    colors: Vec<Option<FaceColor>>,
    marks: Vec<Option<usize>>,
}

impl MarkingScheme {
    /// Empty scheme (no colours, no marks) for a graph with `faces` faces.
    pub fn blank(faces: usize) -> Self {
        MarkingScheme { colors: vec![None; faces], marks: vec![None; faces] }
    }

    pub fn from_parts(colors: Vec<Option<FaceColor>>, marks: Vec<Option<usize>>) -> Self {
        assert_eq!(colors.len(), marks.len(), "colour and mark vectors differ in length");
        MarkingScheme { colors, marks }
    }

    pub fn from_coloring(coloring: &[FaceColor]) -> Self {
        MarkingScheme {
            colors: coloring.iter().copied().map(Some).collect(),
            marks: vec![None; coloring.len()],
        }
    }

    pub fn face_count(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, f: usize) -> Option<FaceColor> {
        self.colors.get(f).copied().flatten()
    }

    pub fn set_color(&mut self, f: usize, color: Option<FaceColor>) {
        self.colors[f] = color;
    }

    /// Marked vertex (as a vertex index) of face `f`.
    pub fn marked_angle(&self, f: usize) -> Option<usize> {
        self.marks.get(f).copied().flatten()
    }

    pub fn set_marked_angle(&mut self, f: usize, vertex: Option<usize>) {
        self.marks[f] = vertex;
    }

    pub fn is_gray(&self, f: usize) -> bool {
        self.color(f) == Some(FaceColor::Gray)
    }

    pub fn gray_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.colors.len()).filter(|&f| self.is_gray(f))
    }

    pub fn is_blank(&self) -> bool {
        self.colors.iter().all(Option::is_none) && self.marks.iter().all(Option::is_none)
    }

    /// Scheme with gray and white exchanged and all marks dropped.
    pub fn swapped(&self) -> Self {
        let colors = self
            .colors
            .iter()
            .map(|c| {
                c.map(|c| match c {
                    FaceColor::Gray => FaceColor::White,
                    FaceColor::White => FaceColor::Gray,
                })
            })
            .collect();
        MarkingScheme { colors, marks: vec![None; self.marks.len()] }
    }
}

/// Searches for a colouring where the gray faces are triangles covering every
/// edge exactly once; every other face is white. Returns `None` when no such
/// colouring exists.
///
/// Exact-cover backtracking: repeatedly branch on the uncovered edge with the
/// fewest usable triangles. Every edge borders at most two faces, so the
/// branching factor is at most two and forced choices propagate immediately.
pub fn find_gray_cover(graph: &PlanarGraph) -> Option<Vec<FaceColor>> {
    let candidates: Vec<Vec<usize>> = (0..graph.edge_count())
        .map(|e| {
            graph
                .edge_faces(e)
                .iter()
                .copied()
                .filter(|&f| graph.face(f).is_triangle())
                .collect()
        })
        .collect();
    let mut cover = Cover {
        graph,
        candidates: &candidates,
        covered: vec![false; graph.edge_count()],
        chosen: vec![false; graph.face_count()],
    };
    if !cover.search(graph.edge_count()) {
        return None;
    }
    Some(
        cover
            .chosen
            .iter()
            .map(|&gray| if gray { FaceColor::Gray } else { FaceColor::White })
            .collect(),
    )
}

struct Cover<'a> {
    graph: &'a PlanarGraph,
    candidates: &'a [Vec<usize>],
    covered: Vec<bool>,
    chosen: Vec<bool>,
}

impl Cover<'_> {
    fn usable(&self, f: usize) -> bool {
        self.graph.face(f).edges.iter().all(|&e| !self.covered[e])
    }

    fn search(&mut self, uncovered: usize) -> bool {
        if uncovered == 0 {
            return true;
        }
        let mut best: Option<(usize, usize)> = None;
        for e in 0..self.covered.len() {
            if self.covered[e] {
                continue;
            }
            let count = self.candidates[e].iter().filter(|&&f| self.usable(f)).count();
            if count == 0 {
                return false;
            }
            if best.is_none_or(|(c, _)| count < c) {
                best = Some((count, e));
                if count == 1 {
                    break;
                }
            }
        }
        let (_, e) = best.expect("an uncovered edge exists");
        for i in 0..self.candidates[e].len() {
            let f = self.candidates[e][i];
            if !self.usable(f) {
                continue;
            }
            self.toggle(f, true);
            if self.search(uncovered - 3) {
                return true;
            }
            self.toggle(f, false);
        }
        false
    }

    fn toggle(&mut self, f: usize, on: bool) {
        self.chosen[f] = on;
        for &e in &self.graph.face(f).edges {
            self.covered[e] = on;
        }
    }
}

/// Chooses one marked angle per gray face so that no vertex keeps more than
/// two unmarked gray angles. Returns `None` when impossible.
///
/// A vertex lying in `g` gray faces must receive at least `g - 2` marks. This
/// is a bipartite assignment problem: each vertex contributes `g - 2` demand
/// slots, each gray face can serve one slot at one of its corners. A maximum
/// matching that saturates all slots gives a valid marking; faces left
/// unmatched are marked at their lowest-id corner.
pub fn find_angle_marking(graph: &PlanarGraph, coloring: &[FaceColor]) -> Option<MarkingScheme> {
    assert_eq!(coloring.len(), graph.face_count(), "colouring does not fit the graph");
    let gray: Vec<usize> = (0..graph.face_count())
        .filter(|&f| coloring[f] == FaceColor::Gray)
        .collect();
    let mut gray_at = vec![Vec::new(); graph.vertex_count()];
    for &f in &gray {
        for &v in &graph.face(f).cycle {
            gray_at[v].push(f);
        }
    }
    let slots: Vec<usize> = (0..graph.vertex_count())
        .flat_map(|v| std::iter::repeat_n(v, gray_at[v].len().saturating_sub(2)))
        .collect();
    if slots.len() > gray.len() {
        return None;
    }

    let mut owner: Vec<Option<usize>> = vec![None; graph.face_count()];
    for slot in 0..slots.len() {
        let mut visited = vec![false; graph.face_count()];
        if !augment(slot, &slots, &gray_at, &mut owner, &mut visited) {
            return None;
        }
    }

    let mut scheme = MarkingScheme::from_coloring(coloring);
    for &f in &gray {
        let vertex = match owner[f] {
            Some(slot) => slots[slot],
            None => *graph.face(f).cycle.iter().min().unwrap(),
        };
        scheme.set_marked_angle(f, Some(vertex));
    }
    Some(scheme)
}

fn augment(
    slot: usize,
    slots: &[usize],
    gray_at: &[Vec<usize>],
    owner: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &f in &gray_at[slots[slot]] {
        if visited[f] {
            continue;
        }
        visited[f] = true;
        let free = match owner[f] {
            None => true,
            Some(other) => augment(other, slots, gray_at, owner, visited),
        };
        if free {
            owner[f] = Some(slot);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphSpec, Vertex};

    /// Wheel with `k` spokes: centre 0, rim 1..=k, faces are the k sectors.
    fn wheel(k: u32) -> PlanarGraph {
        let mut vertices = vec![Vertex { id: 0, x: 0.0, y: 0.0 }];
        let mut edges = Vec::new();
        let mut faces = Vec::new();
        for i in 0..k {
            let t = std::f64::consts::TAU * i as f64 / k as f64;
            vertices.push(Vertex { id: i + 1, x: t.cos(), y: t.sin() });
            edges.push((0, i + 1));
            edges.push((i + 1, (i + 1) % k + 1));
            faces.push((i, vec![0, i + 1, (i + 1) % k + 1]));
        }
        build_graph(GraphSpec { vertices, edges, faces, faces_complete: true }).unwrap()
    }

    #[test]
    fn single_triangle_cover() {
        let g = wheel(3);
        // three sectors of K4: every spoke is in two sectors, so no exact cover
        assert_eq!(find_gray_cover(&g), None);
    }

    #[test]
    fn even_wheel_has_no_cover_either() {
        // rim edges each lie in a single sector, so every sector must be gray,
        // and then spokes are covered twice
        assert_eq!(find_gray_cover(&wheel(4)), None);
    }

    #[test]
    fn lone_triangle() {
        let g = build_graph(GraphSpec {
            vertices: (0..3).map(|i| Vertex { id: i, x: i as f64, y: (i * i) as f64 }).collect(),
            edges: vec![(0, 1), (1, 2), (0, 2)],
            faces: vec![(0, vec![0, 1, 2])],
            faces_complete: true,
        })
        .unwrap();
        let coloring = find_gray_cover(&g).unwrap();
        assert_eq!(coloring, vec![FaceColor::Gray]);
        let scheme = find_angle_marking(&g, &coloring).unwrap();
        assert_eq!(scheme.marked_angle(0), Some(0));
    }

    #[test]
    fn swap_drops_marks() {
        let mut s = MarkingScheme::from_coloring(&[FaceColor::Gray, FaceColor::White]);
        s.set_marked_angle(0, Some(2));
        let w = s.swapped();
        assert_eq!(w.color(0), Some(FaceColor::White));
        assert_eq!(w.color(1), Some(FaceColor::Gray));
        assert_eq!(w.marked_angle(0), None);
    }

    #[test]
    fn marking_meets_demand_at_crowded_vertex() {
        // Six gray triangles fanned around one vertex would need four marks
        // there; build a "hexagonal flower" where centre 0 sits in three gray
        // triangles separated by white ones (the triangular-lattice pattern).
        let g = wheel(6);
        let coloring: Vec<FaceColor> = (0..6)
            .map(|i| if i % 2 == 0 { FaceColor::Gray } else { FaceColor::White })
            .collect();
        let scheme = find_angle_marking(&g, &coloring).unwrap();
        let centre_marks = scheme.gray_faces().filter(|&f| scheme.marked_angle(f) == Some(0)).count();
        assert!(centre_marks >= 1);
    }
}
