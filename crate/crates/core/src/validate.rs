//! Checks a (graph, marking scheme) pair against the five structural
//! hypotheses the angle strategy relies on.

use serde::Serialize;

use crate::graph::PlanarGraph;
use crate::scheme::{FaceColor, MarkingScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// Every bounded face is coloured and faces sharing an edge differ.
    TwoColored,
    GrayTriangles,
    /// Every edge lies in exactly one gray triangle.
    EdgeCover,
    /// Every gray face has one marked angle at one of its own corners, and
    /// white faces carry none.
    OneMarkPerGray,
    /// No vertex has more than two unmarked gray angles.
    UnmarkedAngles,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 5] = [
        Hypothesis::TwoColored,
        Hypothesis::GrayTriangles,
        Hypothesis::EdgeCover,
        Hypothesis::OneMarkPerGray,
        Hypothesis::UnmarkedAngles,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Hypothesis::TwoColored => "faces two-coloured",
            Hypothesis::GrayTriangles => "gray faces are triangles",
            Hypothesis::EdgeCover => "each edge in exactly one gray triangle",
            Hypothesis::OneMarkPerGray => "one marked angle per gray triangle",
            Hypothesis::UnmarkedAngles => "at most two unmarked gray angles per vertex",
        }
    }
}

/// A single failure. Vertex, edge and face references use external ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UncoloredFace { face: u32 },
    SameColorNeighbors { edge: [u32; 2], faces: [u32; 2] },
    NonTriangularGray { face: u32, length: usize },
    EdgeGrayCount { edge: [u32; 2], gray_triangles: usize },
    MissingMark { face: u32 },
    MarkNotOnFace { face: u32, vertex: u32 },
    MarkOnWhiteFace { face: u32 },
    TooManyUnmarked { vertex: u32, unmarked: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub hypothesis: Hypothesis,
    pub violations: Vec<Violation>,
}

impl HypothesisCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<HypothesisCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(HypothesisCheck::passed)
    }

    pub fn check(&self, h: Hypothesis) -> &HypothesisCheck {
        self.checks.iter().find(|c| c.hypothesis == h).expect("all hypotheses are checked")
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.checks.iter().flat_map(|c| c.violations.iter())
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for check in &self.checks {
            let status = if check.passed() { "ok" } else { "FAIL" };
            writeln!(f, "{status:4} {}", check.hypothesis.label())?;
            for v in check.violations.iter().take(5) {
                writeln!(f, "     {v:?}")?;
            }
            if check.violations.len() > 5 {
                writeln!(f, "     ... {} more", check.violations.len() - 5)?;
            }
        }
        Ok(())
    }
}

pub fn validate_scheme(graph: &PlanarGraph, scheme: &MarkingScheme) -> ValidationReport {
    let face_id = |f: usize| graph.face(f).id;

    let mut two_colored = Vec::new();
    for f in 0..graph.face_count() {
        if scheme.color(f).is_none() {
            two_colored.push(Violation::UncoloredFace { face: face_id(f) });
        }
    }
    for e in 0..graph.edge_count() {
        if let [a, b] = *graph.edge_faces(e) {
            if scheme.color(a).is_some() && scheme.color(a) == scheme.color(b) {
                two_colored.push(Violation::SameColorNeighbors {
                    edge: graph.edge_ids(e),
                    faces: [face_id(a), face_id(b)],
                });
            }
        }
    }

    let mut triangles = Vec::new();
    for f in scheme.gray_faces() {
        if !graph.face(f).is_triangle() {
            triangles.push(Violation::NonTriangularGray { face: face_id(f), length: graph.face(f).len() });
        }
    }

    let mut cover = Vec::new();
    for e in 0..graph.edge_count() {
        let count = graph
            .edge_faces(e)
            .iter()
            .filter(|&&f| scheme.is_gray(f) && graph.face(f).is_triangle())
            .count();
        if count != 1 {
            cover.push(Violation::EdgeGrayCount { edge: graph.edge_ids(e), gray_triangles: count });
        }
    }

    let mut marks = Vec::new();
    for f in 0..graph.face_count() {
        match (scheme.color(f), scheme.marked_angle(f)) {
            (Some(FaceColor::Gray), None) => marks.push(Violation::MissingMark { face: face_id(f) }),
            (Some(FaceColor::Gray), Some(v)) if !graph.face(f).contains_vertex(v) => {
                marks.push(Violation::MarkNotOnFace {
                    face: face_id(f),
                    vertex: if v < graph.vertex_count() { graph.vertex_id(v) } else { v as u32 },
                })
            }
            (Some(FaceColor::White) | None, Some(_)) => {
                marks.push(Violation::MarkOnWhiteFace { face: face_id(f) })
            }
            _ => {}
        }
    }

    let mut unmarked = vec![0usize; graph.vertex_count()];
    for f in scheme.gray_faces() {
        for &v in &graph.face(f).cycle {
            if scheme.marked_angle(f) != Some(v) {
                unmarked[v] += 1;
            }
        }
    }
    let angles = unmarked
        .iter()
        .enumerate()
        .filter(|&(_, &count)| count > 2)
        .map(|(v, &count)| Violation::TooManyUnmarked { vertex: graph.vertex_id(v), unmarked: count })
        .collect();

    ValidationReport {
        checks: vec![
            HypothesisCheck { hypothesis: Hypothesis::TwoColored, violations: two_colored },
            HypothesisCheck { hypothesis: Hypothesis::GrayTriangles, violations: triangles },
            HypothesisCheck { hypothesis: Hypothesis::EdgeCover, violations: cover },
            HypothesisCheck { hypothesis: Hypothesis::OneMarkPerGray, violations: marks },
            HypothesisCheck { hypothesis: Hypothesis::UnmarkedAngles, violations: angles },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphSpec, Vertex};

    /// Two triangles sharing edge 1-2: faces 0 = (0,1,2), 1 = (1,3,2).
    fn diamond() -> PlanarGraph {
        build_graph(GraphSpec {
            vertices: vec![
                Vertex { id: 0, x: 0.0, y: 0.0 },
                Vertex { id: 1, x: 1.0, y: -1.0 },
                Vertex { id: 2, x: 1.0, y: 1.0 },
                Vertex { id: 3, x: 2.0, y: 0.0 },
            ],
            edges: vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
            faces: vec![(0, vec![0, 1, 2]), (1, vec![1, 3, 2])],
            faces_complete: true,
        })
        .unwrap()
    }

    #[test]
    fn blank_scheme_fails_everywhere_relevant() {
        let g = diamond();
        let report = validate_scheme(&g, &MarkingScheme::blank(2));
        assert!(!report.check(Hypothesis::TwoColored).passed());
        assert!(report.check(Hypothesis::GrayTriangles).passed());
        assert_eq!(report.check(Hypothesis::EdgeCover).violations.len(), 5);
        assert!(!report.passed());
    }

    #[test]
    fn diamond_cannot_cover_shared_edge_once() {
        let g = diamond();
        let mut s = MarkingScheme::from_coloring(&[FaceColor::Gray, FaceColor::White]);
        s.set_marked_angle(0, Some(0));
        let report = validate_scheme(&g, &s);
        assert!(report.check(Hypothesis::TwoColored).passed());
        assert!(report.check(Hypothesis::OneMarkPerGray).passed());
        // edges 1-3 and 2-3 are in no gray triangle
        assert_eq!(
            report.check(Hypothesis::EdgeCover).violations,
            vec![
                Violation::EdgeGrayCount { edge: [1, 3], gray_triangles: 0 },
                Violation::EdgeGrayCount { edge: [2, 3], gray_triangles: 0 },
            ]
        );
    }

    #[test]
    fn mark_errors() {
        let g = diamond();
        let mut s = MarkingScheme::from_coloring(&[FaceColor::Gray, FaceColor::White]);
        s.set_marked_angle(0, Some(3));
        s.set_marked_angle(1, Some(3));
        let report = validate_scheme(&g, &s);
        assert_eq!(
            report.check(Hypothesis::OneMarkPerGray).violations,
            vec![
                Violation::MarkNotOnFace { face: 0, vertex: 3 },
                Violation::MarkOnWhiteFace { face: 1 },
            ]
        );
    }
}
