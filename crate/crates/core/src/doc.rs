//! Graph JSON documents and DOT export.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{build_graph, GraphError, GraphSpec, PlanarGraph, Vertex};
use crate::lattice::{LatticeBundle, LatticeMeta};
use crate::scheme::{FaceColor, MarkingScheme};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[u32; 2]>,
    #[serde(default)]
    pub faces: Vec<FaceDoc>,
    /// Whether `faces` lists every bounded face. When absent, a non-empty face
    /// list is taken to be complete.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_faces: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<LatticeMeta>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDoc {
    pub id: u32,
    pub cycle: Vec<u32>,
    #[serde(default)]
    pub color: Option<FaceColor>,
    #[serde(default)]
    pub marked_angle: Option<u32>,
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("face {face} marks vertex {vertex}, which does not exist")]
    UnknownMarkedVertex { face: u32, vertex: u32 },
}

/// A parsed document: the graph, its scheme if any face carries a colour or
/// mark, and generation parameters if present.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub graph: PlanarGraph,
    pub scheme: Option<MarkingScheme>,
    pub meta: Option<LatticeMeta>,
}

impl GraphDoc {
    pub fn from_graph(graph: &PlanarGraph, scheme: Option<&MarkingScheme>, meta: Option<&LatticeMeta>) -> Self {
        GraphDoc {
            vertices: graph.vertices().to_vec(),
            edges: (0..graph.edge_count()).map(|e| graph.edge_ids(e)).collect(),
            faces: graph
                .faces()
                .iter()
                .enumerate()
                .map(|(f, face)| FaceDoc {
                    id: face.id,
                    cycle: face.cycle.iter().map(|&v| graph.vertex_id(v)).collect(),
                    color: scheme.and_then(|s| s.color(f)),
                    marked_angle: scheme.and_then(|s| s.marked_angle(f)).map(|v| graph.vertex_id(v)),
                })
                .collect(),
            complete_faces: Some(graph.faces_complete()),
            meta: meta.cloned(),
        }
    }

    pub fn from_bundle(bundle: &LatticeBundle) -> Self {
        Self::from_graph(&bundle.graph, bundle.scheme.as_ref(), Some(&bundle.meta))
    }

    pub fn into_loaded(self) -> Result<Loaded, DocError> {
        let complete = self.complete_faces.unwrap_or(!self.faces.is_empty());
        let spec = GraphSpec {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&[a, b]| (a, b)).collect(),
            faces: self.faces.iter().map(|f| (f.id, f.cycle.clone())).collect(),
            faces_complete: complete,
        };
        let graph = build_graph(spec)?;
        let mut scheme = MarkingScheme::blank(graph.face_count());
        for doc in &self.faces {
            let f = graph.face_index(doc.id).expect("face ids survive building");
            scheme.set_color(f, doc.color);
            if let Some(vid) = doc.marked_angle {
                let v = graph
                    .index_of(vid)
                    .ok_or(DocError::UnknownMarkedVertex { face: doc.id, vertex: vid })?;
                scheme.set_marked_angle(f, Some(v));
            }
        }
        let scheme = (!scheme.is_blank()).then_some(scheme);
        Ok(Loaded { graph, scheme, meta: self.meta })
    }
}

pub fn parse_graph_json(text: &str) -> Result<Loaded, DocError> {
    serde_json::from_str::<GraphDoc>(text)?.into_loaded()
}

pub fn graph_to_json(graph: &PlanarGraph, scheme: Option<&MarkingScheme>, meta: Option<&LatticeMeta>) -> String {
    serde_json::to_string_pretty(&GraphDoc::from_graph(graph, scheme, meta)).expect("graph documents serialise")
}

/// Graphviz rendering with fixed positions (use `neato -n`). With a scheme,
/// each face becomes a small box at its centroid filled with its colour and
/// labelled `*v` for its marked vertex.
pub fn export_dot(graph: &PlanarGraph, scheme: Option<&MarkingScheme>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle, width=0.25, fixedsize=true, fontsize=8];\n");
    for v in graph.vertices() {
        out.push_str(&format!("  v{} [label=\"{}\", pos=\"{:.4},{:.4}!\"];\n", v.id, v.id, v.x, v.y));
    }
    let gray_edge = |e: usize| {
        scheme.is_some_and(|s| graph.edge_faces(e).iter().any(|&f| s.color(f) == Some(FaceColor::Gray)))
    };
    for e in 0..graph.edge_count() {
        let [a, b] = graph.edge_ids(e);
        let style = if gray_edge(e) { ", color=gray40" } else { "" };
        out.push_str(&format!("  v{a} -- v{b} [label=\"e{e}\", fontsize=7{style}];\n"));
    }
    if let Some(s) = scheme {
        for (f, face) in graph.faces().iter().enumerate() {
            let n = face.len() as f64;
            let cx = face.cycle.iter().map(|&v| graph.vertex(v).x).sum::<f64>() / n;
            let cy = face.cycle.iter().map(|&v| graph.vertex(v).y).sum::<f64>() / n;
            let fill = match s.color(f) {
                Some(FaceColor::Gray) => "gray80",
                Some(FaceColor::White) => "white",
                None => "pink",
            };
            let mark = s.marked_angle(f).map(|v| format!("*{}", graph.vertex_id(v))).unwrap_or_default();
            out.push_str(&format!(
                "  f{} [shape=box, style=filled, fillcolor={fill}, label=\"f{}{}\", pos=\"{cx:.4},{cy:.4}!\", width=0.3, fontsize=6];\n",
                face.id,
                face.id,
                if mark.is_empty() { String::new() } else { format!(" {mark}") }
            ));
        }
    }
    out.push_str("}\n");
    out
}
