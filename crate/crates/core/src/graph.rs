//! Embedded planar graphs with explicit bounded faces.
//!
//! Vertices carry external ids (the ids used in the graph JSON) and 2D
//! coordinates. Internally everything is addressed by dense indices: vertex
//! indices follow ascending id order and edge indices follow the
//! lexicographic order of their endpoint indices, so "lowest index" and
//! "lowest id" always agree. The unbounded face is never stored.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub x: f64,
    pub y: f64,
}

/// A bounded face: a simple cycle of vertex indices with the edge indices
/// between consecutive entries (`edges[i]` joins `cycle[i]` and `cycle[i+1]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: u32,
    pub cycle: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn is_triangle(&self) -> bool {
        self.cycle.len() == 3
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.cycle.contains(&v)
    }
}

/// Raw description accepted by [`build_graph`]. Ids are external ids.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GraphSpec {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(u32, u32)>,
    pub faces: Vec<(u32, Vec<u32>)>,
    /// When set, `faces` claims to list every bounded face and Euler's
    /// formula is enforced.
    pub faces_complete: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(u32),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFiniteCoordinate(u32),
    #[error("edge ({0}, {1}) references an unknown vertex")]
    DanglingEdge(u32, u32),
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("duplicate face id {0}")]
    DuplicateFace(u32),
    #[error("face {face} has {len} vertices; faces need at least 3")]
    FaceTooShort { face: u32, len: usize },
    #[error("face {face} references unknown vertex {vertex}")]
    FaceUnknownVertex { face: u32, vertex: u32 },
    #[error("face {face} visits vertex {vertex} twice")]
    FaceNotSimple { face: u32, vertex: u32 },
    #[error("face {face} walks along ({u}, {v}), which is not an edge")]
    FaceMissingEdge { face: u32, u: u32, v: u32 },
    #[error("Euler check failed: |V|={vertices}, |E|={edges}, bounded faces={faces}, components={components}")]
    Euler {
        vertices: usize,
        edges: usize,
        faces: usize,
        components: usize,
    },
}

#[derive(Debug, Clone)]
pub struct PlanarGraph {
    vertices: Vec<Vertex>,
    index_of: HashMap<u32, usize>,
    edges: Vec<(usize, usize)>,
    edge_of: HashMap<(usize, usize), usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
    faces: Vec<Face>,
    face_of: HashMap<u32, usize>,
    edge_faces: Vec<Vec<usize>>,
    faces_complete: bool,
}

/// Validate `spec` and build the canonical graph.
pub fn build_graph(spec: GraphSpec) -> Result<PlanarGraph, GraphError> {
    let GraphSpec {
        mut vertices,
        edges: raw_edges,
        faces: raw_faces,
        faces_complete,
    } = spec;
    if vertices.is_empty() {
        return Err(GraphError::Empty);
    }
    vertices.sort_by_key(|v| v.id);
    let mut index_of = HashMap::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        if !v.x.is_finite() || !v.y.is_finite() {
            return Err(GraphError::NonFiniteCoordinate(v.id));
        }
        if index_of.insert(v.id, i).is_some() {
            return Err(GraphError::DuplicateVertex(v.id));
        }
    }

    let mut edge_set = BTreeSet::new();
    for &(a, b) in &raw_edges {
        let (Some(&u), Some(&v)) = (index_of.get(&a), index_of.get(&b)) else {
            return Err(GraphError::DanglingEdge(a, b));
        };
        if u == v {
            return Err(GraphError::SelfLoop(a));
        }
        if !edge_set.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge(a, b));
        }
    }
    let edges: Vec<(usize, usize)> = edge_set.into_iter().collect();
    let edge_of: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adjacency[u].push((v, i));
        adjacency[v].push((u, i));
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    let mut raw_faces = raw_faces;
    raw_faces.sort_by_key(|(id, _)| *id);
    let mut faces = Vec::with_capacity(raw_faces.len());
    let mut face_of = HashMap::with_capacity(raw_faces.len());
    let mut edge_faces = vec![Vec::new(); edges.len()];
    for (id, ids) in raw_faces {
        if face_of.insert(id, faces.len()).is_some() {
            return Err(GraphError::DuplicateFace(id));
        }
        if ids.len() < 3 {
            return Err(GraphError::FaceTooShort { face: id, len: ids.len() });
        }
        let mut cycle = Vec::with_capacity(ids.len());
        let mut seen = BTreeSet::new();
        for &vid in &ids {
            let &v = index_of
                .get(&vid)
                .ok_or(GraphError::FaceUnknownVertex { face: id, vertex: vid })?;
            if !seen.insert(v) {
                return Err(GraphError::FaceNotSimple { face: id, vertex: vid });
            }
            cycle.push(v);
        }
        let mut face_edges = Vec::with_capacity(cycle.len());
        for i in 0..cycle.len() {
            let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            let &e = edge_of.get(&(u.min(v), u.max(v))).ok_or(GraphError::FaceMissingEdge {
                face: id,
                u: vertices[u].id,
                v: vertices[v].id,
            })?;
            face_edges.push(e);
            edge_faces[e].push(faces.len());
        }
        faces.push(Face { id, cycle, edges: face_edges });
    }

    let graph = PlanarGraph {
        vertices,
        index_of,
        edges,
        edge_of,
        adjacency,
        faces,
        face_of,
        edge_faces,
        faces_complete,
    };
    if faces_complete {
        // V - E + F_bounded = number of components for a plane graph whose
        // bounded faces are all listed.
        let components = graph.component_count();
        let lhs = graph.vertex_count() as i64 - graph.edge_count() as i64 + graph.face_count() as i64;
        if lhs != components as i64 {
            return Err(GraphError::Euler {
                vertices: graph.vertex_count(),
                edges: graph.edge_count(),
                faces: graph.face_count(),
                components,
            });
        }
    }
    Ok(graph)
}

impl PlanarGraph {
    /// Abstract graph on vertices `0..n` (ids equal indices) with no faces.
    /// Vertices are placed on a unit circle for export purposes.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let vertices = (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n.max(1) as f64;
                Vertex { id: i as u32, x: t.cos(), y: t.sin() }
            })
            .collect();
        build_graph(GraphSpec {
            vertices,
            edges: edges.iter().map(|&(u, v)| (u as u32, v as u32)).collect(),
            faces: Vec::new(),
            faces_complete: false,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertex_id(&self, v: usize) -> u32 {
        self.vertices[v].id
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.index_of.get(&id).copied()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Endpoint ids of edge `e`, smaller first.
    pub fn edge_ids(&self, e: usize) -> [u32; 2] {
        let (u, v) = self.edges[e];
        [self.vertex_id(u), self.vertex_id(v)]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_of.get(&(u.min(v), u.max(v))).copied()
    }

    /// `(neighbour, edge)` pairs sorted by neighbour index.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn face_index(&self, id: u32) -> Option<usize> {
        self.face_of.get(&id).copied()
    }

    /// Bounded faces containing edge `e`, ascending.
    pub fn edge_faces(&self, e: usize) -> &[usize] {
        &self.edge_faces[e]
    }

    pub fn faces_complete(&self) -> bool {
        self.faces_complete
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertex_count()];
        let mut components = 0;
        let mut stack = Vec::new();
        for start in 0..self.vertex_count() {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// A vertex is interior when every incident edge borders two bounded faces.
    pub fn is_interior(&self, v: usize) -> bool {
        self.degree(v) > 0 && self.adjacency[v].iter().all(|&(_, e)| self.edge_faces[e].len() == 2)
    }

    /// Sorted degrees of the interior vertices.
    pub fn interior_degree_multiset(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.is_interior(v))
            .map(|v| self.degree(v))
            .collect();
        degrees.sort_unstable();
        degrees
    }

    /// Spec that rebuilds this graph exactly.
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.clone(),
            edges: (0..self.edge_count()).map(|e| self.edge_ids(e).into()).collect(),
            faces: self
                .faces
                .iter()
                .map(|f| (f.id, f.cycle.iter().map(|&v| self.vertex_id(v)).collect()))
                .collect(),
            faces_complete: self.faces_complete,
        }
    }

    /// Checks that every vertex id and edge of `self` also exists in `host`.
    pub fn check_subgraph_of(&self, host: &PlanarGraph) -> Result<(), SubgraphError> {
        for v in &self.vertices {
            if host.index_of(v.id).is_none() {
                return Err(SubgraphError::MissingVertex(v.id));
            }
        }
        for e in 0..self.edge_count() {
            let [a, b] = self.edge_ids(e);
            let (u, v) = (host.index_of(a).unwrap(), host.index_of(b).unwrap());
            if host.edge_between(u, v).is_none() {
                return Err(SubgraphError::MissingEdge(a, b));
            }
        }
        Ok(())
    }

    /// Finds, for each vertex of `self`, the host vertex at the same position
    /// (within `tolerance`), then checks that every edge maps onto a host edge.
    pub fn embed_by_coordinates(
        &self,
        host: &PlanarGraph,
        tolerance: f64,
    ) -> Result<Vec<usize>, SubgraphError> {
        let mut mapping = Vec::with_capacity(self.vertex_count());
        for v in &self.vertices {
            let hit = host
                .vertices
                .iter()
                .position(|h| (h.x - v.x).abs() <= tolerance && (h.y - v.y).abs() <= tolerance)
                .ok_or(SubgraphError::MissingVertex(v.id))?;
            mapping.push(hit);
        }
        for &(u, v) in &self.edges {
            if host.edge_between(mapping[u], mapping[v]).is_none() {
                return Err(SubgraphError::MissingEdge(self.vertex_id(u), self.vertex_id(v)));
            }
        }
        Ok(mapping)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgraphError {
    #[error("vertex {0} is not present in the host graph")]
    MissingVertex(u32),
    #[error("edge ({0}, {1}) is not present in the host graph")]
    MissingEdge(u32, u32),
}
