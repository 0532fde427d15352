//! Finite windows of the lattices the game is studied on, together with the
//! face colouring and angle marking each one comes with.

mod apollonian;
mod hexagonal;
mod octagon;
mod square;
mod triangular;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{build_graph, GraphError, GraphSpec, PlanarGraph, Vertex};
use crate::scheme::{FaceColor, MarkingScheme};

pub use apollonian::gen_apollonian;
pub use hexagonal::{gen_hexagonal, hexagonal_host_window};
pub use octagon::gen_square_octagon;
pub use square::gen_centered_square;
pub use triangular::gen_triangular;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    /// Triangular lattice.
    T,
    /// Square lattice with face centres joined to the corners.
    R,
    /// Square-octagon lattice with face centres joined to the corners.
    C,
    /// Hexagonal lattice.
    H,
    Apollonian,
    /// Triangular lattice with a centre added to every face.
    TPrime,
    /// Some other family with centres added to selected faces.
    D(Box<Family>),
    /// Loaded from a file with no recognised family.
    Custom,
}

impl Family {
    /// Interior vertex degrees a window of this family may contain.
    pub fn interior_degrees(&self) -> Option<Vec<usize>> {
        match self {
            Family::T => Some(vec![6]),
            Family::R => Some(vec![4, 8]),
            Family::C => Some(vec![4, 6, 8]),
            Family::H => Some(vec![3]),
            Family::TPrime => Some(vec![3, 12]),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::T => f.write_str("T"),
            Family::R => f.write_str("R"),
            Family::C => f.write_str("C"),
            Family::H => f.write_str("H"),
            Family::Apollonian => f.write_str("apollonian"),
            Family::TPrime => f.write_str("T-prime"),
            Family::D(base) => write!(f, "D({base})"),
            Family::Custom => f.write_str("custom"),
        }
    }
}

impl FromStr for Family {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Ok(match s {
            "T" | "t" | "triangular" => Family::T,
            "R" | "r" | "centered-square" => Family::R,
            "C" | "c" | "square-octagon" => Family::C,
            "H" | "h" | "hexagonal" => Family::H,
            "apollonian" | "A" => Family::Apollonian,
            "T-prime" | "T'" | "t-prime" => Family::TPrime,
            "custom" => Family::Custom,
            _ => {
                if let Some(inner) = s.strip_prefix("D(").and_then(|r| r.strip_suffix(')')) {
                    Family::D(Box::new(inner.parse()?))
                } else {
                    return Err(LatticeError::UnknownFamily(s.to_string()));
                }
            }
        })
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CenterSelection {
    AllFaces,
    GrayOnly,
    TriangularFaces,
}

impl FromStr for CenterSelection {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-faces" | "all" => Ok(CenterSelection::AllFaces),
            "gray-only" | "gray" => Ok(CenterSelection::GrayOnly),
            "triangular-faces" | "triangular" => Ok(CenterSelection::TriangularFaces),
            _ => Err(LatticeError::UnknownFamily(format!("centre selection {s}"))),
        }
    }
}

/// Generation parameters. Stored in graph files so a bundle (including the
/// un-centred base of derived families) can be regenerated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMeta {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub insertions: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centers: Option<CenterSelection>,
}

impl LatticeMeta {
    pub fn window(family: Family, rows: u32, cols: u32) -> Self {
        LatticeMeta { family, rows: Some(rows), cols: Some(cols), insertions: None, seed: None, centers: None }
    }

    pub fn apollonian(insertions: u32, seed: u64) -> Self {
        LatticeMeta {
            family: Family::Apollonian,
            rows: None,
            cols: None,
            insertions: Some(insertions),
            seed: Some(seed),
            centers: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LatticeBundle {
    pub meta: LatticeMeta,
    pub graph: Arc<PlanarGraph>,
    pub scheme: Option<MarkingScheme>,
    /// The graph before centres were added, for derived families.
    pub base: Option<Box<LatticeBundle>>,
}

impl LatticeBundle {
    pub fn family(&self) -> &Family {
        &self.meta.family
    }

    /// Whether the interior degrees agree with the family's lattice.
    pub fn fingerprint_matches(&self) -> bool {
        match self.family().interior_degrees() {
            None => true,
            Some(allowed) => self.graph.interior_degree_multiset().iter().all(|d| allowed.contains(d)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("window {rows}x{cols} is too small; rows and cols must be at least 1")]
    WindowTooSmall { rows: u32, cols: u32 },
    #[error("face {0} is not a triangle")]
    NonTriangularFace(u32),
    #[error("gray-only centring needs a colouring")]
    MissingScheme,
    #[error("unknown lattice family {0:?}")]
    UnknownFamily(String),
    #[error("missing generation parameter {0}")]
    MissingParameter(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn check_window(rows: u32, cols: u32) -> Result<(), LatticeError> {
    if rows == 0 || cols == 0 {
        Err(LatticeError::WindowTooSmall { rows, cols })
    } else {
        Ok(())
    }
}

/// Regenerate a bundle from its parameters.
pub fn generate(meta: &LatticeMeta) -> Result<LatticeBundle, LatticeError> {
    let rows = || meta.rows.ok_or(LatticeError::MissingParameter("rows"));
    let cols = || meta.cols.ok_or(LatticeError::MissingParameter("cols"));
    match &meta.family {
        Family::T => gen_triangular(rows()?, cols()?),
        Family::R => gen_centered_square(rows()?, cols()?),
        Family::C => gen_square_octagon(rows()?, cols()?),
        Family::H => gen_hexagonal(rows()?, cols()?),
        Family::Apollonian => Ok(gen_apollonian(
            meta.insertions.ok_or(LatticeError::MissingParameter("insertions"))?,
            meta.seed.unwrap_or(0),
        )),
        Family::TPrime => add_centers(&gen_triangular(rows()?, cols()?)?, CenterSelection::AllFaces),
        Family::D(base) => {
            let base_meta = LatticeMeta { family: (**base).clone(), centers: None, ..meta.clone() };
            add_centers(&generate(&base_meta)?, meta.centers.unwrap_or(CenterSelection::TriangularFaces))
        }
        Family::Custom => Err(LatticeError::UnknownFamily("custom".into())),
    }
}

/// Adds a vertex at the centroid of each selected face, joined to its
/// corners. The face is replaced by the resulting fan of triangles. New
/// vertex and face ids continue after the largest existing ones.
pub fn add_centers(bundle: &LatticeBundle, which: CenterSelection) -> Result<LatticeBundle, LatticeError> {
    let g = &bundle.graph;
    let mut selected = Vec::new();
    for (f, face) in g.faces().iter().enumerate() {
        let pick = match which {
            CenterSelection::AllFaces => {
                if !face.is_triangle() {
                    return Err(LatticeError::NonTriangularFace(face.id));
                }
                true
            }
            CenterSelection::GrayOnly => {
                let scheme = bundle.scheme.as_ref().ok_or(LatticeError::MissingScheme)?;
                scheme.is_gray(f)
            }
            CenterSelection::TriangularFaces => face.is_triangle(),
        };
        if pick {
            selected.push(f);
        }
    }

    let mut spec = g.to_spec();
    let mut next_vertex = g.vertices().iter().map(|v| v.id).max().unwrap_or(0) + 1;
    let mut next_face = g.faces().iter().map(|f| f.id + 1).max().unwrap_or(0);
    let keep: BTreeSet<usize> = (0..g.face_count()).filter(|f| !selected.contains(f)).collect();
    spec.faces = keep.iter().map(|&f| spec.faces[f].clone()).collect();
    for &f in &selected {
        let face = g.face(f);
        let n = face.len() as f64;
        let x = face.cycle.iter().map(|&v| g.vertex(v).x).sum::<f64>() / n;
        let y = face.cycle.iter().map(|&v| g.vertex(v).y).sum::<f64>() / n;
        let z = next_vertex;
        next_vertex += 1;
        spec.vertices.push(Vertex { id: z, x, y });
        for i in 0..face.len() {
            let a = g.vertex_id(face.cycle[i]);
            let b = g.vertex_id(face.cycle[(i + 1) % face.len()]);
            spec.edges.push((a, z));
            spec.faces.push((next_face, vec![z, a, b]));
            next_face += 1;
        }
    }
    let graph = build_graph(spec)?;

    let family = match (&bundle.meta.family, which) {
        (Family::T, CenterSelection::AllFaces) => Family::TPrime,
        (base, _) => Family::D(Box::new(base.clone())),
    };
    let meta = LatticeMeta { family, centers: Some(which), ..bundle.meta.clone() };
    Ok(LatticeBundle { meta, graph: Arc::new(graph), scheme: None, base: Some(Box::new(bundle.clone())) })
}

/// Builds a window as a union of whole gray triangles. White faces are kept
/// only when every one of their edges is present.
pub(crate) struct Patch<K> {
    coords: BTreeMap<K, (f64, f64)>,
    gray: Vec<([K; 3], K)>,
    white: Vec<Vec<K>>,
}

impl<K: Ord + Copy + fmt::Debug> Patch<K> {
    pub fn new() -> Self {
        Patch { coords: BTreeMap::new(), gray: Vec::new(), white: Vec::new() }
    }

    pub fn point(&mut self, key: K, xy: (f64, f64)) {
        self.coords.insert(key, xy);
    }

    pub fn gray(&mut self, corners: [K; 3], mark: K) {
        debug_assert!(corners.contains(&mark));
        self.gray.push((corners, mark));
    }

    pub fn white(&mut self, cycle: Vec<K>) {
        self.white.push(cycle);
    }

    pub fn assemble(self) -> Result<(PlanarGraph, MarkingScheme), GraphError> {
        let norm = |a: K, b: K| if a < b { (a, b) } else { (b, a) };
        let mut keys = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for (corners, _) in &self.gray {
            for i in 0..3 {
                keys.insert(corners[i]);
                let fresh = edges.insert(norm(corners[i], corners[(i + 1) % 3]));
                assert!(fresh, "edge {:?} owned by two gray triangles", norm(corners[i], corners[(i + 1) % 3]));
            }
        }

        // ids follow (x, y) order so they read left to right, bottom to top
        let snap = |v: f64| (v * 1e6).round() as i64;
        let mut ordered: Vec<K> = keys.iter().copied().collect();
        ordered.sort_by_key(|k| {
            let (x, y) = self.coords[k];
            (snap(x), snap(y), *k)
        });
        let id: BTreeMap<K, u32> = ordered.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        let xy = |k: &K| self.coords[k];

        let mut faces: Vec<Vec<K>> = Vec::new();
        let mut marks = Vec::new();
        for (corners, mark) in &self.gray {
            faces.push(corners.to_vec());
            marks.push(Some(*mark));
        }
        let mut seen_white = BTreeSet::new();
        for cycle in self.white {
            let inside = cycle.iter().all(|k| keys.contains(k))
                && (0..cycle.len()).all(|i| edges.contains(&norm(cycle[i], cycle[(i + 1) % cycle.len()])));
            let mut sorted = cycle.clone();
            sorted.sort();
            if inside && seen_white.insert(sorted) {
                faces.push(cycle);
                marks.push(None);
            }
        }
        let gray_count = self.gray.len();

        let spec = GraphSpec {
            vertices: ordered
                .iter()
                .map(|k| Vertex { id: id[k], x: xy(k).0, y: xy(k).1 })
                .collect(),
            edges: edges.iter().map(|(a, b)| (id[a], id[b])).collect(),
            faces: faces
                .iter()
                .enumerate()
                .map(|(f, cycle)| (f as u32, canonical_cycle(cycle.iter().map(|k| (id[k], xy(k))).collect())))
                .collect(),
            faces_complete: true,
        };
        let graph = build_graph(spec)?;
        let colors = (0..faces.len())
            .map(|f| Some(if f < gray_count { FaceColor::Gray } else { FaceColor::White }))
            .collect();
        // ids are 0..n, so a vertex id is also its index
        let marks = marks.into_iter().map(|m| m.map(|k| id[&k] as usize)).collect();
        Ok((graph, MarkingScheme::from_parts(colors, marks)))
    }
}

/// Counter-clockwise order starting at the smallest id.
fn canonical_cycle(mut cycle: Vec<(u32, (f64, f64))>) -> Vec<u32> {
    let n = cycle.len();
    let area: f64 = (0..n)
        .map(|i| {
            let (a, b) = (cycle[i].1, cycle[(i + 1) % n].1);
            a.0 * b.1 - b.0 * a.1
        })
        .sum();
    if area < 0.0 {
        cycle.reverse();
    }
    let start = (0..n).min_by_key(|&i| cycle[i].0).unwrap();
    cycle.rotate_left(start);
    cycle.into_iter().map(|(id, _)| id).collect()
}
