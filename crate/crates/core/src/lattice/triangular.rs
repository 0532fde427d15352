use std::sync::Arc;

use super::{check_window, Family, LatticeBundle, LatticeError, LatticeMeta, Patch};

/// Lattice point `(c, k)` in axial coordinates: column `c`, row `k`.
pub(crate) fn position(c: i32, k: i32) -> (f64, f64) {
    (c as f64 * 3f64.sqrt() / 2.0, k as f64 + c as f64 / 2.0)
}

/// Window of the triangular lattice made of `rows * cols` right-pointing gray
/// triangles, each marked at its rightmost corner. The left-pointing white
/// triangles between them are included where all three sides are present.
pub fn gen_triangular(rows: u32, cols: u32) -> Result<LatticeBundle, LatticeError> {
    check_window(rows, cols)?;
    let (rows, cols) = (rows as i32, cols as i32);
    let mut patch = Patch::new();
    for c in 0..=cols {
        for k in -1..=rows {
            patch.point((c, k), position(c, k));
        }
    }
    for c in 0..cols {
        for k in 0..rows {
            patch.gray([(c, k), (c + 1, k), (c, k + 1)], (c + 1, k));
        }
    }
    for c in 0..cols {
        for k in -1..rows {
            patch.white(vec![(c, k + 1), (c + 1, k), (c + 1, k + 1)]);
        }
    }
    let (graph, scheme) = patch.assemble()?;
    Ok(LatticeBundle {
        meta: LatticeMeta::window(Family::T, rows as u32, cols as u32),
        graph: Arc::new(graph),
        scheme: Some(scheme),
        base: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate_scheme;

    #[test]
    fn one_by_one() {
        let b = gen_triangular(1, 1).unwrap();
        let s = b.scheme.as_ref().unwrap();
        assert_eq!((b.graph.vertex_count(), b.graph.edge_count()), (3, 3));
        assert_eq!(s.gray_faces().count(), 1);
        assert_eq!(s.gray_faces().filter(|&f| s.marked_angle(f).is_some()).count(), 1);
    }

    #[test]
    fn two_by_two() {
        let b = gen_triangular(2, 2).unwrap();
        let s = b.scheme.as_ref().unwrap();
        assert_eq!(s.gray_faces().count(), 4);
        assert_eq!(b.graph.vertex_count(), 8);
        assert_eq!(b.graph.edge_count(), 12);
        assert_eq!(b.graph.face_count(), 5);
        assert!(validate_scheme(&b.graph, s).passed());
    }

    #[test]
    fn marks_are_rightmost() {
        let b = gen_triangular(3, 4).unwrap();
        let s = b.scheme.as_ref().unwrap();
        for f in s.gray_faces() {
            let m = s.marked_angle(f).unwrap();
            let mx = b.graph.vertex(m).x;
            for &v in &b.graph.face(f).cycle {
                if v != m {
                    assert!(b.graph.vertex(v).x < mx - 0.5);
                }
            }
        }
    }

    #[test]
    fn interior_degree_six() {
        let b = gen_triangular(4, 4).unwrap();
        let interior = b.graph.interior_degree_multiset();
        assert!(!interior.is_empty());
        assert!(interior.iter().all(|&d| d == 6));
    }
}
