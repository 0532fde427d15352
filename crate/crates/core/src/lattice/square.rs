use std::sync::Arc;

use super::{check_window, Family, LatticeBundle, LatticeError, LatticeMeta, Patch};

/// Window of `rows * cols` unit squares, each with a centre joined to its
/// four corners. Keys are doubled coordinates, so corners are even and
/// centres odd.
///
/// Cells alternate in a checkerboard. In a horizontal cell (`i + j` even) the
/// left and right triangles are gray, marked at the top-left and top-right
/// corners. In a vertical cell the bottom and top triangles are gray, marked
/// at the bottom-right and top-right corners. Square sides whose gray owner
/// would lie outside the window are dropped.
pub fn gen_centered_square(rows: u32, cols: u32) -> Result<LatticeBundle, LatticeError> {
    check_window(rows, cols)?;
    let mut patch = Patch::new();
    for i in 0..=cols as i32 {
        for j in 0..=rows as i32 {
            patch.point((2 * i, 2 * j), (i as f64, j as f64));
        }
    }
    for i in 0..cols as i32 {
        for j in 0..rows as i32 {
            let bl = (2 * i, 2 * j);
            let br = (2 * i + 2, 2 * j);
            let tr = (2 * i + 2, 2 * j + 2);
            let tl = (2 * i, 2 * j + 2);
            let z = (2 * i + 1, 2 * j + 1);
            patch.point(z, (i as f64 + 0.5, j as f64 + 0.5));
            if (i + j) % 2 == 0 {
                patch.gray([bl, z, tl], tl);
                patch.gray([br, tr, z], tr);
                patch.white(vec![bl, br, z]);
                patch.white(vec![tl, z, tr]);
            } else {
                patch.gray([bl, br, z], br);
                patch.gray([tl, z, tr], tr);
                patch.white(vec![bl, z, tl]);
                patch.white(vec![br, tr, z]);
            }
        }
    }
    let (graph, scheme) = patch.assemble()?;
    Ok(LatticeBundle {
        meta: LatticeMeta::window(Family::R, rows, cols),
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
    fn single_cell() {
        let b = gen_centered_square(1, 1).unwrap();
        let s = b.scheme.as_ref().unwrap();
        // the two white triangles' outer sides have no gray owner
        assert_eq!((b.graph.vertex_count(), b.graph.edge_count()), (5, 6));
        assert_eq!(s.gray_faces().count(), 2);
        assert!(validate_scheme(&b.graph, s).passed());
    }

    #[test]
    fn centres_have_degree_four() {
        for (rows, cols) in [(1, 1), (2, 3), (4, 4)] {
            let b = gen_centered_square(rows, cols).unwrap();
            let centres = b.graph.vertices().iter().enumerate().filter(|(_, v)| v.x.fract() != 0.0);
            let mut count = 0;
            for (i, _) in centres {
                assert_eq!(b.graph.degree(i), 4);
                count += 1;
            }
            assert_eq!(count, (rows * cols) as usize);
        }
    }

    #[test]
    fn two_by_two_validates() {
        let b = gen_centered_square(2, 2).unwrap();
        assert!(validate_scheme(&b.graph, b.scheme.as_ref().unwrap()).passed());
        assert_eq!(b.graph.vertex_count(), 13);
    }
}
