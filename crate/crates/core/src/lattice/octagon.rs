use std::f64::consts::PI;
use std::sync::Arc;

use super::{check_window, Family, LatticeBundle, LatticeError, LatticeMeta, Patch};

/// Vertex keys: octagon centre, square centre, or octagon corner `p_k` in
/// canonical form (each corner is owned by exactly one octagon).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Octagon(i32, i32),
    Square(i32, i32),
    Corner(i32, i32, u8),
}

/// Corner `p_k` of octagon `(i, j)`, at angle 22.5 + 45k degrees. Sides
/// `p1p2` (north), `p3p4` (west), `p5p6` (south) and `p7p0` (east) are shared
/// with neighbouring octagons; the diagonal sides face squares.
fn corner(i: i32, j: i32, k: u8) -> Key {
    match k {
        0 | 1 | 2 | 7 => Key::Corner(i, j, k),
        3 => Key::Corner(i - 1, j, 0),
        4 => Key::Corner(i - 1, j, 7),
        5 => Key::Corner(i, j - 1, 2),
        6 => Key::Corner(i, j - 1, 1),
        _ => unreachable!("octagon has 8 corners"),
    }
}

const SPACING: f64 = 1.0 + std::f64::consts::SQRT_2;

fn position(key: Key) -> (f64, f64) {
    match key {
        Key::Octagon(i, j) => (i as f64 * SPACING, j as f64 * SPACING),
        Key::Square(i, j) => ((i as f64 + 0.5) * SPACING, (j as f64 + 0.5) * SPACING),
        Key::Corner(i, j, k) => {
            let radius = 0.5 / (PI / 8.0).sin();
            let angle = PI / 8.0 + k as f64 * PI / 4.0;
            (i as f64 * SPACING + radius * angle.cos(), j as f64 * SPACING + radius * angle.sin())
        }
    }
}

/// Window of the square-octagon lattice with every face centred: octagons
/// `(i, j)` for `0 <= i < cols`, `0 <= j < rows` plus every square touching
/// one of them.
///
/// In octagons with `i + j` even the four triangles on the sides shared with
/// other octagons are gray; the east and west ones are marked at the centre,
/// the north one at `p1` and the south one at `p6`. In the other octagons the
/// four triangles facing squares are gray; north-east and north-west are
/// marked at the centre, south-west at `p5`, south-east at `p7`. A square
/// whose south-west octagon has even parity has gray SW and NE triangles,
/// marked at its bottom and right corners; otherwise SE and NW are gray,
/// marked at its bottom and top corners.
pub fn gen_square_octagon(rows: u32, cols: u32) -> Result<LatticeBundle, LatticeError> {
    check_window(rows, cols)?;
    let mut patch = Patch::new();
    let add = |patch: &mut Patch<Key>, keys: [Key; 3], gray: bool, mark: Key| {
        for k in keys {
            patch.point(k, position(k));
        }
        if gray {
            patch.gray(keys, mark);
        } else {
            patch.white(keys.to_vec());
        }
    };

    for i in 0..cols as i32 {
        for j in 0..rows as i32 {
            let z = Key::Octagon(i, j);
            let p = |k: u8| corner(i, j, k % 8);
            let even = (i + j).rem_euclid(2) == 0;
            for k in 0..8u8 {
                let tri = [z, p(k), p(k + 1)];
                // triangle k sits on side p_k p_{k+1}; odd k are the shared sides
                let gray = (k % 2 == 1) == even;
                let mark = match (even, k) {
                    (true, 7) | (true, 3) => z,
                    (true, 1) => p(1),
                    (true, 5) => p(6),
                    (false, 0) | (false, 2) => z,
                    (false, 4) => p(5),
                    (false, 6) => p(7),
                    _ => z,
                };
                add(&mut patch, tri, gray, mark);
            }
        }
    }

    for i in -1..cols as i32 {
        for j in -1..rows as i32 {
            let z = Key::Square(i, j);
            let bottom = corner(i, j, 0);
            let left = corner(i, j, 1);
            let top = corner(i, j + 1, 7);
            let right = corner(i + 1, j, 2);
            let even = (i + j).rem_euclid(2) == 0;
            add(&mut patch, [z, left, bottom], even, bottom);
            add(&mut patch, [z, right, top], even, right);
            add(&mut patch, [z, bottom, right], !even, bottom);
            add(&mut patch, [z, top, left], !even, top);
        }
    }

    let (graph, scheme) = patch.assemble()?;
    Ok(LatticeBundle {
        meta: LatticeMeta::window(Family::C, rows, cols),
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
    fn corners_are_shared_consistently() {
        // p3 of (1, 0) is p0 of (0, 0) and they sit at the same point
        let a = position(corner(1, 0, 3));
        let b = position(Key::Corner(0, 0, 0));
        assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
        for (k, (di, dj, kk)) in [(3u8, (-1, 0, 0u8)), (4, (-1, 0, 7)), (5, (0, -1, 2)), (6, (0, -1, 1))] {
            let raw = {
                let radius = 0.5 / (PI / 8.0).sin();
                let angle = PI / 8.0 + k as f64 * PI / 4.0;
                (2.0 * SPACING + radius * angle.cos(), 3.0 * SPACING + radius * angle.sin())
            };
            let shared = position(Key::Corner(2 + di, 3 + dj, kk));
            assert!((raw.0 - shared.0).abs() < 1e-9 && (raw.1 - shared.1).abs() < 1e-9, "p{k}");
        }
    }

    #[test]
    fn single_unit() {
        let b = gen_square_octagon(1, 1).unwrap();
        assert!(validate_scheme(&b.graph, b.scheme.as_ref().unwrap()).passed());
    }

    #[test]
    fn centre_degrees() {
        let b = gen_square_octagon(3, 3).unwrap();
        let g = &b.graph;
        // octagon centres in the window: the only degree-8 vertices away from
        // square centres and corners; all fully built
        let eights = (0..g.vertex_count()).filter(|&v| g.degree(v) == 8).count();
        assert_eq!(eights, 9);
        let interior = g.interior_degree_multiset();
        assert!(interior.contains(&4) && interior.contains(&6) && interior.contains(&8));
    }
}
