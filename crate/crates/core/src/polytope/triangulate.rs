use num_traits::Zero;

use super::hull::face_hull;
use super::{simplex_volume, Polytope};
use crate::error::Result;
use crate::exact::Rat;

/// Simplices of a triangulation, as sorted vertex-index sets into the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pieces: Vec<Vec<usize>>,
}

impl Triangulation {
    pub fn pieces(&self) -> &[Vec<usize>] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Normalized volume of each piece.
    pub fn volumes(&self, parent: &Polytope) -> Vec<Rat> {
        self.pieces
            .iter()
            .map(|p| simplex_volume(parent.vertices(), p))
            .collect()
    }
}

/// Pulling triangulation of the convex hull of `points[face]`.
///
/// The vertex with the smallest `priority` is coned over the recursively
/// triangulated facets not containing it. Non-extreme points are ignored.
pub(crate) fn pulling_pieces(
    points: &[Vec<Rat>],
    face: &[usize],
    priority: &dyn Fn(usize) -> usize,
) -> Result<Vec<Vec<usize>>> {
    let (k, hd) = face_hull(points, face)?;
    if hd.vertex_ids.len() == k + 1 {
        return Ok(vec![hd.vertex_ids]);
    }
    let apex = *hd
        .vertex_ids
        .iter()
        .min_by_key(|&&v| priority(v))
        .expect("nonempty face");
    let mut out = Vec::new();
    for on in hd.incidence.iter().filter(|on| !on.contains(&apex)) {
        for mut piece in pulling_pieces(points, on, priority)? {
            piece.insert(0, apex);
            out.push(piece);
        }
    }
    Ok(out)
}

fn normalize(mut pieces: Vec<Vec<usize>>) -> Triangulation {
    for p in &mut pieces {
        p.sort_unstable();
    }
    pieces.sort();
    Triangulation { pieces }
}

/// Pulling triangulation that pulls the lowest-index vertex first.
pub fn pulling_triangulation(p: &Polytope) -> Triangulation {
    pulling_triangulation_with_order(p, &(0..p.vertices().len()).collect::<Vec<_>>())
}

/// Pulling triangulation with an explicit pull order: `order[0]` is pulled
/// first. Vertices missing from `order` are pulled last, by index.
pub fn pulling_triangulation_with_order(p: &Polytope, order: &[usize]) -> Triangulation {
    let n = p.vertices().len();
    let rank = |v: usize| order.iter().position(|&o| o == v).unwrap_or(n + v);
    let all: Vec<usize> = (0..n).collect();
    if p.dim() == 0 {
        return Triangulation { pieces: vec![all] };
    }
    let pieces = pulling_pieces(p.vertices(), &all, &rank)
        .expect("faces of a valid polytope have valid hulls");
    let tri = normalize(pieces);
    debug_assert!(tri.volumes(p).iter().all(|v| !v.is_zero()));
    tri
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::polytope::hull_from_vertices;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn quadrilateral_pulling() {
        let p = hull_from_vertices(2, &pts(&[&[0, 0], &[2, 0], &[1, 2], &[0, 1]])).unwrap();
        let t = pulling_triangulation(&p);
        assert_eq!(t.pieces(), &[vec![0, 1, 2], vec![0, 2, 3]]);
        let total: Rat = t.volumes(&p).into_iter().sum();
        assert_eq!(total, p.normalized_volume());
        assert_eq!(total, rat(5));
    }

    #[test]
    fn simplex_is_one_piece() {
        let p = hull_from_vertices(3, &pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(pulling_triangulation(&p).pieces(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn unit_square_two_halves() {
        let p = hull_from_vertices(2, &pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let t = pulling_triangulation(&p);
        assert_eq!(t.len(), 2);
        assert_eq!(t.volumes(&p), vec![rat(1), rat(1)]);
    }

    #[test]
    fn cube_pull_orders_agree_on_volume() {
        let cube = pts(&[
            &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0],
            &[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1],
        ]);
        let p = hull_from_vertices(3, &cube).unwrap();
        for order in [vec![0, 1, 2], vec![7, 6, 5], vec![3]] {
            let t = pulling_triangulation_with_order(&p, &order);
            let total: Rat = t.volumes(&p).into_iter().sum();
            assert_eq!(total, rat(6));
        }
    }
}
